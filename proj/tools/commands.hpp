#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "eislab/serialize.hpp"

namespace eislab::cli {

enum ExitCode : int { kExitOk = 0, kExitAssertion = 1, kExitUsage = 2 };

/// Default level caps; EISLAB_MAX_LEVEL or --cap raises them.
inline constexpr std::uint64_t kLatticeCap = 2310;
inline constexpr std::uint64_t kModSymSuiteCap = 70;

/// Runs one command line (without the program name). Normal output goes to
/// `out`, run metadata and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rows for square-free 6 < N <= max_level, M | N, M != 1.
std::vector<TableRow> build_table(std::uint64_t max_level, bool with_oracle, bool with_index,
                                  unsigned jobs);

struct SuiteResult {
  std::string suite;
  std::uint64_t max_level = 0;
  std::size_t levels = 0;
  std::vector<Json> cases;
  std::size_t failures = 0;
  bool passed() const { return failures == 0; }
};

const std::vector<std::string>& suite_names();
/// Throws InvalidInput for an unknown suite name.
SuiteResult run_suite(const std::string& suite, std::uint64_t max_level, unsigned jobs);

}  // namespace eislab::cli
