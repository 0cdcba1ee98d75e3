#pragma once

// JSON and CSV renderings of the library's result types. Integers that fit
// in 64 bits become JSON numbers, larger ones decimal strings; rationals
// become "a/b" strings unless integral.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "eislab/cuspgroup.hpp"
#include "eislab/modsym.hpp"
#include "eislab/qseries.hpp"

namespace eislab {

using Json = nlohmann::ordered_json;

Json to_json(const BigInt& x);
Json to_json(const BigRational& x);
BigInt bigint_from_json(const Json& j);

Json to_json(const OrderResult& r);
Json to_json(const QExpansion& f);
Json to_json(const ResidueReport& r);
Json to_json(const EigenCheck& c);
Json to_json(const IdentityCheck& c);
Json to_json(const HeckeRingModel& m);
Json to_json(const EisensteinIdealModel& m);
Json to_json(const IndexComparisonReport& r);
Json to_json(const MaximalIdealRecord& r);
Json to_json(const MaximalIdealSurvey& s);
Json to_json(const MainTheoremReport& r);

/// One line of the cuspidal-order table. Optional columns are present for
/// every row of a table or for none.
struct TableRow {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  BigInt order;
  int h = 1;
  std::optional<BigInt> oracle_order;
  std::optional<BigInt> index;
  std::optional<std::string> verdict;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

std::string table_csv(const std::vector<TableRow>& rows);
Json table_json(const std::vector<TableRow>& rows);
std::string table_text(const std::vector<TableRow>& rows);
/// Inverse of table_csv; throws InvalidInput on malformed input.
std::vector<TableRow> table_from_csv(const std::string& csv);
std::vector<TableRow> table_from_json(const Json& j);

}  // namespace eislab
