#pragma once

// Truncated q-expansions with exact integer (or Z/m) coefficients, the
// weight 2 and weight 4 Eisenstein series built from them, and the residue
// values of the weight 2 series at distinguished cusps.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eislab/divlattice.hpp"
#include "eislab/exactnum.hpp"

namespace eislab {

inline constexpr std::size_t kDefaultPrecision = 200;

/// a_0 + a_1 q + ... + a_{T-1} q^{T-1}. A modulus of 0 means coefficients
/// in Z; otherwise every coefficient is kept reduced into [0, modulus).
class QExpansion {
 public:
  QExpansion() = default;
  explicit QExpansion(std::vector<BigInt> coeffs, BigInt modulus = 0);

  std::size_t precision() const { return coeffs_.size(); }
  const BigInt& modulus() const { return modulus_; }
  const BigInt& operator[](std::size_t n) const { return coeffs_[n]; }
  std::span<const BigInt> coeffs() const { return coeffs_; }

  QExpansion reduce(const BigInt& modulus) const;
  QExpansion truncate(std::size_t precision) const;
  /// f(q) -> f(q^p), same precision.
  QExpansion substitute_power(std::uint64_t p) const;
  /// Exact division of every coefficient; throws InvalidInput if inexact.
  QExpansion divide_exact(const BigInt& d) const;

  friend QExpansion operator+(const QExpansion& a, const QExpansion& b);
  friend QExpansion operator-(const QExpansion& a, const QExpansion& b);
  friend QExpansion operator*(const BigInt& k, const QExpansion& a);
  friend bool operator==(const QExpansion& a, const QExpansion& b) {
    return a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize();
  BigInt modulus_ = 0;
  std::vector<BigInt> coeffs_;
};

/// sum_{d | n} d^k for n = 0..count-1 (index 0 unused, set to 0).
std::vector<BigInt> divisor_sums(std::size_t count, unsigned k);

/// 1 - 24 sum sigma(n) q^n.
QExpansion series_e(std::size_t precision);
/// 1 + 240 sum sigma_3(n) q^n.
QExpansion series_E4(std::size_t precision);

enum class RaiseSign { kPlus, kMinus };

/// plus: g(z) - p^{k-1} g(pz); minus: g(z) - g(pz).
QExpansion level_raise(const QExpansion& g, std::uint64_t p, int weight, RaiseSign sign);

/// One prime of an operator word and its sign.
struct RaiseStep {
  std::uint64_t prime = 0;
  RaiseSign sign = RaiseSign::kPlus;
};

struct EisensteinSeriesSpec {
  SquareFreeLevel level;
  std::uint64_t m = 1;
  int weight = 2;
  /// Applied first to last.
  std::vector<RaiseStep> word;
};

/// [p]^+ for p | M (ascending), then [q]^- for q | N/M (ascending).
EisensteinSeriesSpec weight2_spec(const SquareFreeLevel& level, std::uint64_t m);
QExpansion apply_spec(const EisensteinSeriesSpec& spec, std::size_t precision);

/// The level N series attached to M | N (M = 1 allowed).
QExpansion eisenstein_series(const SquareFreeLevel& level, std::uint64_t m,
                             std::size_t precision);

struct HeckeImage {
  QExpansion series;
  /// Number of leading coefficients determined by the input precision.
  std::size_t usable_precision = 0;
};

/// Weight 2, trivial character: b_m = sum_{d | (m,n), (d,N)=1} d a_{mn/d^2}.
/// This is T_r for r prime to N and U_p for p | N. Throws InvalidInput when
/// fewer than 2 coefficients survive.
HeckeImage hecke_on_expansion(const QExpansion& f, std::uint64_t n,
                              const SquareFreeLevel& level);

struct EigenCheck {
  std::string op;  // "T_5", "U_3", ...
  std::uint64_t prime = 0;
  BigInt eigenvalue;
  std::size_t usable_precision = 0;
  bool holds = false;
};

/// T_r = r + 1 (r prime to N), U_p = 1 (p | M), U_q = q (q | N/M) for all
/// primes below `prime_bound`.
std::vector<EigenCheck> check_eigenform(const SquareFreeLevel& level, std::uint64_t m,
                                        std::size_t precision, std::uint64_t prime_bound);

enum class ResidueKind {
  kInfinity,     // Res at P_N
  kAtkinLehner,  // Res at P_{N/p} of E_{N,N}
  kCuspM,        // Res at P_M
};

struct ResidueReport {
  Divisor cusp;
  ResidueKind kind = ResidueKind::kInfinity;
  std::uint64_t prime = 0;  // the p of P_{N/p}; 0 otherwise
  BigRational value;
};

std::string to_string(ResidueKind kind);

/// The closed-form residues of the weight 2 series: at P_N, at each P_{N/p}
/// when M = N, and at P_M.
std::vector<ResidueReport> residues(const SquareFreeLevel& level, std::uint64_t m);

struct IdentityCheck {
  bool holds = false;
  std::optional<std::size_t> first_failure;
  std::size_t precision = 0;
};

/// F_N - G = (p - 1) F_D(q^p) with F_N = -E_{1,N}/24, G = -E_{p,N}/24 and
/// D = N/p > 1.
IdentityCheck level_lowering_identity_check(const SquareFreeLevel& level, std::uint64_t p,
                                            std::size_t precision);

/// [p_n]_4^+ o ... o [p_2]_4^+ applied to E_4 for the given primes; the
/// constant term prod (1 - p^3) is asserted.
QExpansion weight4_G(std::span<const std::uint64_t> primes, std::size_t precision);

}  // namespace eislab
