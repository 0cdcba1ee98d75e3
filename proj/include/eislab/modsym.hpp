#pragma once

// Integral weight 2 modular symbols for Gamma_0(N), N square-free.
//
// Manin symbols (c:d) in P^1(Z/N) modulo the 2- and 3-term relations span
// H_1(X_0(N), cusps, Q). The image of the integer symbols is the integral
// lattice L = H_1(X_0(N), cusps, Z); its boundary kernel is the cuspidal
// lattice S = H_1(X_0(N), Z) of rank 2g on which the Hecke ring acts.
// Operators are matrices acting on row vectors from the right.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eislab/divlattice.hpp"
#include "eislab/exactnum.hpp"

namespace eislab {

/// Largest level the modular-symbol engine accepts unless overridden.
inline constexpr std::uint64_t kModSymDeskBound = 120;

/// [a b; c d] with 64-bit entries.
struct Mat2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  std::int64_t det() const { return a * d - b * c; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
};

/// Merel's set of determinant-n matrices giving T_n on Manin symbols.
std::vector<Mat2> heilbronn_merel(std::uint64_t n);
/// Cremona's set for a prime p.
std::vector<Mat2> heilbronn_cremona(std::uint64_t p);
/// Right coset representatives [1 j; 0 p] (and [p 0; 0 1] when p does not
/// divide N) of the double coset of diag(1, p).
std::vector<Mat2> hecke_cosets(std::uint64_t p, std::uint64_t level);

/// Normalized representatives of P^1(Z/N).
class P1List {
 public:
  explicit P1List(std::uint64_t n);

  std::uint64_t level() const { return n_; }
  std::size_t size() const { return reps_.size(); }
  std::pair<std::uint64_t, std::uint64_t> operator[](std::size_t i) const { return reps_[i]; }
  /// Index of (c:d); nullopt when gcd(c, d, N) != 1.
  std::optional<std::size_t> index(std::int64_t c, std::int64_t d) const;

  /// (c:d) -> (d:-c)
  std::size_t apply_s(std::size_t i) const;
  /// (c:d) -> (d:-c-d)
  std::size_t apply_t(std::size_t i) const;

 private:
  std::uint64_t n_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> reps_;
  std::vector<std::int32_t> table_;
};

/// A cusp num/den in lowest terms with den >= 0; infinity is 1/0.
struct Cusp {
  std::int64_t num = 1;
  std::int64_t den = 0;
  static Cusp make(std::int64_t num, std::int64_t den);
  static Cusp infinity() { return {1, 0}; }
};

/// Gamma_0(N)-equivalence of two cusps by the unit search criterion.
bool cusps_equivalent(const Cusp& x, const Cusp& y, std::uint64_t level);

/// The 2^omega(N) cusp classes P_d = [1/d], indexed like the DivisorTable.
class CuspSet {
 public:
  explicit CuspSet(const SquareFreeLevel& level);
  std::size_t size() const { return table_.size(); }
  const DivisorTable& table() const { return table_; }
  Cusp representative(std::size_t i) const;
  /// Index of the class P_d containing x (d = gcd(den, N)).
  std::size_t classify(const Cusp& x) const;

 private:
  DivisorTable table_;
};

int genus_x0(const SquareFreeLevel& level);

class ManinSymbolSpace {
 public:
  /// Throws InvalidInput for non-square-free N or N above `desk_bound`.
  static ManinSymbolSpace build(const SquareFreeLevel& level,
                                std::uint64_t desk_bound = kModSymDeskBound);

  const SquareFreeLevel& level() const { return level_; }
  const P1List& p1() const { return p1_; }
  const CuspSet& cusps() const { return cusps_; }
  int genus() const { return genus_; }
  /// Rank of L.
  std::size_t relative_rank() const { return symbol_coords_.cols(); }
  /// Rank of S (= 2g).
  std::size_t cuspidal_rank() const { return cuspidal_basis_.rows(); }

  /// Row i: coordinates of the i-th Manin symbol in the basis of L.
  const IntMatrix& symbol_coords() const { return symbol_coords_; }
  /// Row i: boundary of the i-th Manin symbol on the cusp classes.
  const IntMatrix& symbol_boundary() const { return symbol_boundary_; }
  /// Boundary of the basis of L.
  const IntMatrix& boundary() const { return boundary_; }
  /// Basis of S, as rows in L-coordinates (HNF).
  const IntMatrix& cuspidal_basis() const { return cuspidal_basis_; }

  std::vector<BigInt> manin_symbol(std::int64_t c, std::int64_t d) const;
  /// {alpha, beta} in L-coordinates, via continued fractions.
  std::vector<BigInt> modular_symbol(const Cusp& alpha, const Cusp& beta) const;

  /// sum_h over the given matrices of h . {g0, g oo} for each Manin symbol
  /// g{0, oo}, as an operator on L.
  IntMatrix relative_operator_from_cosets(std::span<const Mat2> cosets) const;
  /// sum_h (c:d) h over Heilbronn matrices, terms outside P^1 dropped.
  IntMatrix relative_operator_from_heilbronn(std::span<const Mat2> heilbronn) const;
  /// Image of every Manin symbol under an operator on L, by the coset action.
  IntMatrix symbol_images_from_cosets(std::span<const Mat2> cosets) const;
  IntMatrix symbol_images_from_heilbronn(std::span<const Mat2> heilbronn) const;

  /// T_p for p prime to N (Heilbronn matrices) or U_p for p | N (cosets
  /// [1 j; 0 p]) on L.
  IntMatrix relative_hecke_prime(std::uint64_t p) const;
  /// Restricts an operator on L to S; throws InvariantBreach unless S is
  /// stable and the restriction integral.
  IntMatrix restrict_to_cuspidal(const IntMatrix& op) const;

 private:
  ManinSymbolSpace(const SquareFreeLevel& level);
  IntMatrix operator_from_images(const IntMatrix& basis_images) const;

  SquareFreeLevel level_;
  P1List p1_;
  CuspSet cusps_;
  int genus_ = 0;
  IntMatrix symbol_coords_;
  IntMatrix symbol_boundary_;
  IntMatrix boundary_;
  IntMatrix cuspidal_basis_;
  /// Symbols whose coordinates form a Q-basis of L, and the inverse of
  /// that coordinate matrix.
  std::vector<std::size_t> basis_symbols_;
  RatMatrix basis_inverse_;
};

/// Hecke operators on S with a per-object cache of the prime operators.
class HeckeOperators {
 public:
  explicit HeckeOperators(std::shared_ptr<const ManinSymbolSpace> space);

  const ManinSymbolSpace& space() const { return *space_; }
  /// T_p or U_p on S.
  IntMatrix prime(std::uint64_t p) const;
  /// T_n on S, assembled multiplicatively from prime powers.
  IntMatrix hecke(std::uint64_t n) const;

 private:
  std::shared_ptr<const ManinSymbolSpace> space_;
  mutable std::mutex mutex_;
  mutable std::map<std::uint64_t, IntMatrix> primes_;
};

/// The Z-span of T_1..T_b inside End(S).
struct HeckeRingModel {
  std::shared_ptr<const HeckeOperators> ops;
  std::uint64_t sturm_bound = 0;
  int genus = 0;
  /// T_1, ..., T_b.
  std::vector<IntMatrix> generators;
  /// HNF basis of the flattened generators; rank = genus.
  IntMatrix basis;

  std::uint64_t level() const { return ops->space().level().value(); }
  std::size_t rank() const { return basis.rows(); }
  bool zero_ring() const { return genus == 0; }
  /// Coordinates of an operator on S in the ring basis; nullopt when it is
  /// not in the lattice spanned by the ring.
  std::optional<std::vector<BigInt>> coordinates(const IntMatrix& op) const;
  IntMatrix element(std::span<const BigInt> coords) const;
};

/// ceil(psi(N)/6).
std::uint64_t sturm_bound(const SquareFreeLevel& level);
HeckeRingModel hecke_ring(std::shared_ptr<const ManinSymbolSpace> space);
HeckeRingModel hecke_ring(const SquareFreeLevel& level,
                          std::uint64_t desk_bound = kModSymDeskBound);

struct StabilizationStep {
  std::uint64_t prime_bound = 0;
  BigInt index;
};

struct EisensteinIdealModel {
  std::uint64_t n = 0;
  /// 0 for the ideal I_0(N) with no U_p generators.
  std::uint64_t m = 0;
  std::vector<std::string> generator_labels;
  /// HNF basis of the ideal in ring coordinates.
  IntMatrix ideal_basis;
  BigInt index = 1;
  /// Nontrivial elementary divisors of T/I.
  std::vector<BigInt> quotient_invariants;
  bool cyclic = true;
  bool zero_ring = false;
  std::vector<StabilizationStep> stabilization;
};

/// I_{M,N} = (U_p - 1 : p | M, U_q - q : q | N/M, T_r - r - 1 : r prime to N)
/// and its index. M = 1 is allowed. The T_r bound starts at the Sturm bound
/// and grows until the index is unchanged over two further primes.
EisensteinIdealModel eisenstein_index(const HeckeRingModel& ring, std::uint64_t m);
/// I_0(N) alone.
EisensteinIdealModel eisenstein_index_i0(const HeckeRingModel& ring);

enum class Verdict { kEqual, kEqualUpToTwo, kViolation };
std::string to_string(Verdict v);

struct PrimeExponents {
  std::uint64_t ell = 0;
  int alpha = 0;  // exponent in the index
  int beta = 0;   // exponent in the cusp order
};

struct IndexComparisonReport {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  BigInt index;
  BigInt cusp_order;
  int h = 1;
  std::vector<PrimeExponents> exponents;
  /// M != N and N/M odd: the two numbers must coincide.
  bool exact_required = false;
  Verdict verdict = Verdict::kViolation;
  /// Equality (exact_required) or odd-part equality (otherwise).
  bool consistent = false;
  /// Some odd prime with alpha < beta.
  bool alpha_below_beta = false;
};

IndexComparisonReport compare_index_order(const HeckeRingModel& ring, std::uint64_t m);
IndexComparisonReport compare_index_order(const EisensteinIdealModel& ideal);

struct MaximalIdealRecord {
  std::uint64_t ell = 0;
  std::uint64_t m = 0;
  bool normalized = true;
  /// p | N -> U_p mod the ideal, as a residue in [0, ell).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> up_eigenvalues;
};

/// For an odd prime ell dividing [T : I_0] and p | N: (U_p-1)(U_p-p) is
/// nilpotent modulo (ell, I_0).
struct DichotomyCheck {
  std::uint64_t ell = 0;
  std::uint64_t p = 0;
  bool holds = false;
};

struct MaximalIdealSurvey {
  std::uint64_t n = 0;
  int genus = 0;
  /// Every divisor M of N, M = 1 included, ascending in the divisor order.
  std::vector<EisensteinIdealModel> ideals;
  EisensteinIdealModel i0;
  std::vector<MaximalIdealRecord> records;
  std::vector<DichotomyCheck> dichotomy;
  /// Odd ell dividing [T : I_{1,N}] must have some q | N, q = 1 (mod ell).
  bool nonmaximal_holds = true;
  std::vector<std::string> nonmaximal_failures;
  /// A pair (ell, M) dropped by normalization reappears at M*q.
  bool reappearance_holds = true;

  const EisensteinIdealModel& ideal(std::uint64_t m) const;
};

MaximalIdealSurvey enumerate_eisenstein_maximal(const HeckeRingModel& ring);

struct MainTheoremCase {
  std::uint64_t ell = 0;
  std::uint64_t m = 0;
  std::string rule;
  bool holds = false;
  std::string detail;
};

struct MainTheoremReport {
  std::uint64_t n = 0;
  std::vector<MainTheoremCase> cases;
  bool holds = true;
};

MainTheoremReport verify_main_theorem(const MaximalIdealSurvey& survey);

/// Char poly of U_p at level N against the old part coming from T_p at
/// level N/p: chi_U(x) = x^{2g'} chi_{T_p}(x + p/x) (x-1)^a (x+1)^b.
struct OldRelationCheck {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  bool holds = false;
  int plus_one = 0;   // a
  int minus_one = 0;  // b
};

OldRelationCheck check_up_old_relation(const HeckeOperators& level_n,
                                       const HeckeOperators& level_d, std::uint64_t p);

}  // namespace eislab
