#pragma once

// Orders of the cuspidal divisor classes C_{M,N} on X_0(N), N square-free.
//
// Two independent routes are provided: the closed form
//   |C_{M,N}| = num(phi(N) psi(N/M) / 24) * h,  h in {1, 2},
// and a lattice oracle that decides principality of eta-quotient divisors
// directly from the integrality, congruence and square conditions on the
// exponent vector.

#include <cstdint>
#include <optional>
#include <vector>

#include "eislab/divlattice.hpp"
#include "eislab/exactnum.hpp"

namespace eislab {

/// sum_d r_d P_d over the ordered divisor table; degree zero.
struct CuspidalDivisorClass {
  SquareFreeLevel level;
  std::vector<BigInt> coeffs;
};

/// Coefficients (-1)^omega(d) on divisors d of M, zero elsewhere.
/// Throws InvalidInput for M = 1 or M not dividing N.
CuspidalDivisorClass cuspidal_class(const SquareFreeLevel& level, std::uint64_t m);

struct OrderResult {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  BigInt closed_form_order;
  int h = 1;
  std::optional<BigInt> oracle_order;
  std::optional<bool> agreed;
  /// N <= 6: computed, but the order formula is not claimed there.
  bool outside_hypothesis = false;
};

/// The h = 2 families: N = M or N = 2M with M prime and M = 1 (mod 8).
int correction_factor_h(std::uint64_t n, std::uint64_t m);
OrderResult order_closed_form(const SquareFreeLevel& level, std::uint64_t m);

/// Admissible exponent vectors e of eta quotients prod eta(delta z)^e_delta
/// and the divisor lattice they produce.
struct EtaLattice {
  SquareFreeLevel level;
  /// Rows of 24 Lambda; row i is the generator indexed by d_i.
  IntMatrix generators;
  /// Constraint columns on e (one per condition) and their moduli; modulus
  /// 0 marks an exact linear condition.
  IntMatrix constraints;
  std::vector<BigInt> moduli;
  /// HNF basis of the admissible exponent lattice.
  IntMatrix exponent_basis;
  /// HNF basis of 24 * (principal eta-quotient divisors).
  IntMatrix divisor_basis24;
};

EtaLattice build_eta_lattice(const SquareFreeLevel& level);

/// Smallest k >= 1 with k * C_{M,N} in the principal lattice, via the index
/// of L in L + Z*C.
BigInt order_lattice_oracle(const SquareFreeLevel& level, std::uint64_t m);
BigInt order_lattice_oracle(const EtaLattice& lattice, const CuspidalDivisorClass& c);
/// The same order by testing k = 1, 2, ... up to `limit`; nullopt if none.
std::optional<BigInt> order_by_search(const EtaLattice& lattice,
                                      const CuspidalDivisorClass& c,
                                      std::uint64_t limit);

/// Closed form plus the oracle, with the agreement flag filled in.
OrderResult order_with_oracle(const SquareFreeLevel& level, std::uint64_t m);

struct EVector {
  std::vector<BigRational> by_solve;        // (24/(phi psi)) A C
  std::vector<BigRational> by_closed_form;  // sgn(D) 24/(phi(N) psi(N/M)) D/(D,M)
  bool agree = false;
};
EVector e_vector(const SquareFreeLevel& level, std::uint64_t m);

/// Nontrivial elementary divisors of (degree-zero cuspidal divisors) /
/// (principal eta-quotient divisors).
std::vector<BigInt> cuspidal_group_structure(const SquareFreeLevel& level);

}  // namespace eislab
