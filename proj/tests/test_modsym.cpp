#include "doctest.h"

#include <memory>
#include <numeric>

#include "eislab/cuspgroup.hpp"
#include "eislab/modsym.hpp"

using namespace eislab;

namespace {

std::shared_ptr<const ManinSymbolSpace> space_of(std::uint64_t n) {
  return std::make_shared<const ManinSymbolSpace>(
      ManinSymbolSpace::build(SquareFreeLevel::from_value(n)));
}

// q * prod_{n>=1} prod_k (1 - q^{k n})^{e_k}: an eta product of weight 2.
std::vector<BigInt> eta_product(const std::vector<std::pair<std::uint64_t, int>>& factors,
                                std::size_t prec) {
  std::vector<BigInt> f(prec, 0);
  f[1] = 1;
  for (const auto& [k, e] : factors)
    for (std::size_t n = 1; k * n < prec; ++n)
      for (int rep = 0; rep < e; ++rep)
        for (std::size_t i = prec; i-- > k * n;) f[i] -= f[i - k * n];
  return f;
}

// gcd(c, d, N) = 1 pairs up to scaling by units.
std::size_t count_p1(std::uint64_t n) {
  std::size_t count = 0;
  for (std::uint64_t c = 0; c < n; ++c)
    for (std::uint64_t d = 0; d < n; ++d)
      if (std::gcd(std::gcd(c, d), n) == 1) ++count;
  std::size_t units = 0;
  for (std::uint64_t u = 1; u < n; ++u)
    if (std::gcd(u, n) == 1) ++units;
  return n == 1 ? 1 : count / units;
}

bool is_scalar(const IntMatrix& m, const BigInt& k) {
  return m == k * IntMatrix::identity(m.rows());
}

bool power_of_two(BigInt x) {
  if (x <= 0) return false;
  while (x % 2 == 0) x /= 2;
  return x == 1;
}

}  // namespace

TEST_CASE("projective line and cusps") {
  for (auto n : square_free_range(2, 120)) {
    const auto level = SquareFreeLevel::from_value(n);
    const P1List p1(n);
    CHECK(p1.size() == count_p1(n));
    CHECK(BigInt(p1.size()) == level.psi());
    for (std::size_t i = 0; i < p1.size(); ++i) {
      CHECK(p1.apply_s(p1.apply_s(i)) == i);
      CHECK(p1.apply_t(p1.apply_t(p1.apply_t(i))) == i);
    }
    const CuspSet cusps(level);
    CHECK(cusps.size() == (std::size_t{1} << level.omega()));
    for (std::size_t i = 0; i < cusps.size(); ++i) {
      CHECK(cusps.classify(cusps.representative(i)) == i);
      for (std::size_t j = 0; j < cusps.size(); ++j)
        CHECK(cusps_equivalent(cusps.representative(i), cusps.representative(j), n) == (i == j));
    }
  }
  CHECK_THROWS_AS(ManinSymbolSpace::build(SquareFreeLevel::from_value(130)), InvalidInput);
}

TEST_CASE("cusp classification of arbitrary fractions") {
  const auto level = SquareFreeLevel::from_value(30);
  const CuspSet cusps(level);
  for (std::int64_t c = 1; c <= 90; ++c)
    for (std::int64_t a = -20; a <= 20; ++a) {
      if (std::gcd(a, c) != 1) continue;
      const auto x = Cusp::make(a, c);
      const std::size_t k = cusps.classify(x);
      CHECK(cusps.table()[k].value() == std::gcd<std::uint64_t>(c, 30));
    }
  CHECK(cusps.table()[cusps.classify(Cusp::infinity())].value() == 30);
}

TEST_CASE("genus and cuspidal rank") {
  CHECK(genus_x0(SquareFreeLevel::from_value(11)) == 1);
  CHECK(genus_x0(SquareFreeLevel::from_value(14)) == 1);
  CHECK(genus_x0(SquareFreeLevel::from_value(7)) == 0);
  CHECK(genus_x0(SquareFreeLevel::from_value(30)) == 3);
  for (auto n : {11, 14, 7, 30, 37, 67, 105}) {
    const auto s = space_of(n);
    CHECK(s->cuspidal_rank() == static_cast<std::size_t>(2 * s->genus()));
    CHECK(s->relative_rank() == s->cuspidal_rank() + s->cusps().size() - 1);
    CHECK((s->cuspidal_basis() * s->boundary()).is_zero());
    CHECK(s->p1().size() == s->symbol_coords().rows());
  }
  const auto s11 = space_of(11);
  CHECK(s11->cusps().table()[0].value() == 1);
  CHECK(s11->cusps().table()[1].value() == 11);
}

TEST_CASE("modular symbols from continued fractions") {
  const auto s = space_of(37);
  // {0, oo} is the symbol (0:1).
  CHECK(s->modular_symbol(Cusp::make(0, 1), Cusp::infinity()) == s->manin_symbol(0, 1));
  // {a, b} + {b, c} = {a, c}.
  const auto x = s->modular_symbol(Cusp::make(2, 7), Cusp::make(-5, 11));
  const auto y = s->modular_symbol(Cusp::make(-5, 11), Cusp::make(3, 4));
  const auto z = s->modular_symbol(Cusp::make(2, 7), Cusp::make(3, 4));
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] + y[i] == z[i]);
}

TEST_CASE("Hecke operators at level 11 match the eta product") {
  const auto f = eta_product({{1, 2}, {11, 2}}, 40);
  CHECK(f[2] == -2);
  CHECK(f[3] == -1);
  CHECK(f[5] == 1);
  CHECK(f[7] == -2);
  const HeckeOperators ops(space_of(11));
  CHECK(is_scalar(ops.hecke(1), 1));
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19}) CHECK(is_scalar(ops.prime(p), f[p]));
  CHECK(is_scalar(ops.hecke(4), f[4]));
  CHECK(is_scalar(ops.hecke(6), f[6]));
  CHECK(is_scalar(ops.hecke(25), f[25]));
  const auto t2 = ops.prime(2);
  CHECK(t2(0, 0) + t2(1, 1) == -4);
  CHECK(charpoly(t2) == std::vector<BigInt>{4, 4, 1});
}

TEST_CASE("Hecke operators at level 14 match the eta product") {
  const auto f = eta_product({{1, 1}, {2, 1}, {7, 1}, {14, 1}}, 60);
  const HeckeOperators ops(space_of(14));
  for (std::uint64_t n = 1; n < 30; ++n) CHECK(is_scalar(ops.hecke(n), f[n]));
}

TEST_CASE("cosets and Heilbronn matrices give the same operator") {
  for (auto n : {11, 14, 15, 30, 35, 42}) {
    const auto s = space_of(n);
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
      const auto cos = s->relative_operator_from_cosets(hecke_cosets(p, n));
      const auto merel = s->relative_operator_from_heilbronn(heilbronn_merel(p));
      CHECK(cos == merel);
      if (n % p) {
        const auto cremona = s->relative_operator_from_heilbronn(heilbronn_cremona(p));
        CHECK(cremona == merel);
      }
    }
  }
  for (std::uint64_t n : {1, 2, 5, 6, 9}) {
    for (const auto& h : heilbronn_merel(n)) CHECK(h.det() == static_cast<std::int64_t>(n));
  }
}

TEST_CASE("commutativity, multiplicativity and boundary") {
  for (auto n : {23, 30, 33, 42, 66}) {
    const auto s = space_of(n);
    const HeckeOperators ops(s);
    for (std::uint64_t a = 2; a <= 9; ++a)
      for (std::uint64_t b = a + 1; b <= 9; ++b) {
        CHECK(ops.hecke(a) * ops.hecke(b) == ops.hecke(b) * ops.hecke(a));
        if (std::gcd(a, b) == 1) CHECK(ops.hecke(a * b) == ops.hecke(a) * ops.hecke(b));
      }
    for (std::uint64_t r : {2, 3, 5, 7, 13}) {
      if (n % r == 0) continue;
      const auto op = s->relative_hecke_prime(r);
      CHECK(op * s->boundary() == BigInt(r + 1) * s->boundary());
    }
  }
}

TEST_CASE("Hecke ring") {
  const auto r11 = hecke_ring(SquareFreeLevel::from_value(11));
  CHECK(r11.rank() == 1);
  CHECK(r11.sturm_bound == 2);
  const auto r7 = hecke_ring(SquareFreeLevel::from_value(7));
  CHECK(r7.zero_ring());
  CHECK(r7.rank() == 0);
  const auto r30 = hecke_ring(SquareFreeLevel::from_value(30));
  CHECK(r30.rank() == 3);
  CHECK(r30.sturm_bound == 12);
  for (std::uint64_t i = 1; i <= r30.sturm_bound; ++i)
    for (std::uint64_t j = i; i * j <= r30.sturm_bound * 2; ++j)
      CHECK(r30.coordinates(r30.generators[i - 1] * r30.ops->hecke(j)).has_value());
  // Operators outside the span of T_1..T_b still land in the ring.
  CHECK(r30.coordinates(r30.ops->hecke(97)).has_value());
  const auto c = r30.coordinates(r30.ops->hecke(7));
  REQUIRE(c.has_value());
  CHECK(r30.element(*c) == r30.ops->hecke(7));
}

TEST_CASE("Eisenstein index anchors") {
  const auto r11 = hecke_ring(SquareFreeLevel::from_value(11));
  const auto i11 = eisenstein_index(r11, 11);
  CHECK(i11.index == 5);
  CHECK(i11.cyclic);
  CHECK(compare_index_order(i11).verdict == Verdict::kEqual);

  const auto r33 = hecke_ring(SquareFreeLevel::from_value(33));
  const auto c33 = compare_index_order(r33, 3);
  CHECK(c33.exact_required);
  CHECK(c33.index == 10);
  CHECK(c33.cusp_order == 10);
  CHECK(c33.verdict == Verdict::kEqual);

  const auto r17 = hecke_ring(SquareFreeLevel::from_value(17));
  const auto i17 = eisenstein_index(r17, 17);
  CHECK(power_of_two(i17.index));
  CHECK(i17.index == 4);

  const auto r14 = hecke_ring(SquareFreeLevel::from_value(14));
  const auto c14 = compare_index_order(r14, 7);
  CHECK_FALSE(c14.exact_required);
  CHECK(c14.consistent);
  CHECK(odd_part(c14.index) == odd_part(c14.cusp_order));

  const auto i7 = eisenstein_index(hecke_ring(SquareFreeLevel::from_value(7)), 7);
  CHECK(i7.zero_ring);
  CHECK(i7.index == 1);
}

TEST_CASE("Eisenstein quotients are cyclic and indices stabilize") {
  for (auto n : {15, 21, 26, 30, 35, 39, 42}) {
    const auto ring = hecke_ring(SquareFreeLevel::from_value(n));
    for (std::uint64_t m = 1; m <= static_cast<std::uint64_t>(n); ++m) {
      if (n % m) continue;
      const auto ideal = eisenstein_index(ring, m);
      CHECK(ideal.cyclic);
      CHECK(ideal.quotient_invariants.size() <= 1);
      REQUIRE(ideal.stabilization.size() >= 3);
      const auto k = ideal.stabilization.size();
      CHECK(ideal.stabilization[k - 1].index == ideal.stabilization[k - 2].index);
      CHECK(ideal.stabilization[k - 2].index == ideal.stabilization[k - 3].index);
      if (m != 1) {
        const auto report = compare_index_order(ideal);
        CHECK(report.consistent);
        CHECK(report.verdict != Verdict::kViolation);
      }
    }
  }
}

TEST_CASE("maximal ideal survey") {
  const auto s11 = enumerate_eisenstein_maximal(hecke_ring(SquareFreeLevel::from_value(11)));
  REQUIRE(s11.records.size() == 1);
  CHECK(s11.records[0].ell == 5);
  CHECK(s11.records[0].m == 11);
  CHECK(s11.nonmaximal_holds);
  CHECK(verify_main_theorem(s11).holds);

  const auto s14 = enumerate_eisenstein_maximal(hecke_ring(SquareFreeLevel::from_value(14)));
  CHECK_FALSE(s14.records.empty());
  for (const auto& r : s14.records) {
    CHECK(r.normalized);
    CHECK((r.ell == 2 || r.ell == 3));
  }
  CHECK(s14.reappearance_holds);

  const auto s17 = enumerate_eisenstein_maximal(hecke_ring(SquareFreeLevel::from_value(17)));
  const auto m17 = verify_main_theorem(s17);
  CHECK(m17.holds);
  bool saw_two = false;
  for (const auto& c : m17.cases) saw_two = saw_two || c.ell == 2;
  CHECK(saw_two);

  const auto s34 = enumerate_eisenstein_maximal(hecke_ring(SquareFreeLevel::from_value(34)));
  CHECK(verify_main_theorem(s34).holds);
  CHECK(order_closed_form(SquareFreeLevel::from_value(34), 17).closed_form_order == (17 - 1) / 4);
}

TEST_CASE("U_p on old forms") {
  for (auto n : square_free_range(6, 70)) {
    const auto level = SquareFreeLevel::from_value(n);
    if (level.omega() < 2) continue;
    const HeckeOperators ops_n(space_of(n));
    for (auto p : level.primes()) {
      const HeckeOperators ops_d(space_of(n / p));
      const auto check = check_up_old_relation(ops_n, ops_d, p);
      CHECK_MESSAGE(check.holds, "N=" << n << " p=" << p);
    }
  }
}
