#include "doctest.h"

#include "eislab/qseries.hpp"

using namespace eislab;

namespace {

BigInt sigma(std::uint64_t n, unsigned k) {
  BigInt s = 0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) {
      BigInt t;
      mpz_ui_pow_ui(t.get_mpz_t(), d, k);
      s += t;
    }
  return s;
}

BigInt e_coeff(std::uint64_t n) { return n == 0 ? BigInt(1) : BigInt(-24 * sigma(n, 1)); }

// Expands the operator word as a signed sum of e(q^t) over products t of
// subsets of the primes of N.
std::vector<BigInt> eisenstein_by_subsets(std::uint64_t n, std::uint64_t m, std::size_t prec) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= n; ++p)
    if (n % p == 0 && is_prime(p)) primes.push_back(p);
  std::vector<BigInt> out(prec, 0);
  for (std::uint32_t mask = 0; mask < (1u << primes.size()); ++mask) {
    std::uint64_t t = 1;
    BigInt c = 1;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (mask >> i & 1) {
        t *= primes[i];
        c *= (m % primes[i] == 0) ? -BigInt(primes[i]) : BigInt(-1);
      }
    for (std::size_t k = 0; k < prec; k += t) out[k] += c * e_coeff(k / t);
  }
  return out;
}

std::vector<BigInt> coeffs(const QExpansion& f) { return {f.coeffs().begin(), f.coeffs().end()}; }

std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace

TEST_CASE("series e and E4") {
  const auto e = series_e(10);
  CHECK(coeffs(e.truncate(5)) == std::vector<BigInt>{1, -24, -72, -96, -168});
  CHECK(e[6] == -288);
  for (std::size_t n = 0; n < 10; ++n) CHECK(e[n] == e_coeff(n));

  const auto e4 = series_E4(20);
  CHECK(e4[0] == 1);
  CHECK(e4[1] == 240);
  CHECK(e4[2] == 2160);
  for (std::size_t n = 1; n < 20; ++n) CHECK(e4[n] == 240 * sigma(n, 3));
}

TEST_CASE("level raising constant terms") {
  const auto e = series_e(50);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    CHECK(level_raise(e, p, 2, RaiseSign::kMinus)[0] == 0);
    CHECK(level_raise(e, p, 2, RaiseSign::kPlus)[0] == BigInt(1) - BigInt(p));
    const auto plus = level_raise(e, p, 2, RaiseSign::kPlus);
    for (std::size_t n = 1; n < 50; ++n) {
      BigInt expect = e[n];
      if (n % p == 0) expect -= BigInt(p) * e[n / p];
      CHECK(plus[n] == expect);
    }
  }
  const auto two = level_raise(level_raise(e, 3, 2, RaiseSign::kPlus), 5, 2, RaiseSign::kPlus);
  CHECK(two[0] == (1 - 3) * (1 - 5));
  const auto swapped = level_raise(level_raise(e, 5, 2, RaiseSign::kPlus), 3, 2, RaiseSign::kPlus);
  CHECK(two == swapped);
  const auto mixed_a = level_raise(level_raise(e, 2, 2, RaiseSign::kMinus), 7, 2, RaiseSign::kPlus);
  const auto mixed_b = level_raise(level_raise(e, 7, 2, RaiseSign::kPlus), 2, 2, RaiseSign::kMinus);
  CHECK(mixed_a == mixed_b);
}

TEST_CASE("weight 2 series against subset expansion") {
  for (auto n : square_free_range(2, 100))
    for (auto m : divisors_of(n)) {
      const auto f = eisenstein_series(SquareFreeLevel::from_value(n), m, 120);
      CHECK(coeffs(f) == eisenstein_by_subsets(n, m, 120));
      const auto level = SquareFreeLevel::from_value(n);
      BigInt c0 = 0;
      if (m == n) {
        c0 = 1;
        for (auto p : level.primes()) c0 *= BigInt(1) - BigInt(p);
        CHECK(c0 == (level.omega() % 2 ? -level.phi() : level.phi()));
      }
      CHECK(f[0] == c0);
    }
  const auto f11 = eisenstein_series(SquareFreeLevel::from_value(11), 11, 30);
  CHECK(f11[1] == -24);
  CHECK(f11[11] == -24);
}

TEST_CASE("Hecke action on expansions") {
  const auto level = SquareFreeLevel::from_value(15);
  const auto f = eisenstein_series(level, 3, 200);
  const auto u3 = hecke_on_expansion(f, 3, level);
  CHECK(u3.series[1] == f[3]);
  CHECK(u3.usable_precision == 67);
  for (std::size_t k = 0; k < u3.usable_precision; ++k) CHECK(u3.series[k] == f[3 * k]);
  const auto t7 = hecke_on_expansion(f, 7, level);
  for (std::size_t k = 0; k < t7.usable_precision; ++k) {
    BigInt expect = f[7 * k];
    if (k % 7 == 0) expect += 7 * f[k / 7];
    CHECK(t7.series[k] == expect);
    CHECK(t7.series[k] == 8 * f[k]);
  }
  CHECK_THROWS_AS(hecke_on_expansion(f.truncate(3), 7, level), InvalidInput);
}

TEST_CASE("eigenform checks") {
  for (auto n : square_free_range(2, 100)) {
    const auto level = SquareFreeLevel::from_value(n);
    for (auto m : divisors_of(n)) {
      if (m == 1) continue;
      const auto checks = check_eigenform(level, m, 200, 20);
      CHECK(checks.size() == 8);
      for (const auto& c : checks) {
        CHECK(c.holds);
        BigInt expect = BigInt(c.prime) + 1;
        if (n % c.prime == 0) expect = (m % c.prime == 0) ? BigInt(1) : BigInt(c.prime);
        CHECK(c.eigenvalue == expect);
      }
    }
  }
}

TEST_CASE("residues") {
  auto r = residues(SquareFreeLevel::from_value(11), 11);
  REQUIRE(r.size() == 3);
  CHECK(r[0].cusp.value() == 11);
  CHECK(r[0].value == -10);
  CHECK(r[1].cusp.value() == 1);
  CHECK(r[1].value == 10);
  CHECK(r[0].value + r[1].value == 0);
  CHECK(r[2].value == r[0].value);

  r = residues(SquareFreeLevel::from_value(15), 3);
  CHECK(r.back().cusp.value() == 3);
  CHECK(r.back().value == BigRational(-48, 5));
  CHECK(r.front().value == 0);

  for (auto n : square_free_range(7, 500)) {
    const auto level = SquareFreeLevel::from_value(n);
    const auto rn = residues(level, n);
    // The P_N value and the P_M formula coincide at M = N, and equal the
    // constant term of the expansion.
    CHECK(rn.front().value == rn.back().value);
    CHECK(rn.front().value == BigRational(eisenstein_series(level, n, 2)[0]));
    if (is_prime(n)) CHECK(rn[0].value + rn[1].value == 0);
  }
  CHECK_THROWS_AS(residues(SquareFreeLevel::from_value(15), 1), InvalidInput);
}

TEST_CASE("level lowering identity") {
  CHECK(level_lowering_identity_check(SquareFreeLevel::from_value(15), 3, 500).holds);
  CHECK(level_lowering_identity_check(SquareFreeLevel::from_value(10), 2, 500).holds);
  for (auto n : square_free_range(2, 100)) {
    const auto level = SquareFreeLevel::from_value(n);
    for (auto p : level.primes()) {
      if (p == n) continue;
      const auto c = level_lowering_identity_check(level, p, 500);
      CHECK(c.holds);
      CHECK_FALSE(c.first_failure.has_value());
    }
  }
  CHECK_THROWS_AS(level_lowering_identity_check(SquareFreeLevel::from_value(15), 5, 9),
                  InvalidInput);
  CHECK_THROWS_AS(level_lowering_identity_check(SquareFreeLevel::from_value(7), 7, 100),
                  InvalidInput);
}

TEST_CASE("weight 4 series") {
  const std::vector<std::uint64_t> one{5}, two{3, 5};
  CHECK(weight4_G(one, 20)[0] == 1 - 125);
  const auto g = weight4_G(two, 40);
  CHECK(g[0] == 3224);
  CHECK(g[1] == 240);
  for (std::size_t n = 1; n < 40; ++n) {
    BigInt expect = 0;
    for (std::uint64_t t : {1, 3, 5, 15}) {
      if (n % t) continue;
      BigInt c = 1;
      if (t % 3 == 0) c *= -27;
      if (t % 5 == 0) c *= -125;
      expect += c * 240 * sigma(n / t, 3);
    }
    CHECK(g[n] == expect);
  }
}
