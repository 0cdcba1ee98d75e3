#include "doctest.h"

#include <numeric>

#include "eislab/cuspgroup.hpp"

using namespace eislab;

namespace {

std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

std::uint64_t psi_of(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t p = 2; p <= n; ++p)
    if (n % p == 0 && is_prime(p)) r *= p + 1;
  return r;
}

std::uint64_t phi_of(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t p = 2; p <= n; ++p)
    if (n % p == 0 && is_prime(p)) r *= p - 1;
  return r;
}

int omega_of(std::uint64_t n) {
  int w = 0;
  for (std::uint64_t p = 2; p <= n; ++p)
    if (n % p == 0 && is_prime(p)) ++w;
  return w;
}

}  // namespace

TEST_CASE("cuspidal class coefficients") {
  const auto l11 = SquareFreeLevel::from_value(11);
  CHECK(cuspidal_class(l11, 11).coeffs == std::vector<BigInt>{1, -1});

  const auto l30 = SquareFreeLevel::from_value(30);
  // Order 1, 2, 3, 5, 6, 10, 15, 30.
  CHECK(cuspidal_class(l30, 6).coeffs == std::vector<BigInt>{1, -1, -1, 0, 1, 0, 0, 0});
  CHECK_THROWS_AS(cuspidal_class(l30, 1), InvalidInput);
  CHECK_THROWS_AS(cuspidal_class(l30, 7), InvalidInput);
}

TEST_CASE("closed form examples") {
  auto r = order_closed_form(SquareFreeLevel::from_value(11), 11);
  CHECK(r.closed_form_order == 5);
  CHECK(r.h == 1);
  r = order_closed_form(SquareFreeLevel::from_value(17), 17);
  CHECK(r.closed_form_order == 4);
  CHECK(r.h == 2);
  r = order_closed_form(SquareFreeLevel::from_value(34), 17);
  CHECK(r.closed_form_order == 4);
  CHECK(r.h == 2);
  r = order_closed_form(SquareFreeLevel::from_value(30), 2);
  CHECK(r.closed_form_order == 8);
  CHECK(r.h == 1);
  CHECK(order_closed_form(SquareFreeLevel::from_value(6), 2).outside_hypothesis);
}

TEST_CASE("lattice oracle examples") {
  CHECK(order_lattice_oracle(SquareFreeLevel::from_value(11), 11) == 5);
  CHECK(order_lattice_oracle(SquareFreeLevel::from_value(19), 19) == 3);
  CHECK(order_lattice_oracle(SquareFreeLevel::from_value(30), 30) == 1);
  CHECK(order_lattice_oracle(SquareFreeLevel::from_value(17), 17) == 4);
  CHECK(order_lattice_oracle(SquareFreeLevel::from_value(34), 17) == 4);
  CHECK(order_lattice_oracle(SquareFreeLevel::from_value(30), 2) == 8);
}

TEST_CASE("oracle agrees with search and closed form") {
  for (auto n : square_free_range(7, 330)) {
    const auto level = SquareFreeLevel::from_value(n);
    const auto lattice = build_eta_lattice(level);
    for (auto m : divisors_of(n)) {
      if (m == 1) continue;
      const auto c = cuspidal_class(level, m);
      const BigInt oracle = order_lattice_oracle(lattice, c);
      CHECK(oracle == order_closed_form(level, m).closed_form_order);
      if (lattice.generators.rows() <= 8) {
        const auto found = order_by_search(lattice, c, 2000);
        REQUIRE(found.has_value());
        CHECK(*found == oracle);
      }
    }
  }
}

TEST_CASE("h = 2 exactly on the two families") {
  for (auto n : square_free_range(7, 2310))
    for (auto m : divisors_of(n)) {
      if (m == 1) continue;
      const bool family = is_prime(m) && m % 8 == 1 && (n == m || n == 2 * m);
      CHECK(correction_factor_h(n, m) == (family ? 2 : 1));
      const BigInt base = num(BigInt(phi_of(n) * psi_of(n / m)), BigInt(24));
      CHECK(order_closed_form(SquareFreeLevel::from_value(n), m).closed_form_order ==
            base * (family ? 2 : 1));
    }
}

TEST_CASE("E vector") {
  for (auto n : square_free_range(7, 210)) {
    const auto level = SquareFreeLevel::from_value(n);
    const DivisorTable table(level);
    const std::size_t s = table.size();
    for (auto m : divisors_of(n)) {
      if (m == 1) continue;
      const auto e = e_vector(level, m);
      CHECK(e.agree);
      REQUIRE(e.by_solve.size() == s);
      for (std::size_t a = 0; a < s; ++a) {
        const auto& d = table[s - 1 - a];
        const std::uint64_t dv = d.value();
        BigRational expect(BigInt(24 * dv), BigInt(phi_of(n) * psi_of(n / m) * std::gcd(dv, m)));
        expect.canonicalize();
        const int sign = (omega_of(n) - omega_of(dv)) % 2 ? -1 : 1;
        CHECK(e.by_solve[a] == sign * expect);
      }
      BigRational last(BigInt(24), BigInt(phi_of(n) * psi_of(n / m)));
      last.canonicalize();
      CHECK(e.by_solve[s - 1] == (omega_of(n) % 2 ? -last : last));
    }
  }
}

TEST_CASE("divisor-sum identity") {
  for (auto m : square_free_range(1, 500))
    for (auto d : divisors_of(m)) {
      const std::uint64_t e = std::gcd(d, m);
      std::uint64_t total = 0;
      for (auto r : divisors_of(m)) {
        const std::uint64_t g = std::gcd(e, r);
        total += e * r / (g * g);
      }
      CHECK(total == psi_of(m));
    }
}

TEST_CASE("group structure") {
  CHECK(cuspidal_group_structure(SquareFreeLevel::from_value(11)) == std::vector<BigInt>{5});
  CHECK(cuspidal_group_structure(SquareFreeLevel::from_value(13)).empty());
  for (auto n : square_free_range(7, 210)) {
    const auto level = SquareFreeLevel::from_value(n);
    const auto g = cuspidal_group_structure(level);
    const BigInt exponent = g.empty() ? BigInt(1) : g.back();
    for (auto m : divisors_of(n)) {
      if (m == 1) continue;
      CHECK(exponent % order_closed_form(level, m).closed_form_order == 0);
    }
  }
}
