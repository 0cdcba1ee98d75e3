#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "eislab/exactnum.hpp"

using namespace eislab;

namespace {

// Laplace expansion along the first row; only for tiny matrices.
BigInt cofactor_det(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  BigInt total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<BigInt> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    const BigInt c = m[0][j] * cofactor_det(minor);
    if (j % 2) total -= c;
    else total += c;
  }
  return total;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// Invariant factors as ratios of determinantal divisors (gcd of k x k minors).
std::vector<BigInt> determinantal_invariants(const IntMatrix& m) {
  std::vector<BigInt> out;
  BigInt prev = 1;
  const std::size_t r = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= r; ++k) {
    BigInt g = 0;
    for (const auto& rs : subsets(m.rows(), k))
      for (const auto& cs : subsets(m.cols(), k)) {
        std::vector<std::vector<BigInt>> sub;
        for (auto i : rs) {
          std::vector<BigInt> row;
          for (auto j : cs) row.push_back(m(i, j));
          sub.push_back(row);
        }
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cofactor_det(sub).get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

std::vector<BigInt> nonzero(std::vector<BigInt> v) {
  v.erase(std::remove(v.begin(), v.end(), BigInt(0)), v.end());
  return v;
}

}  // namespace

TEST_CASE("num reduces and keeps sign") {
  CHECK(num(make_rational(10, 24)) == 5);
  CHECK(num(make_rational(1, 4)) == 1);
  CHECK(num(make_rational(7, 1)) == 7);
  CHECK(num(BigInt(-10), BigInt(24)) == -5);
  CHECK_THROWS_AS(num(BigInt(3), BigInt(0)), InvalidInput);
}

TEST_CASE("phi psi omega") {
  const std::vector<std::uint64_t> p30{2, 3, 5}, p1{}, p11{11};
  auto a = phi_psi_omega(p30);
  CHECK(a.phi == 8);
  CHECK(a.psi == 72);
  CHECK(a.omega == 3);
  a = phi_psi_omega(p1);
  CHECK(a.phi == 1);
  CHECK(a.psi == 1);
  CHECK(a.omega == 0);
  a = phi_psi_omega(p11);
  CHECK(a.phi == 10);
  CHECK(a.psi == 12);
}

TEST_CASE("smith form small cases") {
  auto s = smith_normal_form(IntMatrix::identity(3));
  CHECK(s.D == IntMatrix::identity(3));

  s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  CHECK(s.D == IntMatrix({{1, 0}, {0, 6}}));
  CHECK(s.U * IntMatrix{{2, 0}, {0, 3}} * s.V == s.D);

  IntMatrix z(2, 3);
  CHECK(smith_normal_form(z).D.is_zero());
  CHECK(elementary_divisors(z).empty());
}

TEST_CASE("hermite form examples") {
  CHECK(hermite_normal_form(IntMatrix::identity(3)) == IntMatrix::identity(3));

  const IntMatrix m{{2, 0}, {0, 3}, {1, 1}};
  const IntMatrix h = hermite_normal_form(m);
  CHECK(h == IntMatrix::identity(2));
  // Every lattice point of a small box is reachable as an integer
  // combination of the three rows.
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y) {
      const std::vector<BigInt> v{x, y};
      CHECK(lattice_coordinates(h, v).has_value());
    }

  // The row lattice of (4,6) is itself; saturation extracts the gcd.
  CHECK(hermite_normal_form(IntMatrix{{4, 6}}) == IntMatrix({{4, 6}}));
  CHECK(saturate(IntMatrix{{4, 6}}) == IntMatrix({{2, 3}}));
}

TEST_CASE("smith invariants against determinantal divisors") {
  std::mt19937 rng(20261017);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix m = random_matrix(rng, r, c, 6);
    const auto oracle = determinantal_invariants(m);
    CHECK(nonzero(smith_normal_form(m).diagonal()) == oracle);
    CHECK(elementary_divisors(m) == oracle);

    // Permuting rows and columns leaves the invariants alone.
    std::vector<std::size_t> rp(r), cp(c);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    IntMatrix p(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) p(i, j) = m(rp[i], cp[j]);
    CHECK(elementary_divisors(p) == oracle);

    const auto s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
  }
}

TEST_CASE("hermite form is idempotent and transform is consistent") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5, 9);
    const IntMatrix h = hermite_normal_form(m);
    CHECK(hermite_normal_form(h) == h);
    const auto hf = hermite_with_transform(m);
    CHECK(hf.U * m == hf.H);
    CHECK(hf.rank == h.rows());
    CHECK(hf.rank == rank(m));
  }
}

TEST_CASE("product of invariant factors equals determinant") {
  std::mt19937 rng(99);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      IntMatrix m = random_matrix(rng, n, n, 7);
      std::vector<std::vector<BigInt>> rows;
      for (std::size_t i = 0; i < n; ++i) rows.push_back(m.row_vector(i));
      const BigInt det = cofactor_det(rows);
      CHECK(determinant(m) == det);
      if (det == 0) continue;
      BigInt prod = 1;
      for (const auto& d : elementary_divisors(m)) prod *= d;
      CHECK(prod == abs(det));
    }
}

TEST_CASE("modular elementary divisors on larger matrices") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    IntMatrix m = random_matrix(rng, 12 - trial % 7, 9, 40);
    const auto s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(s.D.is_diagonal());
    CHECK(elementary_divisors(m) == nonzero(s.diagonal()));
  }
}

TEST_CASE("left kernel and lattice coordinates") {
  const IntMatrix m{{1, 2}, {2, 4}, {3, 7}};
  const IntMatrix k = left_kernel(m);
  CHECK(k.rows() == 1);
  CHECK((k * m).is_zero());

  const IntMatrix h = hermite_normal_form(IntMatrix{{2, 0}, {0, 4}});
  const std::vector<BigInt> in{4, 8}, out{1, 0};
  CHECK(lattice_coordinates(h, in).has_value());
  CHECK_FALSE(lattice_coordinates(h, out).has_value());
}

TEST_CASE("characteristic polynomial") {
  // [[0,-1],[1,0]] has x^2 + 1.
  CHECK(charpoly(IntMatrix{{0, -1}, {1, 0}}) == std::vector<BigInt>{1, 0, 1});
  CHECK(charpoly(IntMatrix{{-2, 0}, {0, -2}}) == std::vector<BigInt>{4, 4, 1});
}

TEST_CASE("rational inverse") {
  RatMatrix m(IntMatrix{{2, 1}, {1, 1}});
  auto inv = m.inverse();
  REQUIRE(inv.has_value());
  auto prod = to_integral(m * *inv);
  REQUIRE(prod.has_value());
  CHECK(*prod == IntMatrix::identity(2));
  CHECK_FALSE(RatMatrix(IntMatrix{{1, 2}, {2, 4}}).inverse().has_value());
}
