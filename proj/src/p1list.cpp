#include <numeric>
#include <stdexcept>

#include "eislab/modsym.hpp"

namespace eislab {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t n) {
  const std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

std::uint64_t gcd3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return std::gcd(std::gcd(a, b), c);
}

}  // namespace

std::vector<Mat2> heilbronn_cremona(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput("heilbronn_cremona needs a prime");
  const std::int64_t pp = static_cast<std::int64_t>(p);
  std::vector<Mat2> out;
  out.push_back({1, 0, 0, pp});
  for (std::int64_t s = 0; s < pp; ++s) {
    const std::int64_t r = s - (pp - 1) / 2;
    std::int64_t x1 = pp, x2 = -r, y1 = 0, y2 = 1, a = -pp, b = r;
    out.push_back({x1, x2, y1, y2});
    while (b != 0) {
      // nearest-integer quotient, ties away from zero
      std::int64_t q = a / b;
      const std::int64_t rem = a - q * b;
      if (rem != 0 && 2 * std::llabs(rem) >= std::llabs(b))
        q += ((rem < 0) == (b < 0)) ? 1 : -1;
      const std::int64_t c = a - b * q;
      a = -b;
      b = c;
      const std::int64_t x3 = q * x2 - x1;
      x1 = x2;
      x2 = x3;
      const std::int64_t y3 = q * y2 - y1;
      y1 = y2;
      y2 = y3;
      out.push_back({x1, x2, y1, y2});
    }
  }
  return out;
}

std::vector<Mat2> heilbronn_merel(std::uint64_t n) {
  if (n == 0) throw InvalidInput("heilbronn_merel needs n >= 1");
  const std::int64_t nn = static_cast<std::int64_t>(n);
  std::vector<Mat2> out;
  for (std::int64_t a = 1; a <= nn; ++a) {
    const std::int64_t q = nn / a;
    if (q * a == nn) {
      for (std::int64_t b = 0; b < a; ++b) out.push_back({a, b, 0, q});
      for (std::int64_t c = 1; c < q; ++c) out.push_back({a, 0, c, q});
    }
    for (std::int64_t d = q + 1; d <= nn; ++d) {
      const std::int64_t bc = a * d - nn;
      for (std::int64_t c = bc / a + 1; c < d; ++c)
        if (bc % c == 0) out.push_back({a, bc / c, c, d});
    }
  }
  return out;
}

std::vector<Mat2> hecke_cosets(std::uint64_t p, std::uint64_t level) {
  if (!is_prime(p)) throw InvalidInput("hecke_cosets needs a prime");
  const std::int64_t pp = static_cast<std::int64_t>(p);
  std::vector<Mat2> out;
  for (std::int64_t j = 0; j < pp; ++j) out.push_back({1, j, 0, pp});
  if (level % p != 0) out.push_back({pp, 0, 0, 1});
  return out;
}

P1List::P1List(std::uint64_t n) : n_(n) {
  if (n == 0) throw InvalidInput("P1List: N = 0");
  if (n > 46340) throw InvalidInput("P1List: N too large for the lookup table");
  table_.assign(n * n, -1);
  std::vector<std::uint64_t> units;
  for (std::uint64_t u = 1; u <= n; ++u)
    if (std::gcd(u, n) == 1) units.push_back(u % n);
  // Lexicographic scan: the first member met of each class is its
  // representative.
  for (std::uint64_t c = 0; c < n; ++c)
    for (std::uint64_t d = 0; d < n; ++d) {
      if (gcd3(c, d, n) != 1 || table_[c * n + d] >= 0) continue;
      const auto idx = static_cast<std::int32_t>(reps_.size());
      reps_.emplace_back(c, d);
      for (std::uint64_t u : units) table_[(u * c % n) * n + (u * d % n)] = idx;
    }
}

std::optional<std::size_t> P1List::index(std::int64_t c, std::int64_t d) const {
  const auto n = static_cast<std::int64_t>(n_);
  const std::int32_t i = table_[mod(c, n) * n + mod(d, n)];
  if (i < 0) return std::nullopt;
  return static_cast<std::size_t>(i);
}

std::size_t P1List::apply_s(std::size_t i) const {
  const auto [c, d] = reps_[i];
  return *index(static_cast<std::int64_t>(d), -static_cast<std::int64_t>(c));
}

std::size_t P1List::apply_t(std::size_t i) const {
  const auto [c, d] = reps_[i];
  return *index(static_cast<std::int64_t>(d),
                -static_cast<std::int64_t>(c) - static_cast<std::int64_t>(d));
}

Cusp Cusp::make(std::int64_t num, std::int64_t den) {
  if (num == 0 && den == 0) throw InvalidInput("0/0 is not a cusp");
  if (den == 0) return infinity();
  const std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

bool cusps_equivalent(const Cusp& x, const Cusp& y, std::uint64_t level) {
  // (a2, c2) = +-(x a1 + y c1, N z a1 + w c1) with xw = 1 (N): so
  // c2 = +-w c1 (mod N) and a2 w = +-a1 (mod gcd(c1, N)).
  const auto n = static_cast<std::int64_t>(level);
  const auto g = static_cast<std::int64_t>(std::gcd<std::uint64_t>(
      static_cast<std::uint64_t>(std::llabs(x.den)), level));
  const std::int64_t a1 = mod(x.num, n), c1 = mod(x.den, n);
  const std::int64_t a2 = mod(y.num, n), c2 = mod(y.den, n);
  for (std::int64_t w = 1; w <= n; ++w) {
    if (std::gcd(w, n) != 1) continue;
    for (int s : {1, -1}) {
      if (mod(c2 - s * w * c1, n) != 0) continue;
      if (mod(a2 * w - s * a1, g) == 0) return true;
    }
  }
  return false;
}

CuspSet::CuspSet(const SquareFreeLevel& level) : table_(level) {}

Cusp CuspSet::representative(std::size_t i) const {
  return Cusp::make(1, static_cast<std::int64_t>(table_[i].value()));
}

std::size_t CuspSet::classify(const Cusp& x) const {
  const std::uint64_t n = table_.level().value();
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (!cusps_equivalent(x, representative(i), n)) continue;
    if (found) throw InvariantBreach("cusp equivalent to two distinct classes");
    found = i;
  }
  if (!found)
    throw InvariantBreach("unclassifiable cusp " + std::to_string(x.num) + "/" +
                          std::to_string(x.den));
  const std::uint64_t by_gcd =
      std::gcd<std::uint64_t>(static_cast<std::uint64_t>(std::llabs(x.den)), n);
  if (table_[*found].value() != (x.den == 0 ? n : by_gcd))
    throw InvariantBreach("cusp class disagrees with gcd(denominator, N)");
  return *found;
}

int genus_x0(const SquareFreeLevel& level) {
  // 12 g = 12 + psi - 3 nu2 - 4 nu3 - 6 * (number of cusps)
  long nu2 = 1, nu3 = 1;
  for (std::uint64_t p : level.primes()) {
    if (p != 2) nu2 *= (p % 4 == 1) ? 2 : 0;
    if (p != 3) nu3 *= (p % 3 == 1) ? 2 : 0;
  }
  const BigInt twelve_g = 12 + level.psi() - 3 * nu2 - 4 * nu3 - 6 * BigInt(1ul << level.omega());
  if (twelve_g % 12 != 0) throw InvariantBreach("genus formula is not integral");
  return static_cast<int>(to_int64(twelve_g / 12));
}

}  // namespace eislab
