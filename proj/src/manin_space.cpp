#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "eislab/modsym.hpp"

namespace eislab {

namespace {

// s*x + t*y = gcd(x, y)
std::int64_t ext_gcd(std::int64_t x, std::int64_t y, std::int64_t& s, std::int64_t& t) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (y != 0) {
    const std::int64_t q = x / y;
    std::tie(x, y) = std::make_pair(y, x - q * y);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (x < 0) {
    x = -x;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return x;
}

// A matrix of SL_2(Z) whose bottom row reduces to (c, d) mod N.
Mat2 lift_to_sl2(std::uint64_t c, std::uint64_t d, std::uint64_t n) {
  if (n == 1) return {};
  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t cc = c == 0 ? nn : static_cast<std::int64_t>(c);
  std::int64_t dd = static_cast<std::int64_t>(d);
  while (std::gcd(cc, dd) != 1) dd += nn;
  std::int64_t s = 0, t = 0;
  ext_gcd(dd, cc, s, t);  // s*dd + t*cc = 1
  return {s, -t, cc, dd};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

ManinSymbolSpace::ManinSymbolSpace(const SquareFreeLevel& level)
    : level_(level), p1_(level.value()), cusps_(level) {}

ManinSymbolSpace ManinSymbolSpace::build(const SquareFreeLevel& level,
                                         std::uint64_t desk_bound) {
  if (level.value() > desk_bound)
    throw InvalidInput("level " + std::to_string(level.value()) +
                       " exceeds the modular-symbol bound " + std::to_string(desk_bound));
  ManinSymbolSpace space(level);
  space.genus_ = genus_x0(level);
  const P1List& p1 = space.p1_;
  const std::size_t psi = p1.size();
  if (BigInt(static_cast<unsigned long>(psi)) != level.psi())
    throw InvariantBreach("#P^1(Z/N) differs from psi(N)");

  // Relations x + xS = 0 and x + xT + xT^2 = 0, without duplicates.
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> relations;
  for (std::size_t i = 0; i < psi; ++i) {
    std::vector<std::size_t> two{i, p1.apply_s(i)};
    std::sort(two.begin(), two.end());
    if (seen.insert(two).second) relations.push_back(two);
    const std::size_t t1 = p1.apply_t(i);
    std::vector<std::size_t> three{i, t1, p1.apply_t(t1)};
    std::sort(three.begin(), three.end());
    if (seen.insert(three).second) relations.push_back(three);
  }
  RatMatrix rel(relations.size(), psi);
  for (std::size_t r = 0; r < relations.size(); ++r)
    for (std::size_t j : relations[r]) rel(r, j) += 1;
  const std::vector<std::size_t> pivots = rel.rref();

  std::vector<std::ptrdiff_t> free_pos(psi, -1);
  std::vector<std::size_t> free_cols;
  {
    std::vector<bool> is_pivot(psi, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t j = 0; j < psi; ++j)
      if (!is_pivot[j]) {
        free_pos[j] = static_cast<std::ptrdiff_t>(free_cols.size());
        free_cols.push_back(j);
      }
  }
  const std::size_t k = free_cols.size();

  // Rational image of each symbol in Q^k, then cleared of denominators.
  RatMatrix image(psi, k);
  for (std::size_t j : free_cols) image(j, static_cast<std::size_t>(free_pos[j])) = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t t = 0; t < k; ++t) image(pivots[r], t) = -rel(r, free_cols[t]);
  BigInt denom = 1;
  for (std::size_t i = 0; i < psi; ++i)
    for (std::size_t t = 0; t < k; ++t)
      mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), image(i, t).get_den_mpz_t());
  IntMatrix scaled(psi, k);
  for (std::size_t i = 0; i < psi; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      const BigRational v = image(i, t) * BigRational(denom);
      scaled(i, t) = v.get_num();
    }
  const IntMatrix lattice = hermite_normal_form(scaled);
  if (lattice.rows() != k) throw InvariantBreach("symbol images do not span the quotient");
  space.symbol_coords_ = IntMatrix(psi, k);
  for (std::size_t i = 0; i < psi; ++i) {
    auto coords = lattice_coordinates(lattice, scaled.row(i));
    if (!coords) throw InvariantBreach("Manin symbol outside its own span");
    for (std::size_t t = 0; t < k; ++t) space.symbol_coords_(i, t) = (*coords)[t];
  }

  // A Q-basis of L among the symbols.
  {
    RatMatrix tr(space.symbol_coords_.transpose());
    space.basis_symbols_ = tr.rref();
    if (space.basis_symbols_.size() != k) throw InvariantBreach("symbol basis selection failed");
    IntMatrix sub(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t t = 0; t < k; ++t)
        sub(r, t) = space.symbol_coords_(space.basis_symbols_[r], t);
    auto inv = RatMatrix(sub).inverse();
    if (!inv) throw InvariantBreach("chosen symbol basis is singular");
    space.basis_inverse_ = std::move(*inv);
  }

  // Boundary: g{0, oo} -> [g oo] - [g 0].
  const std::size_t s = space.cusps_.size();
  space.symbol_boundary_ = IntMatrix(psi, s);
  for (std::size_t i = 0; i < psi; ++i) {
    const auto [c, d] = p1[i];
    const Mat2 g = lift_to_sl2(c, d, level.value());
    space.symbol_boundary_(i, space.cusps_.classify(Cusp::make(g.a, g.c))) += 1;
    space.symbol_boundary_(i, space.cusps_.classify(Cusp::make(g.b, g.d))) -= 1;
  }
  space.boundary_ = space.operator_from_images([&] {
    IntMatrix rows(k, s);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t t = 0; t < s; ++t)
        rows(r, t) = space.symbol_boundary_(space.basis_symbols_[r], t);
    return rows;
  }());
  if (!(space.symbol_coords_ * space.boundary_ == space.symbol_boundary_))
    throw InvariantBreach("boundary map is not well defined on the quotient");
  if (rank(space.boundary_) + 1 != s)
    throw InvariantBreach("boundary image does not have rank (#cusps - 1)");

  space.cuspidal_basis_ = left_kernel(space.boundary_);
  if (space.cuspidal_basis_.rows() != static_cast<std::size_t>(2 * space.genus_))
    throw InvariantBreach("cuspidal rank " + std::to_string(space.cuspidal_basis_.rows()) +
                          " differs from twice the genus " + std::to_string(space.genus_));
  if (k != static_cast<std::size_t>(2 * space.genus_) + s - 1)
    throw InvariantBreach("relative rank differs from 2g + #cusps - 1");
  if (k == 0) space.cuspidal_basis_ = IntMatrix(0, 0);
  return space;
}

std::vector<BigInt> ManinSymbolSpace::manin_symbol(std::int64_t c, std::int64_t d) const {
  const auto i = p1_.index(c, d);
  if (!i) throw InvalidInput("(c:d) is not in P^1(Z/N)");
  return symbol_coords_.row_vector(*i);
}

namespace {

// Adds sign * {0, x} to `counts`, indexed by P^1 position, via the
// convergents of x: {0, x} = sum_{j=-1}^{r} [(-1)^{j-1} q_j : q_{j-1}].
void add_zero_to(const P1List& p1, const Cusp& x, long sign, std::vector<long>& counts) {
  counts[*p1.index(0, 1)] += sign;
  if (x.den == 0) return;
  std::int64_t num = x.num, den = x.den;
  std::int64_t qm2 = 1, qm1 = 0;  // q_{j-2}, q_{j-1}
  long parity = -1;  // (-1)^{j-1} at j = 0
  while (den != 0) {
    const std::int64_t a = floor_div(num, den);
    const std::int64_t qj = a * qm1 + qm2;
    const auto idx = p1.index(parity * qj, qm1);
    if (!idx) throw InvariantBreach("continued fraction produced a non-unimodular pair");
    counts[*idx] += sign;
    qm2 = qm1;
    qm1 = qj;
    parity = -parity;
    std::tie(num, den) = std::make_pair(den, num - a * den);
  }
}

}  // namespace

std::vector<BigInt> ManinSymbolSpace::modular_symbol(const Cusp& alpha, const Cusp& beta) const {
  std::vector<long> counts(p1_.size(), 0);
  add_zero_to(p1_, beta, 1, counts);
  add_zero_to(p1_, alpha, -1, counts);
  std::vector<BigInt> out(relative_rank());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    const BigInt w(counts[i]);
    for (std::size_t t = 0; t < out.size(); ++t) out[t] += w * symbol_coords_(i, t);
  }
  return out;
}

namespace {

std::vector<BigInt> combine(const IntMatrix& coords, const std::vector<long>& counts) {
  std::vector<BigInt> out(coords.cols());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    const BigInt w(counts[i]);
    for (std::size_t t = 0; t < out.size(); ++t) out[t] += w * coords(i, t);
  }
  return out;
}

// sum_delta {delta g 0, delta g oo} for the symbol g{0, oo} at position i.
void coset_counts(const P1List& p1, std::size_t i, std::span<const Mat2> cosets,
                  std::vector<long>& counts) {
  std::fill(counts.begin(), counts.end(), 0);
  const auto [c, d] = p1[i];
  const Mat2 g = lift_to_sl2(c, d, p1.level());
  for (const Mat2& delta : cosets) {
    const Mat2 h = delta * g;
    add_zero_to(p1, Cusp::make(h.a, h.c), 1, counts);
    add_zero_to(p1, Cusp::make(h.b, h.d), -1, counts);
  }
}

// sum_h (c:d) h, dropping pairs outside P^1.
void heilbronn_counts(const P1List& p1, std::size_t i, std::span<const Mat2> heilbronn,
                      std::vector<long>& counts) {
  std::fill(counts.begin(), counts.end(), 0);
  const auto c = static_cast<std::int64_t>(p1[i].first);
  const auto d = static_cast<std::int64_t>(p1[i].second);
  for (const Mat2& h : heilbronn) {
    const auto idx = p1.index(c * h.a + d * h.c, c * h.b + d * h.d);
    if (idx) counts[*idx] += 1;
  }
}

template <typename CountFn>
IntMatrix images_of(const IntMatrix& coords, std::size_t psi,
                    std::span<const std::size_t> symbols, CountFn fn) {
  IntMatrix out(symbols.size(), coords.cols());
  std::vector<long> counts(psi);
  for (std::size_t r = 0; r < symbols.size(); ++r) {
    fn(symbols[r], counts);
    const auto row = combine(coords, counts);
    for (std::size_t t = 0; t < row.size(); ++t) out(r, t) = row[t];
  }
  return out;
}

std::vector<std::size_t> all_positions(std::size_t n) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

}  // namespace

IntMatrix ManinSymbolSpace::symbol_images_from_cosets(std::span<const Mat2> cosets) const {
  const auto all = all_positions(p1_.size());
  return images_of(symbol_coords_, p1_.size(), all, [&](std::size_t i, std::vector<long>& c) {
    coset_counts(p1_, i, cosets, c);
  });
}

IntMatrix ManinSymbolSpace::symbol_images_from_heilbronn(std::span<const Mat2> heilbronn) const {
  const auto all = all_positions(p1_.size());
  return images_of(symbol_coords_, p1_.size(), all, [&](std::size_t i, std::vector<long>& c) {
    heilbronn_counts(p1_, i, heilbronn, c);
  });
}

IntMatrix ManinSymbolSpace::operator_from_images(const IntMatrix& basis_images) const {
  const RatMatrix solved = basis_inverse_ * RatMatrix(basis_images);
  auto integral = to_integral(solved);
  if (!integral) throw InvariantBreach("operator is not integral on the symbol lattice");
  return *integral;
}

IntMatrix ManinSymbolSpace::relative_operator_from_cosets(std::span<const Mat2> cosets) const {
  return operator_from_images(images_of(
      symbol_coords_, p1_.size(), basis_symbols_,
      [&](std::size_t i, std::vector<long>& c) { coset_counts(p1_, i, cosets, c); }));
}

IntMatrix ManinSymbolSpace::relative_operator_from_heilbronn(
    std::span<const Mat2> heilbronn) const {
  return operator_from_images(images_of(
      symbol_coords_, p1_.size(), basis_symbols_,
      [&](std::size_t i, std::vector<long>& c) { heilbronn_counts(p1_, i, heilbronn, c); }));
}

IntMatrix ManinSymbolSpace::relative_hecke_prime(std::uint64_t p) const {
  if (!is_prime(p)) throw InvalidInput("relative_hecke_prime needs a prime");
  if (level_.divides(p)) {
    const auto cosets = hecke_cosets(p, level_.value());
    return relative_operator_from_cosets(cosets);
  }
  const auto heil = heilbronn_merel(p);
  return relative_operator_from_heilbronn(heil);
}

IntMatrix ManinSymbolSpace::restrict_to_cuspidal(const IntMatrix& op) const {
  const std::size_t r = cuspidal_rank();
  if (r == 0) return IntMatrix(0, 0);
  const IntMatrix image = cuspidal_basis_ * op;
  IntMatrix out(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    auto coords = lattice_coordinates(cuspidal_basis_, image.row(i));
    if (!coords) throw InvariantBreach("cuspidal lattice is not stable under the operator");
    for (std::size_t j = 0; j < r; ++j) out(i, j) = (*coords)[j];
  }
  return out;
}

HeckeOperators::HeckeOperators(std::shared_ptr<const ManinSymbolSpace> space)
    : space_(std::move(space)) {}

IntMatrix HeckeOperators::prime(std::uint64_t p) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = primes_.find(p); it != primes_.end()) return it->second;
  }
  IntMatrix m = space_->restrict_to_cuspidal(space_->relative_hecke_prime(p));
  std::lock_guard lock(mutex_);
  return primes_.emplace(p, std::move(m)).first->second;
}

IntMatrix HeckeOperators::hecke(std::uint64_t n) const {
  if (n == 0) throw InvalidInput("T_0 is undefined");
  const std::size_t r = space_->cuspidal_rank();
  IntMatrix out = IntMatrix::identity(r);
  if (r == 0) return IntMatrix(0, 0);
  for (std::uint64_t p : prime_factors(BigInt(static_cast<unsigned long>(n)))) {
    int e = 0;
    for (std::uint64_t m = n; m % p == 0; m /= p) ++e;
    const IntMatrix tp = prime(p);
    IntMatrix power;
    if (space_->level().divides(p)) {
      power = tp;
      for (int i = 1; i < e; ++i) power = power * tp;
    } else {
      // T_{p^{k+1}} = T_p T_{p^k} - p T_{p^{k-1}}
      IntMatrix prev = IntMatrix::identity(r), cur = tp;
      const BigInt pp(static_cast<unsigned long>(p));
      for (int i = 1; i < e; ++i) {
        IntMatrix next = tp * cur - pp * prev;
        prev = std::move(cur);
        cur = std::move(next);
      }
      power = cur;
    }
    out = out * power;
  }
  return out;
}

}  // namespace eislab
