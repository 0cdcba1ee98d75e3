#include "eislab/exactnum.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace eislab {

BigRational make_rational(const BigInt& a, const BigInt& b) {
  if (b == 0) throw InvalidInput("rational with zero denominator");
  BigRational r(a, b);
  r.canonicalize();
  return r;
}

BigInt num(const BigRational& x) {
  BigRational r = x;
  r.canonicalize();
  return r.get_num();
}

BigInt num(const BigInt& a, const BigInt& b) { return num(make_rational(a, b)); }

LevelArithmetic phi_psi_omega(std::span<const std::uint64_t> primes) {
  LevelArithmetic out{1, 1, static_cast<int>(primes.size())};
  for (std::uint64_t p : primes) {
    out.phi *= BigInt(static_cast<unsigned long>(p - 1));
    out.psi *= BigInt(static_cast<unsigned long>(p + 1));
  }
  return out;
}

int valuation(const BigInt& x, std::uint64_t p) {
  if (x == 0) throw InvalidInput("valuation of zero");
  BigInt y = abs(x);
  int v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
    mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
    ++v;
  }
  return v;
}

std::vector<std::uint64_t> prime_factors(const BigInt& x) {
  BigInt y = abs(x);
  if (!y.fits_ulong_p()) throw InvalidInput("prime_factors: argument too large");
  std::uint64_t n = y.get_ui();
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

BigInt odd_part(const BigInt& x) {
  BigInt y = abs(x);
  if (y == 0) return y;
  while (mpz_even_p(y.get_mpz_t())) y /= 2;
  return y;
}

bool fits_int64(const BigInt& x) { return x.fits_slong_p(); }

std::int64_t to_int64(const BigInt& x) {
  if (!x.fits_slong_p()) throw InvalidInput("integer does not fit in 64 bits");
  return x.get_si();
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows,
                               std::size_t cols) {
  IntMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

std::vector<BigInt> IntMatrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return {r.begin(), r.end()};
}

std::vector<BigInt> IntMatrix::column_vector(std::size_t j) const {
  std::vector<BigInt> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

void IntMatrix::append_row(std::span<const BigInt> values) {
  if (values.size() != cols_) throw InvalidInput("append_row: width mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src,
                                 const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const BigInt& s = (*this)(src, j);
    if (s != 0) mpz_addmul((*this)(dst, j).get_mpz_t(), factor.get_mpz_t(), s.get_mpz_t());
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src,
                                 const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const BigInt& s = (*this)(i, src);
    if (s != 0) mpz_addmul((*this)(i, dst).get_mpz_t(), factor.get_mpz_t(), s.get_mpz_t());
  }
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::row_block(std::size_t first, std::size_t count) const {
  IntMatrix out(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
  return out;
}

IntMatrix IntMatrix::col_block(std::size_t first, std::size_t count) const {
  IntMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("matrix product: shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigInt& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const BigInt& y = b(k, j);
        if (y != 0) mpz_addmul(c(i, j).get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      }
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("matrix sum: shape mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("matrix difference: shape mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

IntMatrix operator*(const BigInt& k, const IntMatrix& a) {
  IntMatrix c = a;
  for (auto& x : c.data_) x *= k;
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
  }
  os << "]";
  return os.str();
}

std::vector<BigInt> operator*(std::span<const BigInt> v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw InvalidInput("vector-matrix product: shape mismatch");
  std::vector<BigInt> out(m.cols());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) mpz_addmul(out[j].get_mpz_t(), v[i].get_mpz_t(), m(i, j).get_mpz_t());
  }
  return out;
}

// ------------------------------------------------------------ normal forms

namespace {

// Row-style Hermite reduction in place. When `u` is non-null it receives the
// same row operations.
std::size_t hermite_in_place(IntMatrix& h, IntMatrix* u) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  std::size_t r = 0;
  BigInt q;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    while (true) {
      // Smallest nonzero |entry| in column c at or below row r becomes pivot.
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (h(i, c) == 0) continue;
        if (best == m || mpz_cmpabs(h(i, c).get_mpz_t(), h(best, c).get_mpz_t()) < 0) best = i;
      }
      if (best == m) break;
      h.swap_rows(r, best);
      if (u) u->swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
        q = -q;
        h.add_row_multiple(i, r, q);
        if (u) u->add_row_multiple(i, r, q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= m || h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      if (u) u->negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (h(i, c) == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      q = -q;
      h.add_row_multiple(i, r, q);
      if (u) u->add_row_multiple(i, r, q);
    }
    ++r;
  }
  return r;
}

// Alternating row and column Hermite reductions until the matrix is
// diagonal, then a gcd step for each pair breaking the divisibility chain.
// Hermite reduction keeps off-pivot entries below the pivots, which avoids
// the entry growth of plain pivot chasing.
void smith_in_place(IntMatrix& a, IntMatrix& u, IntMatrix& v) {
  const std::size_t k = std::min(a.rows(), a.cols());
  while (true) {
    // The first row pass also normalizes signs and moves zeros last.
    do {
      IntMatrix ru = IntMatrix::identity(a.rows());
      hermite_in_place(a, &ru);
      u = ru * u;
      if (a.is_diagonal()) break;
      IntMatrix t = a.transpose();
      IntMatrix cu = IntMatrix::identity(t.rows());
      hermite_in_place(t, &cu);
      a = t.transpose();
      v = v * cu.transpose();
    } while (!a.is_diagonal());
    // Nonzero diagonal entries come first and are positive.
    std::size_t bad_i = k, bad_j = k;
    for (std::size_t i = 0; i < k && bad_i == k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (!mpz_divisible_p(a(j, j).get_mpz_t(), a(i, i).get_mpz_t())) {
          bad_i = i;
          bad_j = j;
          break;
        }
    if (bad_i == k) return;
    // Column i += column j puts a_jj under a_ii; the next row pass replaces
    // the pair by their gcd and lcm.
    a.add_col_multiple(bad_i, bad_j, BigInt(1));
    v.add_col_multiple(bad_i, bad_j, BigInt(1));
  }
}

// Smith elimination without transforms, entries kept in (-D/2, D/2].
void smith_mod_in_place(IntMatrix& a, const BigInt& d) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  BigInt q, half = d / 2;
  auto reduce = [&](BigInt& x) {
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    if (x > half) x -= d;
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(src, j) == 0) continue;
      mpz_addmul(a(dst, j).get_mpz_t(), f.get_mpz_t(), a(src, j).get_mpz_t());
      reduce(a(dst, j));
    }
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t i = 0; i < m; ++i) {
      if (a(i, src) == 0) continue;
      mpz_addmul(a(i, dst).get_mpz_t(), f.get_mpz_t(), a(i, src).get_mpz_t());
      reduce(a(i, dst));
    }
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) reduce(a(i, j));

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a(i, j) != 0 && (pi == m || mpz_cmpabs(a(i, j).get_mpz_t(), a(pi, pj).get_mpz_t()) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi == m) return;
    a.swap_rows(t, pi);
    a.swap_cols(t, pj);
    while (true) {
      bool changed = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        q = -q;
        add_row(i, t, q);
        if (a(i, t) != 0) {
          a.swap_rows(t, i);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        q = -q;
        add_col(j, t, q);
        if (a(t, j) != 0) {
          a.swap_cols(t, j);
          changed = true;
        }
      }
      if (changed) continue;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      add_row(t, bad, BigInt(1));
    }
  }
}

}  // namespace

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm f{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  smith_in_place(f.D, f.U, f.V);
  return f;
}

std::vector<BigInt> elementary_divisors(const IntMatrix& m) {
  IntMatrix h = hermite_normal_form(m);
  const std::size_t r = h.rows();
  if (r == 0) return {};
  // The pivots of the echelon form multiply to a nonzero r x r minor D.
  // The column lattice then contains D Z^r, so the Smith pass may reduce
  // entries modulo D without changing the invariants.
  BigInt d = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) {
        d *= h(i, j);
        break;
      }
  d = abs(d);
  smith_mod_in_place(h, d);
  std::vector<BigInt> g(r);
  for (std::size_t i = 0; i < r; ++i) mpz_gcd(g[i].get_mpz_t(), h(i, i).get_mpz_t(), d.get_mpz_t());
  // Restore the divisibility chain on the diagonal.
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      BigInt a, b;
      mpz_gcd(a.get_mpz_t(), g[i].get_mpz_t(), g[j].get_mpz_t());
      mpz_lcm(b.get_mpz_t(), g[i].get_mpz_t(), g[j].get_mpz_t());
      g[i] = a;
      g[j] = b;
    }
  return g;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  std::size_t r = hermite_in_place(h, nullptr);
  return h.row_block(0, r);
}

HermiteForm hermite_with_transform(const IntMatrix& m) {
  HermiteForm f{m, IntMatrix::identity(m.rows()), 0};
  f.rank = hermite_in_place(f.H, &f.U);
  return f;
}

IntMatrix left_kernel(const IntMatrix& m) {
  HermiteForm f = hermite_with_transform(m);
  IntMatrix k = f.U.row_block(f.rank, m.rows() - f.rank);
  return hermite_normal_form(k);
}

IntMatrix saturate(const IntMatrix& m) {
  // Orthogonal complement twice: sat(L) = (L^perp)^perp.
  IntMatrix perp = left_kernel(m.transpose());
  if (perp.rows() == 0) return IntMatrix::identity(m.cols());
  return left_kernel(perp.transpose());
}

std::size_t rank(const IntMatrix& m) {
  RatMatrix r(m);
  return r.rref().size();
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::optional<std::vector<BigInt>> lattice_coordinates(const IntMatrix& hnf_basis,
                                                       std::span<const BigInt> v) {
  if (v.size() != hnf_basis.cols()) throw InvalidInput("lattice_coordinates: width mismatch");
  std::vector<BigInt> rest(v.begin(), v.end());
  std::vector<BigInt> coords(hnf_basis.rows());
  std::size_t col = 0;
  for (std::size_t i = 0; i < hnf_basis.rows(); ++i) {
    while (col < hnf_basis.cols() && hnf_basis(i, col) == 0) {
      if (rest[col] != 0) return std::nullopt;
      ++col;
    }
    if (col == hnf_basis.cols()) throw InvalidInput("lattice_coordinates: zero basis row");
    const BigInt& pivot = hnf_basis(i, col);
    if (!mpz_divisible_p(rest[col].get_mpz_t(), pivot.get_mpz_t())) return std::nullopt;
    coords[i] = rest[col] / pivot;
    if (coords[i] != 0)
      for (std::size_t j = col; j < rest.size(); ++j)
        rest[j] -= coords[i] * hnf_basis(i, j);
    ++col;
  }
  for (const auto& x : rest)
    if (x != 0) return std::nullopt;
  return coords;
}

std::vector<BigInt> charpoly(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("charpoly of non-square matrix");
  // Faddeev-LeVerrier; every division below is exact over Z.
  const std::size_t n = m.rows();
  std::vector<BigInt> c(n + 1);
  c[n] = 1;
  IntMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    IntMatrix am = m * mk;
    BigInt tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    BigInt kk(static_cast<unsigned long>(k));
    if (!mpz_divisible_p(tr.get_mpz_t(), kk.get_mpz_t()))
      throw InvariantBreach("charpoly: inexact division");
    c[n - k] = -(tr / kk);
  }
  return c;
}

// ---------------------------------------------------------------- RatMatrix

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix::RatMatrix(const IntMatrix& m) : RatMatrix(m.rows(), m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = BigRational(m(i, j));
}

std::vector<std::size_t> RatMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && (*this)(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
    BigRational inv = 1 / (*this)(r, c);
    for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || (*this)(i, c) == 0) continue;
      BigRational f = (*this)(i, c);
      for (std::size_t j = c; j < cols_; ++j)
        if ((*this)(r, j) != 0) (*this)(i, j) -= f * (*this)(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::optional<RatMatrix> RatMatrix::inverse() const {
  if (rows_ != cols_) throw InvalidInput("inverse of non-square matrix");
  const std::size_t n = rows_;
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = aug.rref();
  if (n == 0) return RatMatrix(0, 0);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("rational product: shape mismatch");
  RatMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::optional<IntMatrix> to_integral(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) return std::nullopt;
      out(i, j) = m(i, j).get_num();
    }
  return out;
}

}  // namespace eislab
