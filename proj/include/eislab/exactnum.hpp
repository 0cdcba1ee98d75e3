#pragma once

// Exact integer and rational arithmetic plus integer-matrix normal forms.
//
// Everything in the library is exact: integers are GMP integers and
// rationals are canonical GMP rationals. Matrices are dense and row-major;
// lattices are always described by their *rows*.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace eislab {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Raised for caller mistakes: bad levels, divisors that do not divide, etc.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal mathematical invariant fails. Never expected.
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Builds a canonical rational a/b. Throws InvalidInput when b == 0.
BigRational make_rational(const BigInt& a, const BigInt& b);

/// Numerator of a rational in lowest terms, carrying the sign of x.
BigInt num(const BigRational& x);
/// num(a/b) = a/(a,b) with the sign of a/b. Throws InvalidInput when b == 0.
BigInt num(const BigInt& a, const BigInt& b);

/// Euler-type products over a list of distinct primes.
struct LevelArithmetic {
  BigInt phi;  // prod (p - 1)
  BigInt psi;  // prod (p + 1)
  int omega = 0;
};
LevelArithmetic phi_psi_omega(std::span<const std::uint64_t> primes);

/// p-adic valuation of a nonzero integer.
int valuation(const BigInt& x, std::uint64_t p);
/// Prime factors of |x| by trial division (|x| must fit in 64 bits).
std::vector<std::uint64_t> prime_factors(const BigInt& x);
bool is_prime(std::uint64_t n);
/// Part of x coprime to 2, made positive.
BigInt odd_part(const BigInt& x);

bool fits_int64(const BigInt& x);
std::int64_t to_int64(const BigInt& x);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows,
                             std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<BigInt> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const BigInt> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<BigInt> row_vector(std::size_t i) const;
  std::vector<BigInt> column_vector(std::size_t j) const;

  void append_row(std::span<const BigInt> values);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  IntMatrix transpose() const;
  /// Rows [first, first + count).
  IntMatrix row_block(std::size_t first, std::size_t count) const;
  /// Columns [first, first + count).
  IntMatrix col_block(std::size_t first, std::size_t count) const;
  /// All entries as one row-major vector.
  std::vector<BigInt> flatten() const { return data_; }
  bool is_zero() const;
  bool is_diagonal() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const BigInt& k, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Row vector times matrix.
std::vector<BigInt> operator*(std::span<const BigInt> v, const IntMatrix& m);

struct SmithForm {
  IntMatrix U;  // unimodular, rows x rows
  IntMatrix D;  // diagonal, d_i | d_{i+1}, nonnegative
  IntMatrix V;  // unimodular, cols x cols
  /// Diagonal entries d_0..d_{min(rows,cols)-1}, zeros included.
  std::vector<BigInt> diagonal() const;
};

/// U * M * V = D.
SmithForm smith_normal_form(const IntMatrix& m);
/// Nonzero invariant factors of m, computed without transforms.
std::vector<BigInt> elementary_divisors(const IntMatrix& m);

/// Row-style Hermite normal form: a canonical basis (nonzero rows only) of
/// the row lattice. Pivots are positive; entries above a pivot lie in
/// [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& m);

struct HermiteForm {
  IntMatrix H;  // all rows of the reduced matrix, zero rows last
  IntMatrix U;  // unimodular with U * m = H
  std::size_t rank = 0;
};
HermiteForm hermite_with_transform(const IntMatrix& m);

/// Basis rows of the left kernel {x in Z^rows : x * m = 0}, in HNF.
IntMatrix left_kernel(const IntMatrix& m);

/// Basis of (Q-span of rows) intersected with Z^cols, in HNF.
IntMatrix saturate(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);
/// Bareiss fraction-free determinant of a square matrix.
BigInt determinant(const IntMatrix& m);

/// Integer coordinates c with c * basis = v, where `basis` is a Hermite
/// normal form. Returns nullopt when v is not in the lattice.
std::optional<std::vector<BigInt>> lattice_coordinates(
    const IntMatrix& hnf_basis, std::span<const BigInt> v);

/// Characteristic polynomial det(xI - m), coefficients from x^0 upward.
std::vector<BigInt> charpoly(const IntMatrix& m);

// Dense rational matrices; only what the modular-symbol quotient needs.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  explicit RatMatrix(const IntMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigRational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigRational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref();
  /// Inverse of a square nonsingular matrix; nullopt if singular.
  std::optional<RatMatrix> inverse() const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigRational> data_;
};

/// Converts a rational matrix with integral entries; nullopt otherwise.
std::optional<IntMatrix> to_integral(const RatMatrix& m);

}  // namespace eislab
