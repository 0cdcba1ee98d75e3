#pragma once

// Divisor algebra of a square-free level N: the ordered divisor set, the
// box addition, signs, and the matrices Lambda (stored as 24*Lambda) and A.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eislab/exactnum.hpp"

namespace eislab {

/// Largest number of prime factors accepted by the divisor tables.
inline constexpr int kMaxLevelPrimes = 20;

class SquareFreeLevel {
 public:
  /// Factors N by trial division. Throws InvalidInput unless N >= 1 is
  /// square-free.
  static SquareFreeLevel from_value(std::uint64_t n);

  std::uint64_t value() const { return value_; }
  std::span<const std::uint64_t> primes() const { return primes_; }
  int omega() const { return static_cast<int>(primes_.size()); }
  BigInt phi() const;
  BigInt psi() const;
  /// Inside the standing hypothesis N > 6.
  bool in_theorem_range() const { return value_ > 6; }
  bool divides(std::uint64_t d) const { return d != 0 && value_ % d == 0; }

  friend bool operator==(const SquareFreeLevel& a, const SquareFreeLevel& b) {
    return a.value_ == b.value_;
  }

 private:
  std::uint64_t value_ = 1;
  std::vector<std::uint64_t> primes_;
};

bool is_square_free(std::uint64_t n);
/// Square-free integers in [lo, hi], ascending.
std::vector<std::uint64_t> square_free_range(std::uint64_t lo, std::uint64_t hi);
LevelArithmetic phi_psi_omega(const SquareFreeLevel& level);

/// A divisor of N as a bit-vector over the ordered primes of N: bit i is set
/// iff the (i+1)-th smallest prime divides it.
class Divisor {
 public:
  Divisor() = default;
  static Divisor from_bits(const SquareFreeLevel& level, std::uint32_t bits);
  /// Throws InvalidInput when d does not divide N.
  static Divisor from_value(const SquareFreeLevel& level, std::uint64_t d);

  std::uint64_t level() const { return level_; }
  std::uint32_t bits() const { return bits_; }
  std::uint64_t value() const { return value_; }
  int omega() const;
  int level_omega() const { return level_omega_; }

  friend bool operator==(const Divisor& a, const Divisor& b) {
    return a.level_ == b.level_ && a.bits_ == b.bits_;
  }
  friend Divisor box_add(const Divisor& a, const Divisor& b);

 private:
  std::uint64_t level_ = 1;
  int level_omega_ = 0;
  std::uint32_t bits_ = 0;
  std::uint64_t value_ = 1;
};

/// c_i = a_i + b_i + 1 (mod 2). Identity N; a box a = N.
Divisor box_add(const Divisor& a, const Divisor& b);
/// (-1)^(omega(N) - omega(a)).
int sgn(const Divisor& a);
/// N/(a, N/a) * (a,b)^2/(ab), asserted equal to a box b.
BigRational a_N(const Divisor& a, const Divisor& b);

/// Total order on divisors: fewer prime factors first; ties broken so that
/// the divisor holding the earliest differing prime comes first.
bool divisor_less(const Divisor& a, const Divisor& b);

class DivisorTable {
 public:
  explicit DivisorTable(const SquareFreeLevel& level);

  const SquareFreeLevel& level() const { return level_; }
  std::size_t size() const { return divisors_.size(); }
  const Divisor& operator[](std::size_t i) const { return divisors_[i]; }
  std::span<const Divisor> divisors() const { return divisors_; }
  /// Position of a divisor in the ordered table.
  std::size_t index_of(const Divisor& d) const;
  std::size_t index_of_value(std::uint64_t d) const;

 private:
  SquareFreeLevel level_;
  std::vector<Divisor> divisors_;
  std::vector<std::size_t> index_by_bits_;
};

struct DivisorTables {
  DivisorTable table;
  IntMatrix lambda24;  // (24 Lambda)_ij = d_i box d_j
  IntMatrix a;         // A_ij = sgn(d_ij) d_ij
};

/// Builds the ordered table and both matrices, asserting
/// (24 Lambda) * A = phi(N) psi(N) * I. Rejects levels with more than
/// kMaxLevelPrimes primes.
DivisorTables build_tables(const SquareFreeLevel& level);

}  // namespace eislab
