#include "eislab/divlattice.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace eislab {

bool is_square_free(std::uint64_t n) {
  if (n == 0) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> square_free_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 1); n <= hi; ++n)
    if (is_square_free(n)) out.push_back(n);
  return out;
}

SquareFreeLevel SquareFreeLevel::from_value(std::uint64_t n) {
  if (n == 0) throw InvalidInput("level must be positive");
  SquareFreeLevel level;
  level.value_ = n;
  std::uint64_t rest = n;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    rest /= p;
    if (rest % p == 0)
      throw InvalidInput("level " + std::to_string(n) + " is not square-free");
    level.primes_.push_back(p);
  }
  if (rest > 1) level.primes_.push_back(rest);
  return level;
}

BigInt SquareFreeLevel::phi() const { return phi_psi_omega(primes_).phi; }
BigInt SquareFreeLevel::psi() const { return phi_psi_omega(primes_).psi; }

LevelArithmetic phi_psi_omega(const SquareFreeLevel& level) {
  return phi_psi_omega(level.primes());
}

Divisor Divisor::from_bits(const SquareFreeLevel& level, std::uint32_t bits) {
  if (level.omega() > kMaxLevelPrimes)
    throw InvalidInput("level has too many prime factors");
  if (bits >> level.omega()) throw InvalidInput("divisor bits outside the level");
  Divisor d;
  d.level_ = level.value();
  d.level_omega_ = level.omega();
  d.bits_ = bits;
  for (int i = 0; i < level.omega(); ++i)
    if (bits & (1u << i)) d.value_ *= level.primes()[i];
  return d;
}

Divisor Divisor::from_value(const SquareFreeLevel& level, std::uint64_t d) {
  if (!level.divides(d))
    throw InvalidInput(std::to_string(d) + " does not divide " + std::to_string(level.value()));
  std::uint32_t bits = 0;
  for (int i = 0; i < level.omega(); ++i)
    if (d % level.primes()[i] == 0) bits |= 1u << i;
  return from_bits(level, bits);
}

int Divisor::omega() const { return std::popcount(bits_); }

Divisor box_add(const Divisor& a, const Divisor& b) {
  if (a.level() != b.level()) throw InvalidInput("box_add: divisors of different levels");
  // a box b = N (a,b)^2 / (ab); the bits are set exactly where a and b agree.
  const std::uint64_t g = std::gcd(a.value(), b.value());
  const std::uint32_t mask = (1u << a.level_omega_) - 1;
  Divisor out = a;
  out.bits_ = ~(a.bits_ ^ b.bits_) & mask;
  out.value_ = a.level() / (a.value() / g) / (b.value() / g);
  return out;
}

int sgn(const Divisor& a) { return ((a.level_omega() - a.omega()) % 2) ? -1 : 1; }

BigRational a_N(const Divisor& a, const Divisor& b) {
  if (a.level() != b.level()) throw InvalidInput("a_N: divisors of different levels");
  const std::uint64_t n = a.level();
  const BigInt g_a(static_cast<unsigned long>(std::gcd(a.value(), n / a.value())));
  const BigInt g_ab(static_cast<unsigned long>(std::gcd(a.value(), b.value())));
  const BigInt av(static_cast<unsigned long>(a.value()));
  const BigInt bv(static_cast<unsigned long>(b.value()));
  BigRational value = make_rational(BigInt(static_cast<unsigned long>(n)) * g_ab * g_ab,
                                    g_a * av * bv);
  if (value.get_den() != 1 || value.get_num() != static_cast<unsigned long>(box_add(a, b).value()))
    throw InvariantBreach("a_N(a,b) differs from a box b");
  return value;
}

bool divisor_less(const Divisor& a, const Divisor& b) {
  if (a.omega() != b.omega()) return a.omega() < b.omega();
  const std::uint32_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  // Lowest differing prime index: the divisor containing it is smaller.
  return (a.bits() & (diff & (~diff + 1))) != 0;
}

DivisorTable::DivisorTable(const SquareFreeLevel& level) : level_(level) {
  if (level.omega() > kMaxLevelPrimes)
    throw InvalidInput("level has more than " + std::to_string(kMaxLevelPrimes) + " primes");
  const std::uint32_t s = 1u << level.omega();
  divisors_.reserve(s);
  for (std::uint32_t bits = 0; bits < s; ++bits)
    divisors_.push_back(Divisor::from_bits(level, bits));
  std::sort(divisors_.begin(), divisors_.end(), divisor_less);
  index_by_bits_.assign(s, 0);
  for (std::size_t i = 0; i < divisors_.size(); ++i) index_by_bits_[divisors_[i].bits()] = i;
}

std::size_t DivisorTable::index_of(const Divisor& d) const {
  if (d.level() != level_.value()) throw InvalidInput("divisor of a different level");
  return index_by_bits_[d.bits()];
}

std::size_t DivisorTable::index_of_value(std::uint64_t d) const {
  return index_of(Divisor::from_value(level_, d));
}

DivisorTables build_tables(const SquareFreeLevel& level) {
  DivisorTable table(level);
  const std::size_t s = table.size();
  IntMatrix lambda24(s, s);
  IntMatrix a(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      const Divisor dij = box_add(table[i], table[j]);
      lambda24(i, j) = static_cast<unsigned long>(dij.value());
      a(i, j) = sgn(dij) * lambda24(i, j);
    }
  const LevelArithmetic ar = phi_psi_omega(level);
  if (!(lambda24 * a == (ar.phi * ar.psi) * IntMatrix::identity(s)))
    throw InvariantBreach("(24 Lambda) A != phi(N) psi(N) I");
  return {std::move(table), std::move(lambda24), std::move(a)};
}

}  // namespace eislab
