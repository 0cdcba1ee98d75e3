#include "eislab/qseries.hpp"

#include <numeric>

namespace eislab {

namespace {

BigInt ui(std::uint64_t x) { return BigInt(static_cast<unsigned long>(x)); }

BigInt power(std::uint64_t base, unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

}  // namespace

QExpansion::QExpansion(std::vector<BigInt> coeffs, BigInt modulus)
    : modulus_(std::move(modulus)), coeffs_(std::move(coeffs)) {
  if (modulus_ < 0) throw InvalidInput("negative modulus");
  normalize();
}

void QExpansion::normalize() {
  if (modulus_ == 0) return;
  for (auto& c : coeffs_) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus_.get_mpz_t());
}

QExpansion QExpansion::reduce(const BigInt& modulus) const {
  if (modulus_ != 0 && modulus != 0 && !mpz_divisible_p(modulus_.get_mpz_t(), modulus.get_mpz_t()))
    throw InvalidInput("cannot reduce to a modulus not dividing the current one");
  return QExpansion(coeffs_, modulus);
}

QExpansion QExpansion::truncate(std::size_t precision) const {
  if (precision > coeffs_.size()) throw InvalidInput("truncate beyond precision");
  return QExpansion({coeffs_.begin(), coeffs_.begin() + precision}, modulus_);
}

QExpansion QExpansion::substitute_power(std::uint64_t p) const {
  if (p == 0) throw InvalidInput("substitute_power: p = 0");
  std::vector<BigInt> out(coeffs_.size());
  for (std::size_t n = 0; n * p < coeffs_.size(); ++n) out[n * p] = coeffs_[n];
  return QExpansion(std::move(out), modulus_);
}

QExpansion QExpansion::divide_exact(const BigInt& d) const {
  if (modulus_ != 0) throw InvalidInput("divide_exact on a residue-ring expansion");
  std::vector<BigInt> out(coeffs_.size());
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    if (!mpz_divisible_p(coeffs_[n].get_mpz_t(), d.get_mpz_t()))
      throw InvalidInput("coefficient " + std::to_string(n) + " not divisible");
    mpz_divexact(out[n].get_mpz_t(), coeffs_[n].get_mpz_t(), d.get_mpz_t());
  }
  return QExpansion(std::move(out));
}

QExpansion operator+(const QExpansion& a, const QExpansion& b) {
  if (a.modulus_ != b.modulus_ || a.precision() != b.precision())
    throw InvalidInput("q-expansion sum: incompatible operands");
  std::vector<BigInt> out(a.coeffs_);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] += b.coeffs_[n];
  return QExpansion(std::move(out), a.modulus_);
}

QExpansion operator-(const QExpansion& a, const QExpansion& b) {
  if (a.modulus_ != b.modulus_ || a.precision() != b.precision())
    throw InvalidInput("q-expansion difference: incompatible operands");
  std::vector<BigInt> out(a.coeffs_);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] -= b.coeffs_[n];
  return QExpansion(std::move(out), a.modulus_);
}

QExpansion operator*(const BigInt& k, const QExpansion& a) {
  std::vector<BigInt> out(a.coeffs_);
  for (auto& c : out) c *= k;
  return QExpansion(std::move(out), a.modulus_);
}

std::vector<BigInt> divisor_sums(std::size_t count, unsigned k) {
  std::vector<BigInt> sigma(count);
  for (std::size_t d = 1; d < count; ++d) {
    const BigInt dk = power(d, k);
    for (std::size_t n = d; n < count; n += d) sigma[n] += dk;
  }
  return sigma;
}

QExpansion series_e(std::size_t precision) {
  if (precision < 1) throw InvalidInput("precision must be at least 1");
  std::vector<BigInt> c = divisor_sums(precision, 1);
  for (auto& x : c) x *= -24;
  c[0] = 1;
  return QExpansion(std::move(c));
}

QExpansion series_E4(std::size_t precision) {
  if (precision < 1) throw InvalidInput("precision must be at least 1");
  std::vector<BigInt> c = divisor_sums(precision, 3);
  for (auto& x : c) x *= 240;
  c[0] = 1;
  return QExpansion(std::move(c));
}

QExpansion level_raise(const QExpansion& g, std::uint64_t p, int weight, RaiseSign sign) {
  if (!is_prime(p)) throw InvalidInput("level_raise: " + std::to_string(p) + " is not prime");
  if (weight < 1) throw InvalidInput("level_raise: weight must be positive");
  const BigInt factor = sign == RaiseSign::kPlus ? power(p, weight - 1) : BigInt(1);
  return g - factor * g.substitute_power(p);
}

EisensteinSeriesSpec weight2_spec(const SquareFreeLevel& level, std::uint64_t m) {
  if (!level.divides(m)) throw InvalidInput("M does not divide N");
  EisensteinSeriesSpec spec{level, m, 2, {}};
  for (std::uint64_t p : level.primes())
    if (m % p == 0) spec.word.push_back({p, RaiseSign::kPlus});
  for (std::uint64_t q : level.primes())
    if (m % q != 0) spec.word.push_back({q, RaiseSign::kMinus});
  return spec;
}

QExpansion apply_spec(const EisensteinSeriesSpec& spec, std::size_t precision) {
  QExpansion f;
  if (spec.weight == 2) f = series_e(precision);
  else if (spec.weight == 4) f = series_E4(precision);
  else throw InvalidInput("only weights 2 and 4 are supported");
  for (const RaiseStep& step : spec.word) f = level_raise(f, step.prime, spec.weight, step.sign);
  return f;
}

QExpansion eisenstein_series(const SquareFreeLevel& level, std::uint64_t m,
                             std::size_t precision) {
  return apply_spec(weight2_spec(level, m), precision);
}

HeckeImage hecke_on_expansion(const QExpansion& f, std::uint64_t n,
                              const SquareFreeLevel& level) {
  if (n == 0) throw InvalidInput("Hecke index must be positive");
  if (f.precision() == 0) throw InvalidInput("empty expansion");
  const std::size_t usable = (f.precision() - 1) / n + 1;
  if (usable < 2)
    throw InvalidInput("usable precision after T_" + std::to_string(n) + " is below 2");
  std::vector<BigInt> out(usable);
  for (std::size_t m = 0; m < usable; ++m) {
    // b_0 = sigma'(n) a_0 with the sum over d | n prime to N.
    const std::uint64_t g = m == 0 ? n : std::gcd<std::uint64_t>(m, n);
    for (std::uint64_t d = 1; d <= g; ++d) {
      if (g % d || std::gcd(d, level.value()) != 1) continue;
      const std::uint64_t idx = m * n / (d * d);
      out[m] += ui(d) * f[idx];
    }
  }
  return {QExpansion(std::move(out), f.modulus()), usable};
}

std::vector<EigenCheck> check_eigenform(const SquareFreeLevel& level, std::uint64_t m,
                                        std::size_t precision, std::uint64_t prime_bound) {
  const QExpansion f = eisenstein_series(level, m, precision);
  std::vector<EigenCheck> out;
  for (std::uint64_t r = 2; r < prime_bound; ++r) {
    if (!is_prime(r)) continue;
    EigenCheck c;
    c.prime = r;
    if (!level.divides(r)) {
      c.op = "T_" + std::to_string(r);
      c.eigenvalue = ui(r + 1);
    } else if (m % r == 0) {
      c.op = "U_" + std::to_string(r);
      c.eigenvalue = 1;
    } else {
      c.op = "U_" + std::to_string(r);
      c.eigenvalue = ui(r);
    }
    const HeckeImage image = hecke_on_expansion(f, r, level);
    c.usable_precision = image.usable_precision;
    c.holds = image.series == c.eigenvalue * f.truncate(image.usable_precision);
    out.push_back(std::move(c));
  }
  return out;
}

std::string to_string(ResidueKind kind) {
  switch (kind) {
    case ResidueKind::kInfinity: return "P_N";
    case ResidueKind::kAtkinLehner: return "P_N/p";
    case ResidueKind::kCuspM: return "P_M";
  }
  return "?";
}

std::vector<ResidueReport> residues(const SquareFreeLevel& level, std::uint64_t m) {
  if (m == 1 || !level.divides(m)) throw InvalidInput("M must be a divisor of N other than 1");
  const std::uint64_t n = level.value();
  const int omega = level.omega();
  const BigInt phi = level.phi();
  const Divisor dm = Divisor::from_value(level, m);
  const int sign_n = omega % 2 ? -1 : 1;

  std::vector<ResidueReport> out;
  out.push_back({Divisor::from_value(level, n), ResidueKind::kInfinity, 0,
                 m == n ? BigRational(sign_n * phi) : BigRational(0)});
  if (m == n) {
    for (std::uint64_t p : level.primes())
      out.push_back({Divisor::from_value(level, n / p), ResidueKind::kAtkinLehner, p,
                     BigRational(-sign_n * phi)});
  }
  const BigInt psi_cofactor = SquareFreeLevel::from_value(n / m).psi();
  const int sign_m = dm.omega() % 2 ? -1 : 1;
  out.push_back({dm, ResidueKind::kCuspM, 0,
                 make_rational(sign_m * phi * psi_cofactor * ui(m), ui(n))});
  return out;
}

IdentityCheck level_lowering_identity_check(const SquareFreeLevel& level, std::uint64_t p,
                                            std::size_t precision) {
  if (!level.divides(p) || !is_prime(p)) throw InvalidInput("p must be a prime divisor of N");
  const std::uint64_t d = level.value() / p;
  if (d == 1) throw InvalidInput("N/p must exceed 1");
  if (precision < 2 * p) throw InvalidInput("precision must be at least 2p");
  const SquareFreeLevel lower = SquareFreeLevel::from_value(d);
  const BigInt minus24(-24);
  const QExpansion f_n = eisenstein_series(level, 1, precision).divide_exact(minus24);
  const QExpansion g = eisenstein_series(level, p, precision).divide_exact(minus24);
  const QExpansion f_d = eisenstein_series(lower, 1, precision).divide_exact(minus24);
  const QExpansion lhs = f_n - g;
  const QExpansion rhs = ui(p - 1) * f_d.substitute_power(p);
  IdentityCheck out;
  out.precision = precision;
  for (std::size_t i = 0; i < precision; ++i)
    if (lhs[i] != rhs[i]) {
      out.first_failure = i;
      break;
    }
  out.holds = !out.first_failure;
  return out;
}

QExpansion weight4_G(std::span<const std::uint64_t> primes, std::size_t precision) {
  if (primes.empty()) throw InvalidInput("weight4_G needs at least one prime");
  QExpansion g = series_E4(precision);
  BigInt constant = 1;
  for (std::uint64_t p : primes) {
    g = level_raise(g, p, 4, RaiseSign::kPlus);
    constant *= 1 - power(p, 3);
  }
  if (g[0] != constant) throw InvariantBreach("weight 4 constant term mismatch");
  return g;
}

}  // namespace eislab
