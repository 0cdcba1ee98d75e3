#include "eislab/cuspgroup.hpp"

#include <numeric>

namespace eislab {

namespace {

BigInt ui(std::uint64_t x) { return BigInt(static_cast<unsigned long>(x)); }

void require_valid_m(const SquareFreeLevel& level, std::uint64_t m) {
  if (m == 1) throw InvalidInput("M = 1 gives the zero divisor");
  if (!level.divides(m))
    throw InvalidInput("M = " + std::to_string(m) + " does not divide N = " +
                       std::to_string(level.value()));
}

BigInt product(const std::vector<BigInt>& xs) {
  BigInt p = 1;
  for (const auto& x : xs) p *= x;
  return p;
}

}  // namespace

CuspidalDivisorClass cuspidal_class(const SquareFreeLevel& level, std::uint64_t m) {
  require_valid_m(level, m);
  DivisorTable table(level);
  CuspidalDivisorClass c{level, std::vector<BigInt>(table.size())};
  for (std::size_t a = 0; a < table.size(); ++a) {
    const Divisor& d = table[a];
    if (m % d.value() == 0) c.coeffs[a] = (d.omega() % 2) ? -1 : 1;
  }
  BigInt degree = 0;
  for (const auto& x : c.coeffs) degree += x;
  if (degree != 0) throw InvariantBreach("cuspidal class has nonzero degree");
  return c;
}

int correction_factor_h(std::uint64_t n, std::uint64_t m) {
  if (!is_prime(m) || m % 8 != 1) return 1;
  return (n == m || n == 2 * m) ? 2 : 1;
}

OrderResult order_closed_form(const SquareFreeLevel& level, std::uint64_t m) {
  require_valid_m(level, m);
  const SquareFreeLevel cofactor = SquareFreeLevel::from_value(level.value() / m);
  OrderResult r;
  r.n = level.value();
  r.m = m;
  r.h = correction_factor_h(level.value(), m);
  r.closed_form_order = num(level.phi() * cofactor.psi(), BigInt(24)) * r.h;
  r.outside_hypothesis = !level.in_theorem_range();
  return r;
}

EtaLattice build_eta_lattice(const SquareFreeLevel& level) {
  const DivisorTables tables = build_tables(level);
  const DivisorTable& table = tables.table;
  const std::size_t s = table.size();
  const std::uint64_t n = level.value();

  // Each constraint is a weight vector w on the exponents together with a
  // modulus: sum_j w_j e_j = 0 (mod modulus), modulus 0 meaning exact.
  std::vector<std::vector<BigInt>> weights;
  std::vector<BigInt> moduli;
  auto add = [&](std::vector<BigInt> w, long modulus) {
    weights.push_back(std::move(w));
    moduli.emplace_back(modulus);
  };
  {
    add(std::vector<BigInt>(s, BigInt(1)), 0);  // weight zero
    std::vector<BigInt> by_delta(s), by_codelta(s);
    for (std::size_t j = 0; j < s; ++j) {
      by_delta[j] = ui(table[j].value());
      by_codelta[j] = ui(n / table[j].value());
    }
    add(std::move(by_delta), 24);
    add(std::move(by_codelta), 24);
  }
  for (int i = 0; i < level.omega(); ++i) {
    // prod delta^{e_delta} a rational square: even exponent of each prime.
    std::vector<BigInt> w(s);
    for (std::size_t j = 0; j < s; ++j) w[j] = (table[j].bits() >> i) & 1u;
    add(std::move(w), 2);
  }
  for (std::size_t i = 0; i < s; ++i) {
    // Integral order of vanishing at every cusp.
    add(tables.lambda24.row_vector(i), 24);
  }

  const std::size_t c = weights.size();
  IntMatrix constraints(s, c);
  for (std::size_t k = 0; k < c; ++k)
    for (std::size_t j = 0; j < s; ++j) constraints(j, k) = weights[k][j];

  // Unknowns (e, t): e . w_k + t_k * modulus_k = 0 for every k.
  IntMatrix system(s + c, c);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t k = 0; k < c; ++k) system(j, k) = constraints(j, k);
  for (std::size_t k = 0; k < c; ++k) system(s + k, k) = moduli[k];
  IntMatrix kernel = left_kernel(system);
  IntMatrix exponents = hermite_normal_form(kernel.col_block(0, s));

  EtaLattice lattice{level, tables.lambda24, std::move(constraints), std::move(moduli),
                     std::move(exponents), IntMatrix()};
  lattice.divisor_basis24 = hermite_normal_form(lattice.exponent_basis * tables.lambda24);
  return lattice;
}

BigInt order_lattice_oracle(const EtaLattice& lattice, const CuspidalDivisorClass& c) {
  const IntMatrix& basis = lattice.divisor_basis24;
  std::vector<BigInt> x(c.coeffs.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 24 * c.coeffs[i];
  IntMatrix extended = basis;
  extended.append_row(x);
  const auto inner = elementary_divisors(basis);
  const auto outer = elementary_divisors(extended);
  if (inner.size() != outer.size())
    throw InvariantBreach("cuspidal class outside the span of principal divisors");
  // [L + Zx : L] = order of x modulo L when both have the same rank.
  return product(inner) / product(outer);
}

BigInt order_lattice_oracle(const SquareFreeLevel& level, std::uint64_t m) {
  return order_lattice_oracle(build_eta_lattice(level), cuspidal_class(level, m));
}

std::optional<BigInt> order_by_search(const EtaLattice& lattice,
                                      const CuspidalDivisorClass& c,
                                      std::uint64_t limit) {
  std::vector<BigInt> x(c.coeffs.size());
  for (std::uint64_t k = 1; k <= limit; ++k) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 24 * ui(k) * c.coeffs[i];
    if (lattice_coordinates(lattice.divisor_basis24, x)) return ui(k);
  }
  return std::nullopt;
}

OrderResult order_with_oracle(const SquareFreeLevel& level, std::uint64_t m) {
  OrderResult r = order_closed_form(level, m);
  r.oracle_order = order_lattice_oracle(level, m);
  r.agreed = (*r.oracle_order == r.closed_form_order);
  return r;
}

EVector e_vector(const SquareFreeLevel& level, std::uint64_t m) {
  const CuspidalDivisorClass c = cuspidal_class(level, m);
  const DivisorTables tables = build_tables(level);
  const std::size_t s = tables.table.size();
  const BigInt phi = level.phi();
  const BigInt psi = level.psi();
  const BigInt psi_cofactor = SquareFreeLevel::from_value(level.value() / m).psi();

  EVector out;
  out.by_solve.resize(s);
  out.by_closed_form.resize(s);
  for (std::size_t a = 0; a < s; ++a) {
    BigInt acc = 0;
    for (std::size_t k = 0; k < s; ++k) acc += tables.a(a, k) * c.coeffs[k];
    out.by_solve[a] = make_rational(24 * acc, phi * psi);

    const Divisor& d = tables.table[s - 1 - a];
    const std::uint64_t g = std::gcd(d.value(), m);
    out.by_closed_form[a] = make_rational(sgn(d) * 24 * ui(d.value() / g), phi * psi_cofactor);
  }
  out.agree = out.by_solve == out.by_closed_form;
  return out;
}

std::vector<BigInt> cuspidal_group_structure(const SquareFreeLevel& level) {
  const EtaLattice lattice = build_eta_lattice(level);
  const std::size_t s = lattice.divisor_basis24.cols();
  if (s < 2) return {};
  IntMatrix basis = lattice.divisor_basis24;
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < s; ++j) {
      if (!mpz_divisible_ui_p(basis(i, j).get_mpz_t(), 24))
        throw InvariantBreach("principal divisor with non-integral order");
      basis(i, j) /= 24;
    }
  // Degree-zero divisors are free on the first s-1 coordinates.
  const auto divisors = elementary_divisors(basis.col_block(0, s - 1));
  if (divisors.size() != s - 1)
    throw InvariantBreach("principal lattice is not of full rank in degree zero");
  std::vector<BigInt> out;
  for (const auto& d : divisors)
    if (d != 1) out.push_back(d);
  return out;
}

}  // namespace eislab
