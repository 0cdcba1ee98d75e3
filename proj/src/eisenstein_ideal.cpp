#include <algorithm>
#include <numeric>
#include <sstream>

#include "eislab/cuspgroup.hpp"
#include "eislab/modsym.hpp"

namespace eislab {

namespace {

BigInt ui(std::uint64_t x) { return BigInt(static_cast<unsigned long>(x)); }

// Primes past the generator bound are added until the index has been
// unchanged twice; past this the index is declared infinite.
constexpr std::uint64_t kGeneratorPrimeCeiling = 2000;

std::uint64_t next_prime(std::uint64_t r) {
  do ++r;
  while (!is_prime(r));
  return r;
}

IntMatrix scalar_matrix(std::size_t r, const BigInt& k) {
  IntMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i) m(i, i) = k;
  return m;
}

// Z-span of {b * g} for ring basis elements b and generators g, in ring
// coordinates.
class IdealBuilder {
 public:
  explicit IdealBuilder(const HeckeRingModel& ring) : ring_(ring) {
    for (std::size_t i = 0; i < ring.rank(); ++i) {
      std::vector<BigInt> e(ring.rank());
      e[i] = 1;
      elements_.push_back(ring.element(e));
    }
    hnf_ = IntMatrix(0, ring.rank());
  }

  void add(const IntMatrix& generator) {
    IntMatrix rows = hnf_;
    for (const IntMatrix& b : elements_) {
      auto c = ring_.coordinates(b * generator);
      if (!c) throw InvariantBreach("Hecke ring is not closed under multiplication");
      rows.append_row(*c);
    }
    hnf_ = hermite_normal_form(rows);
  }

  const IntMatrix& basis() const { return hnf_; }

  /// 0 when the ideal has lower rank than the ring.
  BigInt index() const {
    if (hnf_.rows() < ring_.rank()) return 0;
    return abs(determinant(hnf_));
  }

 private:
  const HeckeRingModel& ring_;
  std::vector<IntMatrix> elements_;
  IntMatrix hnf_;
};

EisensteinIdealModel build_ideal(const HeckeRingModel& ring, std::uint64_t m, bool with_up) {
  const SquareFreeLevel& level = ring.ops->space().level();
  const std::uint64_t n = level.value();
  if (with_up && !level.divides(m))
    throw InvalidInput("M = " + std::to_string(m) + " does not divide N = " + std::to_string(n));

  EisensteinIdealModel model;
  model.n = n;
  model.m = with_up ? m : 0;
  const std::size_t r = ring.ops->space().cuspidal_rank();
  std::vector<std::pair<std::string, std::uint64_t>> up_gens;  // label, eigenvalue
  if (with_up)
    for (std::uint64_t p : level.primes()) {
      const std::uint64_t ev = m % p == 0 ? 1 : p;
      up_gens.emplace_back("U_" + std::to_string(p) + " - " + std::to_string(ev), ev);
    }
  for (const auto& g : up_gens) model.generator_labels.push_back(g.first);

  auto t_label = [](std::uint64_t q) {
    return "T_" + std::to_string(q) + " - " + std::to_string(q + 1);
  };
  if (ring.zero_ring()) {
    model.zero_ring = true;
    model.index = 1;
    return model;
  }

  IdealBuilder builder(ring);
  if (with_up) {
    std::size_t i = 0;
    for (std::uint64_t p : level.primes()) {
      builder.add(ring.ops->prime(p) - scalar_matrix(r, ui(up_gens[i++].second)));
    }
  }
  auto add_t = [&](std::uint64_t q) {
    builder.add(ring.ops->prime(q) - scalar_matrix(r, ui(q + 1)));
    model.generator_labels.push_back(t_label(q));
  };
  std::uint64_t bound = ring.sturm_bound;
  for (std::uint64_t q = 2; q <= bound; ++q)
    if (is_prime(q) && n % q != 0) add_t(q);
  BigInt t = builder.index();
  model.stabilization.push_back({bound, t});
  int unchanged = 0;
  while (unchanged < 2) {
    do bound = next_prime(bound);
    while (n % bound == 0);
    if (bound > kGeneratorPrimeCeiling) {
      std::ostringstream msg;
      msg << "Eisenstein ideal of level " << n << ", M = " << m
          << " has rank " << builder.basis().rows() << " < " << ring.rank()
          << " after all T_r with r <= " << kGeneratorPrimeCeiling << " (infinite index)";
      throw InvariantBreach(msg.str());
    }
    add_t(bound);
    const BigInt next = builder.index();
    model.stabilization.push_back({bound, next});
    unchanged = (next == t && next != 0) ? unchanged + 1 : 0;
    t = next;
  }

  model.ideal_basis = builder.basis();
  model.index = t;
  for (const BigInt& d : elementary_divisors(model.ideal_basis))
    if (d != 1) model.quotient_invariants.push_back(d);
  model.cyclic = model.quotient_invariants.size() <= 1;
  return model;
}

// Basis of ell*T + I in ring coordinates.
IntMatrix reduce_mod(const EisensteinIdealModel& ideal, std::size_t rank, std::uint64_t ell) {
  IntMatrix rows = ideal.ideal_basis;
  for (std::size_t i = 0; i < rank; ++i) {
    std::vector<BigInt> e(rank);
    e[i] = ui(ell);
    rows.append_row(e);
  }
  return hermite_normal_form(rows);
}

std::vector<BigInt> coords_or_throw(const HeckeRingModel& ring, const IntMatrix& op) {
  auto c = ring.coordinates(op);
  if (!c) throw InvariantBreach("Hecke operator outside the Hecke ring lattice");
  return *c;
}

bool in_lattice(const IntMatrix& basis, const std::vector<BigInt>& v) {
  return lattice_coordinates(basis, v).has_value();
}

}  // namespace

EisensteinIdealModel eisenstein_index(const HeckeRingModel& ring, std::uint64_t m) {
  return build_ideal(ring, m, true);
}

EisensteinIdealModel eisenstein_index_i0(const HeckeRingModel& ring) {
  return build_ideal(ring, 0, false);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kEqual: return "equal";
    case Verdict::kEqualUpToTwo: return "equal-up-to-2-power";
    case Verdict::kViolation: return "violation";
  }
  return "?";
}

IndexComparisonReport compare_index_order(const EisensteinIdealModel& ideal) {
  if (ideal.m == 0) throw InvalidInput("comparison needs an ideal I_{M,N}");
  const SquareFreeLevel level = SquareFreeLevel::from_value(ideal.n);
  const OrderResult order = order_closed_form(level, ideal.m);
  IndexComparisonReport rep;
  rep.n = ideal.n;
  rep.m = ideal.m;
  rep.index = ideal.index;
  rep.cusp_order = order.closed_form_order;
  rep.h = order.h;
  rep.exact_required = ideal.m != ideal.n && (ideal.n / ideal.m) % 2 == 1;
  for (std::uint64_t ell : prime_factors(rep.index * rep.cusp_order)) {
    PrimeExponents e{ell, valuation(rep.index, ell), valuation(rep.cusp_order, ell)};
    if (ell != 2 && e.alpha < e.beta) rep.alpha_below_beta = true;
    rep.exponents.push_back(e);
  }
  const bool odd_equal = odd_part(rep.index) == odd_part(rep.cusp_order);
  if (rep.index == rep.cusp_order) rep.verdict = Verdict::kEqual;
  else if (odd_equal) rep.verdict = Verdict::kEqualUpToTwo;
  else rep.verdict = Verdict::kViolation;
  rep.consistent = rep.exact_required ? rep.index == rep.cusp_order : odd_equal;
  return rep;
}

IndexComparisonReport compare_index_order(const HeckeRingModel& ring, std::uint64_t m) {
  return compare_index_order(eisenstein_index(ring, m));
}

const EisensteinIdealModel& MaximalIdealSurvey::ideal(std::uint64_t m) const {
  for (const auto& i : ideals)
    if (i.m == m) return i;
  throw InvalidInput("no ideal recorded for M = " + std::to_string(m));
}

MaximalIdealSurvey enumerate_eisenstein_maximal(const HeckeRingModel& ring) {
  const SquareFreeLevel& level = ring.ops->space().level();
  const std::uint64_t n = level.value();
  MaximalIdealSurvey survey;
  survey.n = n;
  survey.genus = ring.genus;
  const DivisorTable table(level);
  for (const Divisor& d : table.divisors()) survey.ideals.push_back(eisenstein_index(ring, d.value()));
  survey.i0 = eisenstein_index_i0(ring);
  if (ring.zero_ring()) return survey;

  const std::size_t rank = ring.rank();
  const std::size_t r = ring.ops->space().cuspidal_rank();
  const IntMatrix one = IntMatrix::identity(r);

  for (const EisensteinIdealModel& ideal : survey.ideals) {
    const std::uint64_t m = ideal.m;
    if (m == 1) continue;
    for (std::uint64_t ell : prime_factors(ideal.index)) {
      std::vector<std::uint64_t> bad_q;
      for (std::uint64_t q : level.primes())
        if (m % q != 0 && q % ell == 1) bad_q.push_back(q);
      if (!bad_q.empty()) {
        for (std::uint64_t q : bad_q)
          if (!mpz_divisible_ui_p(survey.ideal(m * q).index.get_mpz_t(), ell))
            survey.reappearance_holds = false;
        continue;
      }
      MaximalIdealRecord rec{ell, m, true, {}};
      const IntMatrix j = reduce_mod(ideal, rank, ell);
      for (std::uint64_t p : level.primes()) {
        const IntMatrix up = ring.ops->prime(p);
        std::optional<std::uint64_t> found;
        for (std::uint64_t u = 0; u < ell && !found; ++u)
          if (in_lattice(j, coords_or_throw(ring, up - scalar_matrix(r, ui(u))))) found = u;
        if (!found) throw InvariantBreach("U_p is not a scalar modulo an Eisenstein maximal ideal");
        rec.up_eigenvalues.emplace_back(p, *found);
      }
      survey.records.push_back(std::move(rec));
    }
  }

  // Nilpotence of (U_p - 1)(U_p - p) modulo (ell, I_0).
  for (std::uint64_t ell : prime_factors(survey.i0.index)) {
    const IntMatrix j = reduce_mod(survey.i0, rank, ell);
    const int a = valuation(abs(determinant(j)), ell);
    for (std::uint64_t p : level.primes()) {
      const IntMatrix up = ring.ops->prime(p);
      const IntMatrix y = (up - one) * (up - scalar_matrix(r, ui(p)));
      IntMatrix power = one;
      for (int i = 0; i < a; ++i) power = power * y;
      survey.dichotomy.push_back({ell, p, in_lattice(j, coords_or_throw(ring, power))});
    }
  }

  const EisensteinIdealModel& i1 = survey.ideal(1);
  for (std::uint64_t ell : prime_factors(i1.index)) {
    if (ell == 2) continue;
    const bool has_q = std::any_of(level.primes().begin(), level.primes().end(),
                                   [&](std::uint64_t q) { return q % ell == 1; });
    if (!has_q) {
      survey.nonmaximal_holds = false;
      survey.nonmaximal_failures.push_back("ell = " + std::to_string(ell) + " divides [T : I_{1," +
                                           std::to_string(n) + "}] = " + i1.index.get_str() +
                                           " but no q | N is 1 mod ell");
    }
  }
  return survey;
}

MainTheoremReport verify_main_theorem(const MaximalIdealSurvey& survey) {
  const std::uint64_t n = survey.n;
  const SquareFreeLevel level = SquareFreeLevel::from_value(n);
  MainTheoremReport rep;
  rep.n = n;
  auto order = [&](std::uint64_t m) { return order_closed_form(level, m).closed_form_order; };
  auto even = [](const BigInt& x) { return mpz_even_p(x.get_mpz_t()) != 0; };

  for (const MaximalIdealRecord& rec : survey.records) {
    MainTheoremCase c;
    c.ell = rec.ell;
    c.m = rec.m;
    std::ostringstream detail;
    if (rec.ell != 2) {
      const BigInt o = order(rec.m);
      c.rule = "odd ell divides |C_{M,N}|";
      c.holds = mpz_divisible_ui_p(o.get_mpz_t(), rec.ell) != 0;
      detail << "|C_{" << rec.m << "," << n << "}| = " << o;
    } else if (rec.m == n && level.omega() == 1) {
      c.rule = "N = M prime: M = 1 mod 8";
      c.holds = n % 8 == 1;
      detail << n << " mod 8 = " << n % 8;
    } else if (rec.m == n) {
      c.rule = "N = M composite: 2 divides |C_{p,N}|";
      std::vector<std::uint64_t> ps;
      if (n % 2 == 0) ps.push_back(2);
      else ps.assign(level.primes().begin(), level.primes().end());
      c.holds = true;
      for (std::uint64_t p : ps) {
        const BigInt o = order(p);
        detail << "|C_{" << p << "," << n << "}| = " << o << "; ";
        c.holds = c.holds && even(o);
      }
    } else if (2 * rec.m == n && is_prime(rec.m)) {
      c.rule = "N = 2M, M prime: M = 1 mod 8 and |C_{M,N}| = (M-1)/4";
      const BigInt o = order(rec.m);
      c.holds = rec.m % 8 == 1 && o * 4 == ui(rec.m - 1);
      detail << "M mod 8 = " << rec.m % 8 << ", |C_{M,N}| = " << o;
    } else if (2 * rec.m == n) {
      c.rule = "N = 2M, M composite: 2 divides |C_{p,N}| for p | M";
      c.holds = true;
      for (std::uint64_t p : level.primes()) {
        if (rec.m % p != 0) continue;
        const BigInt o = order(p);
        detail << "|C_{" << p << "," << n << "}| = " << o << "; ";
        c.holds = c.holds && even(o);
      }
    } else {
      c.rule = "ell = 2 with N/M neither 1 nor 2";
      c.holds = false;
      detail << "unexpected normalized record";
    }
    c.detail = detail.str();
    rep.holds = rep.holds && c.holds;
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

namespace {

using Poly = std::vector<BigInt>;  // coefficients from x^0 upward

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

// Division by a monic polynomial; nullopt when the remainder is nonzero.
std::optional<Poly> divide_monic(Poly a, const Poly& b) {
  trim(a);
  if (a.size() < b.size()) {
    if (a.empty()) return Poly{};
    return std::nullopt;
  }
  Poly q(a.size() - b.size() + 1);
  for (std::size_t i = q.size(); i-- > 0;) {
    const BigInt c = a[i + b.size() - 1];
    q[i] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
  }
  trim(a);
  if (!a.empty()) return std::nullopt;
  return q;
}

}  // namespace

OldRelationCheck check_up_old_relation(const HeckeOperators& level_n,
                                       const HeckeOperators& level_d, std::uint64_t p) {
  const std::uint64_t n = level_n.space().level().value();
  const std::uint64_t d = level_d.space().level().value();
  if (!is_prime(p) || n != p * d) throw InvalidInput("old relation check needs N = p * D");
  OldRelationCheck out;
  out.n = n;
  out.p = p;

  Poly chi_u = level_n.space().cuspidal_rank() ? charpoly(level_n.prime(p)) : Poly{1};
  Poly chi_t = level_d.space().cuspidal_rank() ? charpoly(level_d.prime(p)) : Poly{1};
  const std::size_t deg_t = chi_t.size() - 1;

  // x^{deg} chi_T(x + p/x) = sum_i c_i (x^2 + p)^i x^{deg - i}
  Poly old{};
  const Poly quad{ui(p), 0, 1};
  Poly quad_power{1};
  for (std::size_t i = 0; i <= deg_t; ++i) {
    Poly term = quad_power;
    term.insert(term.begin(), deg_t - i, BigInt(0));
    for (auto& c : term) c *= chi_t[i];
    if (old.size() < term.size()) old.resize(term.size());
    for (std::size_t j = 0; j < term.size(); ++j) old[j] += term[j];
    quad_power = mul(quad_power, quad);
  }
  trim(old);

  auto rest = divide_monic(chi_u, old);
  if (!rest) return out;
  Poly q = *rest;
  const Poly minus_one{-1, 1}, plus_one{1, 1};
  for (auto next = divide_monic(q, minus_one); next && q.size() > 1; next = divide_monic(q, minus_one)) {
    q = *next;
    ++out.plus_one;
  }
  for (auto next = divide_monic(q, plus_one); next && q.size() > 1; next = divide_monic(q, plus_one)) {
    q = *next;
    ++out.minus_one;
  }
  out.holds = q == Poly{1};
  return out;
}

}  // namespace eislab
