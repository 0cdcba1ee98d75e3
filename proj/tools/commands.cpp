#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

namespace eislab::cli {

namespace {

unsigned default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, count) on a pool of workers; results are stored
// by position so the output order does not depend on scheduling.
template <typename T>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, const std::function<T(std::size_t)>& fn) {
  std::vector<T> results(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::vector<std::uint64_t> levels_between(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) return {};
  return square_free_range(lo, hi);
}

// Divisors M != 1 of N in the divisor-table order.
std::vector<std::uint64_t> nontrivial_divisors(const SquareFreeLevel& level) {
  std::vector<std::uint64_t> out;
  const DivisorTable table(level);
  for (const Divisor& d : table.divisors())
    if (d.value() != 1) out.push_back(d.value());
  return out;
}

std::uint64_t raised_cap(std::uint64_t base, std::uint64_t flag_cap, std::ostream& err) {
  std::uint64_t cap = base;
  if (const char* env = std::getenv("EISLAB_MAX_LEVEL")) {
    try {
      cap = std::max<std::uint64_t>(cap, std::stoull(env));
    } catch (const std::exception&) {
      throw InvalidInput(std::string("EISLAB_MAX_LEVEL is not a number: ") + env);
    }
  }
  cap = std::max(cap, flag_cap);
  if (cap > base) err << "warning: level cap raised from " << base << " to " << cap << "\n";
  return cap;
}

void check_cap(std::uint64_t level, std::uint64_t cap) {
  if (level > cap)
    throw InvalidInput("level " + std::to_string(level) + " exceeds the cap " + std::to_string(cap) +
                       " (raise with --cap or EISLAB_MAX_LEVEL)");
}

SquareFreeLevel parse_level(std::uint64_t n) {
  if (n == 0) throw InvalidInput("level must be positive");
  return SquareFreeLevel::from_value(n);
}

void require_m(const SquareFreeLevel& level, std::uint64_t m, bool allow_one) {
  if (!level.divides(m))
    throw InvalidInput("M = " + std::to_string(m) + " does not divide N = " +
                       std::to_string(level.value()));
  if (m == 1 && !allow_one) throw InvalidInput("M must be different from 1");
}

std::shared_ptr<const ManinSymbolSpace> build_space(std::uint64_t n, std::uint64_t cap) {
  return std::make_shared<const ManinSymbolSpace>(ManinSymbolSpace::build(parse_level(n), cap));
}

bool is_modsym_suite(const std::string& s) {
  return s == "index-vs-order" || s == "nonmaximal" || s == "main-theorem";
}

std::uint64_t default_suite_level(const std::string& s) {
  if (s == "lattice-oracle") return 210;
  if (s == "eigenform" || s == "qidentity") return 100;
  return 70;
}

// ---- suites: each maps one level to its list of case objects ----

using CaseList = std::vector<Json>;

CaseList lattice_oracle_cases(std::uint64_t n) {
  const SquareFreeLevel level = parse_level(n);
  const EtaLattice lattice = build_eta_lattice(level);
  CaseList out;
  for (std::uint64_t m : nontrivial_divisors(level)) {
    OrderResult r = order_closed_form(level, m);
    r.oracle_order = order_lattice_oracle(lattice, cuspidal_class(level, m));
    r.agreed = *r.oracle_order == r.closed_form_order;
    Json j = to_json(r);
    j["holds"] = *r.agreed;
    out.push_back(std::move(j));
  }
  return out;
}

CaseList eigenform_cases(std::uint64_t n) {
  const SquareFreeLevel level = parse_level(n);
  CaseList out;
  for (std::uint64_t m : nontrivial_divisors(level)) {
    const auto checks = check_eigenform(level, m, kDefaultPrecision, 20);
    Json j{{"N", n}, {"M", m}, {"precision", kDefaultPrecision}};
    Json ops = Json::array();
    bool ok = true;
    for (const auto& c : checks) {
      ops.push_back(to_json(c));
      ok = ok && c.holds;
    }
    j["checks"] = ops;
    j["holds"] = ok;
    out.push_back(std::move(j));
  }
  return out;
}

CaseList qidentity_cases(std::uint64_t n) {
  const SquareFreeLevel level = parse_level(n);
  CaseList out;
  for (std::uint64_t p : level.primes()) {
    if (n / p == 1) continue;
    Json j = to_json(level_lowering_identity_check(level, p, 500));
    j = Json{{"N", n}, {"p", p}, {"precision", j["precision"]}, {"holds", j["holds"]}};
    out.push_back(std::move(j));
  }
  return out;
}

CaseList index_vs_order_cases(std::uint64_t n, std::uint64_t cap) {
  const HeckeRingModel ring = hecke_ring(build_space(n, cap));
  CaseList out;
  if (ring.genus == 0) return out;
  for (std::uint64_t m : nontrivial_divisors(parse_level(n))) {
    const EisensteinIdealModel ideal = eisenstein_index(ring, m);
    const IndexComparisonReport rep = compare_index_order(ideal);
    Json j = to_json(rep);
    j["cyclic"] = ideal.cyclic;
    j["holds"] = rep.consistent && !rep.alpha_below_beta && ideal.cyclic;
    out.push_back(std::move(j));
  }
  return out;
}

CaseList nonmaximal_cases(std::uint64_t n, std::uint64_t cap) {
  const HeckeRingModel ring = hecke_ring(build_space(n, cap));
  const MaximalIdealSurvey survey = enumerate_eisenstein_maximal(ring);
  const EisensteinIdealModel& i1 = survey.ideal(1);
  Json j{{"N", n}, {"genus", survey.genus}, {"index_I1", to_json(i1.index)}};
  if (!survey.nonmaximal_failures.empty()) j["failures"] = survey.nonmaximal_failures;
  j["holds"] = survey.nonmaximal_holds;
  return {j};
}

CaseList main_theorem_cases(std::uint64_t n, std::uint64_t cap) {
  const HeckeRingModel ring = hecke_ring(build_space(n, cap));
  const MaximalIdealSurvey survey = enumerate_eisenstein_maximal(ring);
  Json j = to_json(verify_main_theorem(survey));
  Json recs = Json::array();
  for (const auto& r : survey.records) recs.push_back(to_json(r));
  j["records"] = recs;
  return {j};
}

// ---- rendering helpers ----

std::string render_order(const OrderResult& r) {
  std::ostringstream s;
  s << "N=" << r.n << " M=" << r.m << " order=" << r.closed_form_order << " h=" << r.h;
  if (r.oracle_order) s << " oracle_order=" << *r.oracle_order << " agreed=" << (*r.agreed ? "true" : "false");
  return s.str();
}

void emit(std::ostream& out, const std::string& format, const Json& j, const std::string& text) {
  if (format == "json") out << j.dump(2) << "\n";
  else out << text;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lattice-oracle", "eigenform",  "qidentity",
                                              "index-vs-order", "nonmaximal", "main-theorem"};
  return names;
}

std::vector<TableRow> build_table(std::uint64_t max_level, bool with_oracle, bool with_index,
                                  unsigned jobs) {
  const auto levels = levels_between(7, max_level);
  const auto per_level = parallel_map<std::vector<TableRow>>(
      levels.size(), jobs, [&](std::size_t i) {
        const SquareFreeLevel level = parse_level(levels[i]);
        std::vector<TableRow> rows;
        std::optional<EtaLattice> lattice;
        if (with_oracle) lattice = build_eta_lattice(level);
        std::optional<HeckeRingModel> ring;
        if (with_index)
          ring = hecke_ring(build_space(level.value(), std::max(kModSymDeskBound, max_level)));
        for (std::uint64_t m : nontrivial_divisors(level)) {
          const OrderResult r = order_closed_form(level, m);
          TableRow row{level.value(), m, r.closed_form_order, r.h, {}, {}, {}};
          if (lattice) row.oracle_order = order_lattice_oracle(*lattice, cuspidal_class(level, m));
          if (ring) {
            const IndexComparisonReport rep = compare_index_order(*ring, m);
            row.index = rep.index;
            row.verdict = to_string(rep.verdict);
          }
          rows.push_back(std::move(row));
        }
        return rows;
      });
  std::vector<TableRow> out;
  for (const auto& rows : per_level) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

SuiteResult run_suite(const std::string& suite, std::uint64_t max_level, unsigned jobs) {
  const bool modsym = is_modsym_suite(suite);
  std::function<CaseList(std::uint64_t)> fn;
  std::uint64_t lo = 2;
  const std::uint64_t desk = std::max(kModSymDeskBound, max_level);
  if (suite == "lattice-oracle") {
    fn = lattice_oracle_cases;
    lo = 7;
  } else if (suite == "eigenform") {
    fn = eigenform_cases;
  } else if (suite == "qidentity") {
    fn = qidentity_cases;
  } else if (suite == "index-vs-order") {
    fn = [desk](std::uint64_t n) { return index_vs_order_cases(n, desk); };
  } else if (suite == "nonmaximal") {
    fn = [desk](std::uint64_t n) { return nonmaximal_cases(n, desk); };
  } else if (suite == "main-theorem") {
    fn = [desk](std::uint64_t n) { return main_theorem_cases(n, desk); };
  } else {
    throw InvalidInput("unknown suite '" + suite + "'");
  }
  if (modsym) lo = 7;

  const auto levels = levels_between(lo, max_level);
  const auto per_level = parallel_map<CaseList>(levels.size(), jobs,
                                                [&](std::size_t i) { return fn(levels[i]); });
  SuiteResult result;
  result.suite = suite;
  result.max_level = max_level;
  result.levels = levels.size();
  for (const auto& cases : per_level)
    for (const Json& c : cases) {
      if (!c.at("holds").get<bool>()) ++result.failures;
      result.cases.push_back(c);
    }
  return result;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cuspidal divisor orders, Eisenstein series and Eisenstein ideals for square-free levels",
               "eislab"};
  app.require_subcommand(1);
  std::uint64_t cap_flag = 0;
  unsigned jobs = default_jobs();
  app.add_option("--cap", cap_flag, "Raise the level caps to this value");
  app.add_option("--jobs", jobs, "Worker threads for sweeps")->check(CLI::Range(1u, 1024u));

  std::uint64_t level = 0, m = 0, max_level = 0;
  std::size_t precision = kDefaultPrecision;
  std::string format = "text", suite, log_path, modulus = "0";
  bool oracle = false, index = false;

  auto* cusp = app.add_subcommand("cusp-order", "Order of the cuspidal divisor C_{M,N}");
  cusp->add_option("--level", level, "Square-free level N")->required();
  cusp->add_option("--m", m, "Divisor M != 1 of N")->required();
  cusp->add_flag("--oracle", oracle, "Also run the eta-quotient lattice oracle");
  cusp->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* table = app.add_subcommand("table", "Orders for every square-free 6 < N <= max level");
  table->add_option("--max-level", max_level, "Largest level")->required()->check(CLI::PositiveNumber);
  table->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
  table->add_flag("--oracle", oracle, "Add the lattice-oracle order column");
  table->add_flag("--index", index, "Add the Eisenstein index and verdict columns");

  auto* eis = app.add_subcommand("eis", "q-expansion of the weight 2 series E_{M,N}");
  eis->add_option("--level", level)->required();
  eis->add_option("--m", m)->required();
  eis->add_option("--prec", precision, "Number of coefficients")->check(CLI::Range(2ul, 100000ul));
  eis->add_option("--modulus", modulus, "Reduce coefficients modulo this integer (0: none)");
  eis->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* res = app.add_subcommand("residues", "Closed-form residues of E_{M,N}");
  res->add_option("--level", level)->required();
  res->add_option("--m", m)->required();
  res->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* hidx = app.add_subcommand("hecke-index", "Index of the Eisenstein ideal I_{M,N}");
  hidx->add_option("--level", level)->required();
  hidx->add_option("--m", m, "Divisor of N (1 allowed)")->required();
  hidx->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* maxi = app.add_subcommand("maximal-ideals", "Eisenstein maximal ideals of level N");
  maxi->add_option("--level", level)->required();
  maxi->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--max-level", max_level, "Largest level (default depends on the suite)");
  verify->add_option("--log", log_path, "Write the per-case JSON log to this file");
  verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (cusp->parsed()) {
      const SquareFreeLevel lv = parse_level(level);
      check_cap(level, raised_cap(kLatticeCap, cap_flag, err));
      require_m(lv, m, false);
      const OrderResult r = oracle ? order_with_oracle(lv, m) : order_closed_form(lv, m);
      if (r.outside_hypothesis) err << "note: N <= 6 lies outside the standing hypothesis N > 6\n";
      emit(out, format, to_json(r), render_order(r) + "\n");
      return r.agreed.value_or(true) ? kExitOk : kExitAssertion;
    }

    if (table->parsed()) {
      if (format == "text" && table->count("--format") == 0) format = "csv";
      check_cap(max_level, raised_cap(index ? kModSymSuiteCap : kLatticeCap, cap_flag, err));
      err << "# eislab table max-level=" << max_level << (oracle ? " oracle" : "")
          << (index ? " index" : "") << "\n";
      const auto rows = build_table(max_level, oracle, index, jobs);
      if (format == "csv") out << table_csv(rows);
      else if (format == "json") out << table_json(rows).dump(2) << "\n";
      else out << table_text(rows);
      bool ok = true;
      for (const auto& r : rows) {
        if (r.oracle_order && *r.oracle_order != r.order) ok = false;
        if (r.verdict && *r.verdict == to_string(Verdict::kViolation)) ok = false;
      }
      return ok ? kExitOk : kExitAssertion;
    }

    if (eis->parsed()) {
      const SquareFreeLevel lv = parse_level(level);
      check_cap(level, raised_cap(kLatticeCap, cap_flag, err));
      require_m(lv, m, true);
      BigInt mod;
      if (mod.set_str(modulus, 10) != 0 || mod < 0) throw InvalidInput("bad --modulus '" + modulus + "'");
      QExpansion f = eisenstein_series(lv, m, precision);
      if (mod != 0) f = f.reduce(mod);
      Json j{{"N", level}, {"M", m}};
      j.update(to_json(f));
      std::ostringstream text;
      text << "N=" << level << " M=" << m << " precision=" << precision;
      if (mod != 0) text << " modulus=" << mod;
      text << "\n";
      for (std::size_t i = 0; i < f.precision(); ++i) text << (i ? " " : "") << f[i];
      text << "\n";
      emit(out, format, j, text.str());
      return kExitOk;
    }

    if (res->parsed()) {
      const SquareFreeLevel lv = parse_level(level);
      check_cap(level, raised_cap(kLatticeCap, cap_flag, err));
      require_m(lv, m, false);
      Json arr = Json::array();
      std::ostringstream text;
      for (const ResidueReport& r : residues(lv, m)) {
        arr.push_back(to_json(r));
        text << "Res_{P_" << r.cusp.value() << "}(E_{" << m << "," << level << "}) = " << r.value
             << "  [" << to_string(r.kind) << "]\n";
      }
      emit(out, format, Json{{"N", level}, {"M", m}, {"residues", arr}}, text.str());
      return kExitOk;
    }

    if (hidx->parsed()) {
      const SquareFreeLevel lv = parse_level(level);
      const std::uint64_t cap = raised_cap(kModSymDeskBound, cap_flag, err);
      check_cap(level, cap);
      require_m(lv, m, true);
      const HeckeRingModel ring = hecke_ring(build_space(level, cap));
      const EisensteinIdealModel ideal = eisenstein_index(ring, m);
      Json j = to_json(ideal);
      std::ostringstream text;
      text << "N=" << level << " M=" << m << " genus=" << ring.genus << " t=" << ideal.index
           << " cyclic=" << (ideal.cyclic ? "yes" : "no");
      if (ideal.zero_ring) text << " (zero ring)";
      int code = ideal.cyclic ? kExitOk : kExitAssertion;
      if (m != 1) {
        const IndexComparisonReport rep = compare_index_order(ideal);
        j["comparison"] = to_json(rep);
        text << " order=" << rep.cusp_order << " verdict=" << to_string(rep.verdict);
        if (!rep.consistent || rep.alpha_below_beta) code = kExitAssertion;
      }
      text << "\n";
      emit(out, format, j, text.str());
      return code;
    }

    if (maxi->parsed()) {
      parse_level(level);
      const std::uint64_t cap = raised_cap(kModSymDeskBound, cap_flag, err);
      check_cap(level, cap);
      const HeckeRingModel ring = hecke_ring(build_space(level, cap));
      const MaximalIdealSurvey survey = enumerate_eisenstein_maximal(ring);
      const MainTheoremReport mt = verify_main_theorem(survey);
      Json j = to_json(survey);
      j["main_theorem"] = to_json(mt);
      std::ostringstream text;
      text << "N=" << level << " genus=" << survey.genus << " index(I_0)=" << survey.i0.index << "\n";
      for (const auto& i : survey.ideals) text << "  t(M=" << i.m << ")=" << i.index << "\n";
      for (const auto& r : survey.records) {
        text << "  maximal ideal: ell=" << r.ell << " M=" << r.m;
        for (const auto& [p, u] : r.up_eigenvalues) text << " U_" << p << "=" << u;
        text << "\n";
      }
      bool dich = true;
      for (const auto& d : survey.dichotomy) dich = dich && d.holds;
      text << "  U_p dichotomy: " << (dich ? "holds" : "FAILS") << "\n";
      text << "  I_{1,N} non-maximality: " << (survey.nonmaximal_holds ? "holds" : "FAILS") << "\n";
      text << "  main theorem: " << (mt.holds ? "holds" : "FAILS") << "\n";
      emit(out, format, j, text.str());
      const bool ok = dich && survey.nonmaximal_holds && survey.reappearance_holds && mt.holds;
      return ok ? kExitOk : kExitAssertion;
    }

    if (verify->parsed()) {
      if (max_level == 0) max_level = default_suite_level(suite);
      check_cap(max_level, raised_cap(is_modsym_suite(suite) ? kModSymSuiteCap : kLatticeCap,
                                      cap_flag, err));
      err << "# eislab verify suite=" << suite << " max-level=" << max_level << "\n";
      const SuiteResult r = run_suite(suite, max_level, jobs);
      Json log = Json::array();
      for (const auto& c : r.cases) log.push_back(c);
      if (!log_path.empty()) {
        std::ofstream f(log_path);
        if (!f) throw InvalidInput("cannot write log file " + log_path);
        f << log.dump(2) << "\n";
      }
      Json summary{{"suite", r.suite},       {"max_level", r.max_level}, {"levels", r.levels},
                   {"cases", r.cases.size()}, {"failures", r.failures},   {"passed", r.passed()}};
      std::ostringstream text;
      for (const auto& c : r.cases)
        if (!c.at("holds").get<bool>()) text << "FAIL " << c.dump() << "\n";
      text << "suite=" << r.suite << " max-level=" << r.max_level << " levels=" << r.levels
           << " cases=" << r.cases.size() << " failures=" << r.failures << " "
           << (r.passed() ? "PASS" : "FAIL") << "\n";
      if (format == "json") summary["log"] = log;
      emit(out, format, summary, text.str());
      return r.passed() ? kExitOk : kExitAssertion;
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvariantBreach& e) {
    err << "invariant failure: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitUsage;
}

}  // namespace eislab::cli
