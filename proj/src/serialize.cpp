#include "eislab/serialize.hpp"

#include <sstream>

namespace eislab {

Json to_json(const BigInt& x) {
  if (fits_int64(x)) return to_int64(x);
  return x.get_str();
}

Json to_json(const BigRational& x) {
  if (x.get_den() == 1) return to_json(BigInt(x.get_num()));
  return x.get_str();
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    BigInt x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InvalidInput("not an integer: " + j.dump());
    return x;
  }
  throw InvalidInput("not an integer: " + j.dump());
}

namespace {

Json array_of(std::span<const BigInt> xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(array_of(m.row(i)));
  return rows;
}

}  // namespace

Json to_json(const OrderResult& r) {
  Json j;
  j["N"] = r.n;
  j["M"] = r.m;
  j["order"] = to_json(r.closed_form_order);
  j["h"] = r.h;
  if (r.oracle_order) j["oracle_order"] = to_json(*r.oracle_order);
  if (r.agreed) j["agreed"] = *r.agreed;
  if (r.outside_hypothesis) j["outside_hypothesis"] = true;
  return j;
}

Json to_json(const QExpansion& f) {
  Json j;
  j["precision"] = f.precision();
  j["modulus"] = to_json(f.modulus());
  j["coefficients"] = array_of(f.coeffs());
  return j;
}

Json to_json(const ResidueReport& r) {
  Json j;
  j["cusp"] = "P_" + std::to_string(r.cusp.value());
  j["formula"] = to_string(r.kind);
  if (r.prime) j["p"] = r.prime;
  j["value"] = to_json(r.value);
  return j;
}

Json to_json(const EigenCheck& c) {
  Json j;
  j["operator"] = c.op;
  j["eigenvalue"] = to_json(c.eigenvalue);
  j["usable_precision"] = c.usable_precision;
  j["holds"] = c.holds;
  return j;
}

Json to_json(const IdentityCheck& c) {
  Json j;
  j["precision"] = c.precision;
  j["holds"] = c.holds;
  if (c.first_failure) j["first_failure"] = *c.first_failure;
  return j;
}

Json to_json(const HeckeRingModel& m) {
  Json j;
  j["N"] = m.level();
  j["genus"] = m.genus;
  j["sturm_bound"] = m.sturm_bound;
  j["rank"] = m.rank();
  j["basis"] = matrix_json(m.basis);
  return j;
}

Json to_json(const EisensteinIdealModel& m) {
  Json j;
  j["N"] = m.n;
  if (m.m) j["M"] = m.m;
  else j["M"] = nullptr;
  j["index"] = to_json(m.index);
  j["zero_ring"] = m.zero_ring;
  j["cyclic"] = m.cyclic;
  j["quotient_invariants"] = array_of(m.quotient_invariants);
  j["generators"] = m.generator_labels;
  Json log = Json::array();
  for (const auto& s : m.stabilization)
    log.push_back({{"prime_bound", s.prime_bound}, {"index", to_json(s.index)}});
  j["stabilization"] = log;
  return j;
}

Json to_json(const IndexComparisonReport& r) {
  Json j;
  j["N"] = r.n;
  j["M"] = r.m;
  j["index"] = to_json(r.index);
  j["order"] = to_json(r.cusp_order);
  j["h"] = r.h;
  j["exact_required"] = r.exact_required;
  j["verdict"] = to_string(r.verdict);
  j["consistent"] = r.consistent;
  j["alpha_below_beta"] = r.alpha_below_beta;
  Json ex = Json::array();
  for (const auto& e : r.exponents) ex.push_back({{"ell", e.ell}, {"alpha", e.alpha}, {"beta", e.beta}});
  j["exponents"] = ex;
  return j;
}

Json to_json(const MaximalIdealRecord& r) {
  Json j;
  j["ell"] = r.ell;
  j["M"] = r.m;
  j["normalized"] = r.normalized;
  Json ev = Json::object();
  for (const auto& [p, u] : r.up_eigenvalues) ev[std::to_string(p)] = u;
  j["U_p_mod_m"] = ev;
  return j;
}

Json to_json(const MaximalIdealSurvey& s) {
  Json j;
  j["N"] = s.n;
  j["genus"] = s.genus;
  Json idx = Json::array();
  for (const auto& i : s.ideals) idx.push_back({{"M", i.m}, {"index", to_json(i.index)}, {"cyclic", i.cyclic}});
  j["indices"] = idx;
  j["index_I0"] = to_json(s.i0.index);
  Json recs = Json::array();
  for (const auto& r : s.records) recs.push_back(to_json(r));
  j["records"] = recs;
  Json dich = Json::array();
  for (const auto& d : s.dichotomy) dich.push_back({{"ell", d.ell}, {"p", d.p}, {"holds", d.holds}});
  j["up_dichotomy"] = dich;
  j["nonmaximal_holds"] = s.nonmaximal_holds;
  if (!s.nonmaximal_failures.empty()) j["nonmaximal_failures"] = s.nonmaximal_failures;
  j["reappearance_holds"] = s.reappearance_holds;
  return j;
}

Json to_json(const MainTheoremReport& r) {
  Json j;
  j["N"] = r.n;
  j["holds"] = r.holds;
  Json cases = Json::array();
  for (const auto& c : r.cases)
    cases.push_back({{"ell", c.ell}, {"M", c.m}, {"rule", c.rule}, {"holds", c.holds}, {"detail", c.detail}});
  j["cases"] = cases;
  return j;
}

namespace {

struct Columns {
  bool oracle = false, index = false;
};

Columns columns_of(const std::vector<TableRow>& rows) {
  Columns c;
  if (!rows.empty()) {
    c.oracle = rows.front().oracle_order.has_value();
    c.index = rows.front().index.has_value();
  }
  for (const auto& r : rows)
    if (r.oracle_order.has_value() != c.oracle || r.index.has_value() != c.index ||
        r.verdict.has_value() != c.index)
      throw InvalidInput("table rows carry different optional columns");
  return c;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

BigInt parse_int(const std::string& s) {
  BigInt x;
  if (s.empty() || x.set_str(s, 10) != 0) throw InvalidInput("bad integer field '" + s + "'");
  return x;
}

std::uint64_t parse_u64(const std::string& s) {
  const BigInt x = parse_int(s);
  if (x < 0 || !fits_int64(x)) throw InvalidInput("bad level field '" + s + "'");
  return static_cast<std::uint64_t>(to_int64(x));
}

}  // namespace

std::string table_csv(const std::vector<TableRow>& rows) {
  const Columns c = columns_of(rows);
  std::ostringstream out;
  out << "N,M,order,h";
  if (c.oracle) out << ",oracle_order";
  if (c.index) out << ",index,verdict";
  out << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << r.m << ',' << r.order << ',' << r.h;
    if (c.oracle) out << ',' << *r.oracle_order;
    if (c.index) out << ',' << *r.index << ',' << *r.verdict;
    out << '\n';
  }
  return out.str();
}

Json table_json(const std::vector<TableRow>& rows) {
  columns_of(rows);
  Json a = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["N"] = r.n;
    j["M"] = r.m;
    j["order"] = to_json(r.order);
    j["h"] = r.h;
    if (r.oracle_order) j["oracle_order"] = to_json(*r.oracle_order);
    if (r.index) j["index"] = to_json(*r.index);
    if (r.verdict) j["verdict"] = *r.verdict;
    a.push_back(std::move(j));
  }
  return a;
}

std::string table_text(const std::vector<TableRow>& rows) {
  const Columns c = columns_of(rows);
  std::ostringstream out;
  for (const auto& r : rows) {
    out << "N=" << r.n << " M=" << r.m << " order=" << r.order << " h=" << r.h;
    if (c.oracle) out << " oracle_order=" << *r.oracle_order;
    if (c.index) out << " index=" << *r.index << " verdict=" << *r.verdict;
    out << '\n';
  }
  return out.str();
}

std::vector<TableRow> table_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty CSV");
  const auto header = split(line, ',');
  Columns c;
  if (header == std::vector<std::string>{"N", "M", "order", "h"}) {
  } else if (header == std::vector<std::string>{"N", "M", "order", "h", "oracle_order"}) {
    c.oracle = true;
  } else if (header == std::vector<std::string>{"N", "M", "order", "h", "index", "verdict"}) {
    c.index = true;
  } else if (header == std::vector<std::string>{"N", "M", "order", "h", "oracle_order", "index",
                                                "verdict"}) {
    c.oracle = c.index = true;
  } else {
    throw InvalidInput("unexpected CSV header: " + line);
  }
  const std::size_t width = 4 + (c.oracle ? 1 : 0) + (c.index ? 2 : 0);
  std::vector<TableRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != width) throw InvalidInput("CSV row has " + std::to_string(f.size()) + " fields");
    TableRow r;
    r.n = parse_u64(f[0]);
    r.m = parse_u64(f[1]);
    r.order = parse_int(f[2]);
    r.h = static_cast<int>(parse_u64(f[3]));
    std::size_t k = 4;
    if (c.oracle) r.oracle_order = parse_int(f[k++]);
    if (c.index) {
      r.index = parse_int(f[k++]);
      r.verdict = f[k++];
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<TableRow> table_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("table JSON must be an array");
  std::vector<TableRow> rows;
  for (const Json& o : j) {
    TableRow r;
    r.n = o.at("N").get<std::uint64_t>();
    r.m = o.at("M").get<std::uint64_t>();
    r.order = bigint_from_json(o.at("order"));
    r.h = o.at("h").get<int>();
    if (o.contains("oracle_order")) r.oracle_order = bigint_from_json(o["oracle_order"]);
    if (o.contains("index")) r.index = bigint_from_json(o["index"]);
    if (o.contains("verdict")) r.verdict = o["verdict"].get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace eislab
