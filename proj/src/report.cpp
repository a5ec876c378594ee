#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "dyn/census.hpp"
#include "dyn/curves.hpp"

namespace dyn {

using json = nlohmann::ordered_json;

namespace {

double rat_d(const Rat& q) { return q.get_d(); }

json anomaly_json(const Anomaly& a) {
  return {{"c", a.c}, {"field", a.field}, {"kind", a.kind}, {"code", a.code}, {"vertices", a.vertices}};
}

}  // namespace

CompareReport compare_report(Label l, int degree, const std::vector<Int>& Bs, const ConstantsOptions& copt,
                             int workers) {
  if (Bs.empty()) throw std::invalid_argument("compare: empty list of bounds");
  if (degree != 1 && degree != 2) throw std::invalid_argument("compare: degree must be 1 or 2");
  CompareReport r;
  r.label = l;
  r.degree = degree;
  r.constant = degree == 1 ? leading_constant_deg1(l, copt) : leading_constant_deg2(l, copt);
  r.error_exponent = rat_d(r.constant.a) / 2;
  const Int Bmax = *std::max_element(Bs.begin(), Bs.end());
  CensusOptions opt;
  opt.workers = workers;
  if (l != Label::Empty) opt.labels = {l};

  std::vector<Deg1Hit> h1;
  std::vector<Deg2Hit> h2;
  const CensusMode mode = degree == 2 || Bmax >= 10 ? CensusMode::Parametrized : CensusMode::Exhaustive;
  if (degree == 1) h1 = census_deg1_hits(Bmax, mode, opt);
  else h2 = census_deg2_hits(Bmax, mode, opt);

  for (const Int& B : Bs) {
    CensusTable t = degree == 1 ? tabulate_deg1(h1, B, mode, opt) : tabulate_deg2(h2, B, mode, opt);
    const CensusRow* row = t.row(l);
    CompareRow cr;
    cr.B = B;
    cr.empirical = row ? row->count : Int(0);
    const double Bd = B.get_d();
    cr.predicted = r.constant.c.value * std::pow(Bd, rat_d(r.constant.a)) *
                   std::pow(std::log(Bd), rat_d(r.constant.b));
    cr.ratio = cr.predicted > 0 ? cr.empirical.get_d() / cr.predicted : NAN;
    cr.residual = cr.empirical.get_d() - cr.predicted;
    cr.scaled_residual = cr.residual / std::pow(Bd, r.error_exponent);
    r.rows.push_back(cr);
  }
  return r;
}

std::string census_tsv(const CensusTable& t) {
  std::ostringstream os;
  os << "label\tB\tdegree\tmode\tcount\tanomaly_count\n";
  for (const auto& r : t.rows)
    os << r.label.name() << '\t' << r.B << '\t' << r.degree << '\t' << mode_name(r.mode) << '\t' << r.count
       << '\t' << r.anomalies.size() << '\n';
  return os.str();
}

std::string census_json(const CensusTable& t) {
  json j;
  j["degree"] = t.degree;
  j["mode"] = mode_name(t.mode);
  j["B"] = t.B.get_str();
  if (t.degree == 1 && t.total != 0) j["total"] = t.total.get_str();
  j["rows"] = json::array();
  for (const auto& r : t.rows) {
    json row{{"label", r.label.name()},
             {"B", r.B.get_str()},
             {"degree", r.degree},
             {"mode", mode_name(r.mode)},
             {"count", r.count.get_str()},
             {"anomaly_count", r.anomalies.size()}};
    if (t.degree == 2) row["generic_k"] = r.generic_k.get_str();
    row["anomalies"] = json::array();
    for (const auto& a : r.anomalies) row["anomalies"].push_back(anomaly_json(a));
    j["rows"].push_back(row);
  }
  if (!t.notes.empty()) j["notes"] = t.notes;
  return j.dump(2) + "\n";
}

std::string compare_tsv(const CompareReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << "B\tempirical\tpredicted\tratio\tresidual\tscaled_residual\n";
  for (const auto& row : r.rows)
    os << row.B << '\t' << row.empirical << '\t' << row.predicted << '\t' << row.ratio << '\t' << row.residual
       << '\t' << row.scaled_residual << '\n';
  return os.str();
}

std::string compare_json(const CompareReport& r) {
  json j;
  j["label"] = label_name(r.label);
  j["degree"] = r.degree;
  j["constant"] = json::parse(constants_json(r.constant));
  j["error_exponent"] = r.error_exponent;
  j["rows"] = json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"B", row.B.get_str()},
                         {"empirical", row.empirical.get_str()},
                         {"predicted", row.predicted},
                         {"ratio", row.ratio},
                         {"residual", row.residual},
                         {"scaled_residual", row.scaled_residual}});
  return j.dump(2) + "\n";
}

Int parse_bound(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto digits = [](const std::string& x) {
    return !x.empty() && std::all_of(x.begin(), x.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
  };
  Int value;
  if (auto caret = s.find('^'); caret != std::string::npos) {
    std::string base = s.substr(0, caret), ex = s.substr(caret + 1);
    if (!digits(base) || !digits(ex) || ex.size() > 3) throw ParseError("bad bound: " + s);
    value = ipow(Int(base), std::stoul(ex));
  } else if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    std::string mant = s.substr(0, e), ex = s.substr(e + 1);
    if (!digits(ex) || ex.size() > 3) throw ParseError("bad bound: " + s);
    std::string intpart = mant, frac;
    if (auto dot = mant.find('.'); dot != std::string::npos) {
      intpart = mant.substr(0, dot);
      frac = mant.substr(dot + 1);
    }
    if (intpart.empty()) intpart = "0";
    if (!digits(intpart) || (!frac.empty() && !digits(frac))) throw ParseError("bad bound: " + s);
    const unsigned long k = std::stoul(ex);
    if (frac.size() > k) throw ParseError("bound is not an integer: " + s);
    value = Int(intpart + frac) * ipow(Int(10), k - frac.size());
  } else {
    if (!digits(s)) throw ParseError("bad bound: " + s);
    value = Int(s);
  }
  if (value < 1) throw ParseError("bound must be at least 1: " + s);
  return value;
}

}  // namespace dyn
