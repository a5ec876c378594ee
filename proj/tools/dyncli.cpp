// dyncli: portraits, censuses, leading constants, verification suites and
// comparison reports for z^2 + c.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dyn/census.hpp"
#include "dyn/constants.hpp"
#include "dyn/curves.hpp"
#include "dyn/dynatomic.hpp"
#include "dyn/preper.hpp"

using namespace dyn;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitIO = 3;
constexpr int kExitUnsupported = 4;

struct IOError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IOError("cannot write to stdout");
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw IOError("cannot open " + out);
  f << text;
  f.close();
  if (!f) throw IOError("cannot write " + out);
}

Label label_arg(const std::string& s) {
  try {
    return parse_label(s);
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::vector<Label> parse_labels(const std::string& s) {
  std::vector<Label> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(label_arg(item));
  return out;
}

std::vector<Int> parse_bounds(const std::string& s) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_bound(item));
  if (out.empty()) throw ParseError("no bounds given");
  return out;
}

// --- verify suites ------------------------------------------------------------

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

void suite_dynatomic(std::vector<Check>& out) {
  bool ok = true;
  for (int N = 1; N <= 6; ++N) {
    BivarPoly prod = BivarPoly::constant(1);
    for (int n = 1; n <= N; ++n)
      if (N % n == 0) prod = prod * dynatomic(n);
    if (!(prod == fc_iterate(N) - BivarPoly::var_z())) ok = false;
  }
  out.push_back({"dynatomic product identity N <= 6", ok, ""});
  ok = true;
  for (int N = 1; N <= 8; ++N)
    if (Int(dynatomic(N).deg_z()) != degree_D(N)) ok = false;
  out.push_back({"dynatomic degrees N <= 8", ok, ""});
}

void suite_aut(std::vector<Check>& out) {
  for (Label l : named_labels()) {
    if (l == Label::Empty) continue;
    AutReport r = verify_aut(l);
    std::string d = "order " + std::to_string(r.group_order);
    for (const auto& f : r.failures) d += "; " + f;
    out.push_back({"automorphisms " + label_name(l), r.ok, d});
  }
}

void suite_gcd(std::vector<Check>& out, int workers) {
  GcdLemmaReport r = verify_gcd_lemma(500, workers);
  out.push_back({"gcd of the 8(2,1,1) pair, range 500", r.ok,
                 std::to_string(r.pairs) + " pairs" + (r.ok ? "" : ", counterexample " + r.counterexample)});
}

void suite_sym2(std::vector<Check>& out, std::uint64_t seed) {
  Sym2Report r = verify_sym2(100, seed);
  out.push_back({"sym^2 transcription, 100 samples", r.ok && r.reduction_agrees,
                 r.variant >= 0 ? "convention " + sym2_convention_name(r.variant) : "no matching convention"});
}

void suite_local(std::vector<Check>& out, int workers) {
  Approx w = arch_volume_p1(IntPoly({Int(0), Int(1)}), IntPoly({Int(1)}), 1, 2);
  out.push_back({"archimedean volume of the identity", std::fabs(w.value - 4) < 1e-6, std::to_string(w.value)});
  for (Label l : named_labels()) {
    if (l == Label::Empty) continue;
    const HomPair G = hom_pair_of(l);
    const auto bad = bad_primes(G);
    bool ok = true;
    std::string d;
    for (long p = 2; p <= 50; ++p) {
      if (!is_prime(Int(p))) continue;
      if (std::find(bad.begin(), bad.end(), Int(p)) != bad.end()) continue;
      Rat v = padic_region_volume({G.G0, G.G1}, Int(p), Chart::FullQp, workers);
      if (v != 1) {
        ok = false;
        d += "p = " + std::to_string(p) + ": " + to_string(v) + "; ";
      }
    }
    out.push_back({"good primes <= 50 have volume 1: " + label_name(l), ok, d});
  }
}

void suite_gauge(std::vector<Check>& out) {
  const CurveRecord& rec = curve_record(Label::P8_211);
  Approx a = area_R1(hom_pair_of(Label::P8_211));
  Approx w = arch_volume_p1(rec.pi.g0, rec.pi.g1, rec.pi.k, 2);
  const double rel = std::fabs(a.value - w.value) / w.value;
  out.push_back({"area of R(1) against the archimedean volume", rel < 1e-3,
                 std::to_string(a.value) + " vs " + std::to_string(w.value)});
}

void suite_partition(std::vector<Check>& out, int workers) {
  CensusOptions opt;
  opt.workers = workers;
  const Int B = 500;
  auto hits = census_deg1_hits(B, CensusMode::Exhaustive, opt);
  CensusTable t = tabulate_deg1(hits, B, CensusMode::Exhaustive, opt);
  Int sum = 0;
  for (const auto& r : t.rows) sum += r.count;
  out.push_back({"partition identity at B = 500", sum == count_rationals(B), sum.get_str()});
  bool square = true;
  for (const auto& h : hits)
    if (!is_perfect_square(Int(h.c.get_den()))) square = false;
  out.push_back({"nonempty portraits have square denominators", square, ""});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preperiodic portraits of z^2 + c: censuses and counting constants"};
  app.require_subcommand(1);

  std::string c_text, labels_text, label_text, B_text = "1000", mode_text = "parametrized";
  std::string out_path, format = "tsv", suite = "all";
  std::optional<long> disc;
  std::optional<int> rank;
  int degree = 1, workers = 1;
  std::uint64_t seed = 0;
  std::size_t samples = 1u << 22;

  auto* portrait = app.add_subcommand("portrait", "Preperiodic points and portrait of one c");
  portrait->add_option("--c", c_text, "c as a/b or u+v*sqrt(D)")->required();
  portrait->add_option("--disc", disc, "work in Q(sqrt(disc))");
  portrait->add_option("--out", out_path, "output file (default stdout)");

  auto* census = app.add_subcommand("census", "Count c of bounded height by portrait");
  census->add_option("--degree", degree, "1 or 2")->check(CLI::IsMember({1, 2}));
  census->add_option("--B", B_text, "height bound, e.g. 2000, 1e6, 10^4");
  census->add_option("--mode", mode_text, "exhaustive or parametrized");
  census->add_option("--labels", labels_text, "comma-separated labels, e.g. 8_2_1_1,4_2");
  census->add_option("--workers", workers, "OpenMP threads")->check(CLI::PositiveNumber);
  census->add_option("--out", out_path, "output file (default stdout)");
  census->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));

  auto* constants = app.add_subcommand("constants", "Leading constant of a counting function");
  constants->add_option("--label", label_text, "catalog label")->required();
  constants->add_option("--degree", degree, "1 or 2")->check(CLI::IsMember({1, 2}));
  constants->add_option("--seed", seed, "Monte Carlo seed");
  constants->add_option("--samples", samples, "Monte Carlo points per shift group");
  constants->add_option("--rank", rank, "rank of the elliptic curve (genus-1 labels)");
  constants->add_option("--workers", workers, "OpenMP threads")->check(CLI::PositiveNumber);
  constants->add_option("--out", out_path, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite, "all, dynatomic, aut, gcd, sym2, local, gauge, partition")
      ->check(CLI::IsMember({"all", "dynatomic", "aut", "gcd", "sym2", "local", "gauge", "partition"}));
  verify->add_option("--seed", seed, "sampling seed");
  verify->add_option("--workers", workers, "OpenMP threads")->check(CLI::PositiveNumber);
  verify->add_option("--out", out_path, "output file (default stdout)");

  auto* compare = app.add_subcommand("compare", "Empirical counts against the predicted asymptotic");
  compare->add_option("--label", label_text, "catalog label")->required();
  compare->add_option("--degree", degree, "1 or 2")->check(CLI::IsMember({1, 2}));
  compare->add_option("--B", B_text, "comma-separated height bounds");
  compare->add_option("--seed", seed, "Monte Carlo seed");
  compare->add_option("--samples", samples, "Monte Carlo points per shift group");
  compare->add_option("--workers", workers, "OpenMP threads")->check(CLI::PositiveNumber);
  compare->add_option("--out", out_path, "output file (default stdout)");
  compare->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (*portrait) {
      PreperSet s;
      if (disc) {
        if (*disc == 0) throw ParseError("--disc must be nonzero");
        const Int D = squarefree_part(Int(*disc));
        if (D == 1) {
          s = preper_points_quad(parse_quad(c_text));
        } else {
          s = preper_points_quad(parse_quad(c_text, QuadField(D)));
        }
      } else {
        QuadElem c = parse_quad(c_text);
        s = c.field().is_rational() ? preper_points_Q(c.u()) : preper_points_quad(c);
      }
      emit(preper_json(s, portrait_of(s).label), out_path);
      return 0;
    }
    if (*census) {
      const Int B = parse_bound(B_text);
      CensusOptions opt;
      opt.labels = parse_labels(labels_text);
      opt.workers = workers;
      const CensusMode mode = parse_mode(mode_text);
      CensusTable t = degree == 1 ? census_deg1(B, mode, opt) : census_deg2(B, mode, opt);
      emit(format == "json" ? census_json(t) : census_tsv(t), out_path);
      return 0;
    }
    if (*constants) {
      ConstantsOptions copt;
      copt.seed = seed;
      copt.samples = samples;
      copt.workers = workers;
      copt.rank = rank;
      const Label l = label_arg(label_text);
      LeadingConstant lc = degree == 1 ? leading_constant_deg1(l, copt) : leading_constant_deg2(l, copt);
      emit(constants_json(lc), out_path);
      return 0;
    }
    if (*verify) {
      std::vector<Check> checks;
      auto want = [&](const char* s) { return suite == "all" || suite == s; };
      if (want("dynatomic")) suite_dynatomic(checks);
      if (want("aut")) suite_aut(checks);
      if (want("gcd")) suite_gcd(checks, workers);
      if (want("sym2")) suite_sym2(checks, seed);
      if (want("local")) suite_local(checks, workers);
      if (want("gauge")) suite_gauge(checks);
      if (want("partition")) suite_partition(checks, workers);
      std::ostringstream os;
      bool all = true;
      for (const auto& c : checks) {
        all = all && c.ok;
        os << (c.ok ? "PASS  " : "FAIL  ") << c.name;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << '\n';
      }
      emit(os.str(), out_path);
      return all ? 0 : 1;
    }
    if (*compare) {
      ConstantsOptions copt;
      copt.seed = seed;
      copt.samples = samples;
      copt.workers = workers;
      CompareReport r = compare_report(label_arg(label_text), degree, parse_bounds(B_text), copt, workers);
      emit(format == "json" ? compare_json(r) : compare_tsv(r), out_path);
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const IOError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIO;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
