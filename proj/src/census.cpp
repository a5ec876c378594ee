#include "dyn/census.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>

#include "dyn/curves.hpp"
#include "dyn/preper.hpp"
#include "census_detail.hpp"

namespace dyn {

using detail::abs128;
using detail::gcd128;
using detail::PairEval;

std::string mode_name(CensusMode m) {
  return m == CensusMode::Exhaustive ? "exhaustive" : "parametrized";
}

CensusMode parse_mode(std::string_view s) {
  if (s == "exhaustive") return CensusMode::Exhaustive;
  if (s == "parametrized") return CensusMode::Parametrized;
  throw ParseError("unknown census mode: " + std::string(s));
}

const CensusRow* CensusTable::row(Label l) const {
  for (const auto& r : rows)
    if (r.label.id == l) return &r;
  return nullptr;
}

void enum_rationals(const Int& B, const std::function<void(const Rat&)>& f) {
  if (B < 1) throw std::invalid_argument("enum_rationals: B must be positive");
  f(Rat(0));
  for (Int b = 1; b <= B; ++b)
    for (Int a = -B; a <= B; ++a) {
      if (a == 0) continue;
      Int g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      if (g == 1) f(make_rat(a, b));
    }
}

Int count_rationals(const Int& B) {
  if (B < 1) throw std::invalid_argument("count_rationals: B must be positive");
  if (!B.fits_ulong_p() || B > 100000000) throw std::invalid_argument("count_rationals: B too large");
  const unsigned long n = B.get_ui();
  // Linear sieve for the Mobius function.
  std::vector<signed char> mu(n + 1, 1);
  std::vector<unsigned long> primes;
  std::vector<bool> composite(n + 1, false);
  for (unsigned long i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (unsigned long p : primes) {
      if (i * p > n) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = static_cast<signed char>(-mu[i]);
    }
  }
  Int coprime = 0;
  for (unsigned long d = 1; d <= n; ++d) {
    if (mu[d] == 0) continue;
    Int q = n / d;
    coprime += mu[d] * q * q;
  }
  return 1 + 2 * coprime;
}

namespace {

std::mutex cache_mutex;

}  // namespace

Int max_gcd(const HomPair& G) {
  Int g = 1;
  for (const Int& p : bad_primes(G)) {
    ValuationDistribution d = valuation_distribution({G.G0, G.G1}, p);
    g *= ipow(p, static_cast<unsigned long>(d.max_v()));
  }
  return g;
}

Int x_height_bound(Label l, const Int& B) {
  static std::map<Label, std::pair<double, Int>> cache;  // m, g
  std::pair<double, Int> mg;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(l);
    if (it == cache.end()) {
      HomPair G = hom_pair_of(l);
      it = cache.emplace(l, std::make_pair(min_sup_sphere({G.G0, G.G1}, {1.0, 1.0}), max_gcd(G))).first;
    }
    mg = it->second;
  }
  const int k = hom_pair_of(l).k;
  long double x = std::pow(static_cast<long double>(mg.second.get_d()) * B.get_d() / mg.first, 1.0L / k);
  return Int(static_cast<unsigned long>(std::floor(x))) + 1;
}

// --- degree-1 census ---------------------------------------------------------

namespace {

const std::vector<Label>& cycle_families() {
  static const std::vector<Label> f{Label::P4_11, Label::P4_2, Label::P6_3};
  return f;
}

// c where two marked points of a family collide; every one of them also has a
// rational cycle, so this only guards the family parametrisations.
const std::vector<Rat>& boundary_values() {
  static const std::vector<Rat> v{Rat(0), Rat(-2), Rat(1, 4), Rat(-3, 4)};
  return v;
}

bool wants(const CensusOptions& opt, Label l) {
  return opt.labels.empty() || std::find(opt.labels.begin(), opt.labels.end(), l) != opt.labels.end();
}

bool needs_everything(const CensusOptions& opt) {
  return opt.labels.empty() || wants(opt, Label::Empty) || wants(opt, Label::Other);
}

// Images pi(x) with H(pi(x)) <= B over x in P^1(Q) (genus 0) or over the
// rational points of the curve (genus >= 1).
void family_images(Label l, const Int& B, int workers, std::vector<Rat>& out) {
  const CurveRecord& rec = curve_record(l);
  const Int X = x_height_bound(l, B);
  if (rec.genus > 0) {
    generate_c_degree1(l, X, [&](const Rat&, const Rat& c) {
      if (height_rational(c) <= B) out.push_back(c);
    });
    // Points at infinity on y^2 = h(x).
    const IntPoly& h = *rec.h;
    bool at_inf = h.degree() % 2 == 1 || (h.lead() > 0 && is_perfect_square(h.lead()));
    if (at_inf)
      if (auto c = eval_pi_hom(l, Int(1), Int(0)); c && height_rational(*c) <= B) out.push_back(*c);
    return;
  }
  const HomPair G = hom_pair_of(l);
  const PairEval ev(G);
  if (X > ev.safe_radius()) throw std::runtime_error("census: height bound too large for 128-bit evaluation");
  const long Xl = X.get_si();
  const __int128 Bi = to_i128(B);
  std::vector<std::vector<Rat>> parts(static_cast<std::size_t>(Xl) + 1);
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(workers, 1))
  for (long b = 0; b <= Xl; ++b) {
    std::vector<Rat>& part = parts[static_cast<std::size_t>(b)];
    for (long a = -Xl; a <= Xl; ++a) {
      if (b == 0 && a != 1) continue;
      if (std::gcd(a, b) != 1) continue;
      __int128 g0, g1;
      ev.eval(a, b, g0, g1);
      if (g1 == 0) continue;
      __int128 g = gcd128(g0, g1);
      g0 /= g;
      g1 /= g;
      if (abs128(g0) > Bi || abs128(g1) > Bi) continue;
      if (g1 < 0) {
        g0 = -g0;
        g1 = -g1;
      }
      part.push_back(make_rat(from_i128(g0), from_i128(g1)));
    }
  }
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
}

void sort_unique(std::vector<Rat>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<Deg1Hit> census_deg1_hits(const Int& B, CensusMode mode, const CensusOptions& opt) {
  if (B < 1) throw std::invalid_argument("census: B must be positive");
  std::vector<Rat> candidates;
  if (mode == CensusMode::Exhaustive) {
    // Denominator lemma: a nonempty portrait needs a square denominator.
    const Int s_max = isqrt(B);
    if (!s_max.fits_slong_p() || !B.fits_slong_p()) throw std::invalid_argument("census: B too large");
    const long S = s_max.get_si(), Bl = B.get_si();
    std::vector<std::vector<Deg1Hit>> parts(static_cast<std::size_t>(S) + 1);
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(opt.workers, 1))
    for (long s = 1; s <= S; ++s) {
      auto& part = parts[static_cast<std::size_t>(s)];
      for (long a = -Bl; a <= Bl; ++a) {
        if (std::gcd(a, s) != 1) continue;
        Rat c = make_rat(Int(a), Int(s * s));
        Portrait p = portrait_Q(c);
        if (p.graph.size() == 0) continue;
        if (!opt.labels.empty() && !wants(opt, p.label.id)) continue;
        part.push_back({c, p.label});
      }
    }
    std::vector<Deg1Hit> hits;
    for (auto& p : parts) hits.insert(hits.end(), p.begin(), p.end());
    std::sort(hits.begin(), hits.end(), [](const Deg1Hit& x, const Deg1Hit& y) { return x.c < y.c; });
    return hits;
  }
  if (B < 10) throw std::invalid_argument("census: parametrized mode needs B >= 10");
  if (needs_everything(opt)) {
    for (Label f : cycle_families()) family_images(f, B, opt.workers, candidates);
    for (const Rat& c : boundary_values())
      if (height_rational(c) <= B) candidates.push_back(c);
  } else {
    for (Label l : opt.labels) family_images(l, B, opt.workers, candidates);
  }
  sort_unique(candidates);
  std::vector<Deg1Hit> hits(candidates.size());
  std::vector<char> keep(candidates.size(), 0);
  const long n = static_cast<long>(candidates.size());
#pragma omp parallel for schedule(dynamic, 256) num_threads(std::max(opt.workers, 1))
  for (long i = 0; i < n; ++i) {
    Portrait p = portrait_Q(candidates[static_cast<std::size_t>(i)]);
    if (p.graph.size() == 0) continue;
    if (!opt.labels.empty() && !wants(opt, p.label.id)) continue;
    hits[static_cast<std::size_t>(i)] = {candidates[static_cast<std::size_t>(i)], p.label};
    keep[static_cast<std::size_t>(i)] = 1;
  }
  std::vector<Deg1Hit> out;
  for (long i = 0; i < n; ++i)
    if (keep[static_cast<std::size_t>(i)]) out.push_back(std::move(hits[static_cast<std::size_t>(i)]));
  return out;
}

CensusTable tabulate_deg1(const std::vector<Deg1Hit>& hits, const Int& B, CensusMode mode,
                          const CensusOptions& opt) {
  CensusTable t;
  t.degree = 1;
  t.mode = mode;
  t.B = B;
  const bool all = needs_everything(opt);
  if (all) t.total = count_rationals(B);
  std::map<Label, CensusRow> rows;
  auto row = [&](Label l) -> CensusRow& {
    auto it = rows.find(l);
    if (it == rows.end()) {
      CensusRow r;
      r.label.id = l;
      r.B = B;
      r.degree = 1;
      r.mode = mode;
      r.count = 0;
      r.generic_k = 0;
      it = rows.emplace(l, r).first;
    }
    return it->second;
  };
  for (Label l : named_labels())
    if (wants(opt, l)) row(l);
  if (wants(opt, Label::Other)) row(Label::Other);
  Int nonempty = 0;
  for (const auto& h : hits) {
    if (height_rational(h.c) > B) continue;
    ++nonempty;
    if (!wants(opt, h.label.id)) continue;
    CensusRow& r = row(h.label.id);
    ++r.count;
    if (h.label.id == Label::Other)
      r.anomalies.push_back({to_string(h.c), "Q", "other", to_hex(h.label.code), 0});
  }
  if (all && wants(opt, Label::Empty)) row(Label::Empty).count = t.total - nonempty;
  for (Label l : named_labels())
    if (rows.count(l)) t.rows.push_back(rows[l]);
  if (rows.count(Label::Other)) t.rows.push_back(rows[Label::Other]);
  return t;
}

CensusTable census_deg1(const Int& B, CensusMode mode, const CensusOptions& opt) {
  return tabulate_deg1(census_deg1_hits(B, mode, opt), B, mode, opt);
}

// --- direct counts -------------------------------------------------------------

Int count_NQ1_direct(Label l, const Int& B, int workers) {
  if (label_genus(l) != 0) throw std::invalid_argument("count_NQ1_direct: genus-0 labels only");
  const HomPair G = hom_pair_of(l);
  const PairEval ev(G);
  const Int X = x_height_bound(l, B);
  if (X > ev.safe_radius()) throw std::runtime_error("count_NQ1_direct: bound too large");
  const long Xl = X.get_si();
  const __int128 Bi = to_i128(B);
  auto count_b = [&](long b) {
    long n = 0;
    for (long a = -Xl; a <= Xl; ++a) {
      if (b == 0 && a != 1) continue;
      if (std::gcd(a, b) != 1) continue;
      __int128 g0, g1;
      ev.eval(a, b, g0, g1);
      __int128 g = gcd128(g0, g1);
      if (abs128(g0) / g <= Bi && abs128(g1) / g <= Bi) ++n;
    }
    return n;
  };
  long total = 0;
  if (workers <= 1) {
    for (long b = 0; b <= Xl; ++b) total += count_b(b);
  } else {
#pragma omp parallel for reduction(+ : total) schedule(dynamic, 8) num_threads(workers)
    for (long b = 0; b <= Xl; ++b) total += count_b(b);
  }
  return Int(total);
}

GcdLemmaReport verify_gcd_lemma(long range, int workers) {
  const PairEval ev(hom_pair_of(Label::P8_211));
  if (range > ev.safe_radius()) throw std::invalid_argument("verify_gcd_lemma: range too large");
  GcdLemmaReport rep;
  long pairs = 0, odd = 0;
  std::string bad;
#pragma omp parallel for reduction(+ : pairs, odd) schedule(dynamic, 8) num_threads(std::max(workers, 1))
  for (long b = 0; b <= range; ++b)
    for (long a = -range; a <= range; ++a) {
      if (b == 0 && a != 1) continue;
      if (std::gcd(a, b) != 1) continue;
      __int128 g0, g1;
      ev.eval(a, b, g0, g1);
      const bool both_odd = (a & 1) && (b & 1);
      const __int128 expect = both_odd ? 16 : 1;
      ++pairs;
      if (both_odd) ++odd;
      if (gcd128(g0, g1) != expect) {
#pragma omp critical
        if (bad.empty()) bad = "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
      }
    }
  rep.pairs = pairs;
  rep.odd_pairs = odd;
  rep.ok = bad.empty();
  rep.counterexample = bad;
  return rep;
}

FiberReport fiber_sizes(Label l, int count) {
  FiberReport rep;
  const FunctionalGraph& target = catalog_graph(l);
  std::set<Rat> seen;
  for (Int H = 1; rep.examined < count; ++H) {
    if (H > 100000) throw std::runtime_error("fiber_sizes: search exhausted");
    std::vector<Rat> level;
    // x of height exactly H, then infinity once.
    for (Int b = 1; b <= H; ++b)
      for (Int a = -H; a <= H; ++a) {
        if (abs(a) != H && b != H) continue;
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (g != 1) continue;
        if (auto c = eval_pi(l, make_rat(a, b))) level.push_back(*c);
      }
    if (H == 1)
      if (auto c = eval_pi_hom(l, Int(1), Int(0))) level.push_back(*c);
    for (const Rat& c : level) {
      if (rep.examined >= count) break;
      if (!seen.insert(c).second) continue;
      Portrait p = portrait_Q(c);
      if (!embeds(target, p.graph)) continue;
      ++rep.examined;
      int size = static_cast<int>(solve_fiber(l, c).size()) + (fiber_contains_infinity(l, c) ? 1 : 0);
      if (size == label_aut_order(l)) ++rep.size_four;
      else rep.exceptions.emplace_back(c, size);
    }
  }
  return rep;
}

}  // namespace dyn
