#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "census_detail.hpp"
#include "dyn/census.hpp"
#include "dyn/curves.hpp"
#include "dyn/lattice.hpp"
#include "dyn/preper.hpp"

namespace dyn {

using detail::abs128;
using detail::gcd128;
using detail::PairEval;
using detail::TripleEval;

namespace {

std::string field_name(const QuadField& K) {
  return K.is_rational() ? "Q" : "Q(sqrt(" + K.D().get_str() + "))";
}

bool past_caps(const PreperSet& s) {
  for (const auto& pt : s.points)
    if (pt.m > kTailCap || pt.n > kCycleCap) return true;
  return false;
}

std::string anomaly_kind(const Portrait& p) {
  if (p.label.named()) return "";
  return p.graph.size() > 10 ? "other-large" : "other";
}

bool is_rat_square(const Rat& q) {
  if (q < 0) return false;
  return is_perfect_square(Int(q.get_num())) && is_perfect_square(Int(q.get_den()));
}

// u + v sqrt(D) is a square in Q(sqrt D).
bool is_square_in_field(const QuadElem& z) {
  const Rat& u = z.u();
  const Rat& v = z.v();
  const Int& D = z.field().D();
  if (v == 0) return is_rat_square(u) || is_rat_square(u / Rat(D));
  Rat n2 = z.norm();
  if (!is_rat_square(n2)) return false;
  Rat n(Int(*is_perfect_square(Int(n2.get_num()))), Int(*is_perfect_square(Int(n2.get_den()))));
  n.canonicalize();
  // (s + t sqrt D)^2 = u + v sqrt D gives s^2 = (u +- n)/2 with s != 0.
  Rat s1 = (u + n) / 2, s2 = (u - n) / 2;
  return (s1 != 0 && is_rat_square(s1)) || (s2 != 0 && is_rat_square(s2));
}

QuadElem eval_int_poly(const IntPoly& h, const QuadElem& x) {
  QuadElem r(x.field(), Rat(0));
  for (int i = h.degree(); i >= 0; --i) r = r * x + QuadElem(x.field(), Rat(h.c[i]));
  return r;
}

bool is_square128(__int128 n) {
  if (n < 0) return false;
  __int128 r = static_cast<__int128>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

// M(a t^2 + b t + c) <= T for small integers, exact: M is max(|a|, |c|) for
// complex roots and max(|a|, |c|, (|b| + sqrt(disc))/2) otherwise.
bool mahler_le_small(long a, long b, long c, long T) {
  if (std::labs(a) > T || std::labs(c) > T) return false;
  const long disc = b * b - 4 * a * c;
  if (disc < 0) return true;
  const long r = 2 * T - std::labs(b);
  return r >= 0 && disc <= r * r;
}

long val(long n, long p) {
  long v = 0;
  for (n = std::labs(n); n % p == 0; n /= p) ++v;
  return v;
}

// Necessary condition for preper_lattice(c) to be nonempty, from the Newton
// polygon of A t^2 + B t + C at each p | A: a root of odd valuation in a
// split prime (or of half-integral valuation) kills every preperiodic point.
bool denominators_admissible(long A, long B, long C) {
  long a = std::labs(A);
  for (long p = 2; a > 1; ++p) {
    if (p * p > a) p = a;
    if (a % p) continue;
    long va = 0;
    while (a % p == 0) {
      a /= p;
      ++va;
    }
    const long vb = B == 0 ? 1000 : val(B, p);
    if (vb == 0) {
      if (va % 2) return false;
    } else if (2 * vb < va) {
      if (vb % 2 || (va - vb) % 2) return false;
    } else if (va % 2) {
      return false;
    }
    (void)C;
  }
  return true;
}

std::string poly_key(const IntPoly& f) {
  std::string k;
  for (const auto& a : f.c) k += a.get_str() + ",";
  return k;
}

struct Sym2Data {
  HomTriple T;
  double m3 = 0;
  Int g = 1;
};

const Sym2Data& sym2_data(Label l) {
  static std::mutex mu;
  static std::map<Label, Sym2Data> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(l);
  if (it != cache.end()) return it->second;
  const HomPair G = hom_pair_of(l);
  Sym2Data d;
  d.T = sym2_reduce(G);
  std::vector<Form> forms(d.T.H.begin(), d.T.H.end());
  d.m3 = min_sup_sphere(forms, {1.0, 0.5, 1.0});
  for (const Int& p : bad_primes(G))
    d.g *= ipow(p, static_cast<unsigned long>(valuation_distribution(forms, p).max_v()));
  return cache.emplace(l, std::move(d)).first->second;
}

/// Largest |X| over primitive sym^2 coordinates X with M(E(X)) <= B^2.
long sym2_box_radius(Label l, const Int& B) {
  const Sym2Data& d = sym2_data(l);
  long double r = std::pow(static_cast<long double>(d.g.get_d()) * B.get_d() * B.get_d() / d.m3,
                           1.0L / d.T.k);
  return static_cast<long>(std::floor(r)) + 1;
}

// Rational c = pi(x) with H(c) <= B over x in P^1(Q), genus ignored: for
// genus >= 1 the fibre of x carries points over Q(sqrt h(x)).
void rational_images(Label l, const Int& B, int workers, std::set<Rat>& out) {
  const PairEval ev(hom_pair_of(l));
  const Int X = x_height_bound(l, B);
  if (X > ev.safe_radius()) throw std::runtime_error("census: height bound too large for 128-bit evaluation");
  const long Xl = X.get_si();
  const __int128 Bi = to_i128(B);
  std::vector<std::vector<Rat>> parts(static_cast<std::size_t>(Xl) + 1);
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(workers, 1))
  for (long b = 0; b <= Xl; ++b)
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
      parts[static_cast<std::size_t>(b)].push_back(make_rat(from_i128(g0), from_i128(g1)));
    }
  for (auto& p : parts) out.insert(p.begin(), p.end());
}

// Primitive [C, -B, A] (A > 0, irreducible) with |X| <= R whose image has
// Mahler measure at most B^2.
std::vector<std::array<long, 3>> sym2_survivors(Label l, const Int& B, int workers) {
  const Sym2Data& d = sym2_data(l);
  const TripleEval ev(d.T);
  const long R = sym2_box_radius(l, B);
  if (R > ev.safe_radius()) throw std::runtime_error("census: sym^2 box too large for 128-bit evaluation");
  const Int B2 = B * B;
  const __int128 B2i = to_i128(B2);
  std::vector<std::vector<std::array<long, 3>>> parts(static_cast<std::size_t>(R) + 1);
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(workers, 1))
  for (long A = 1; A <= R; ++A) {
    auto& part = parts[static_cast<std::size_t>(A)];
    for (long x1 = -R; x1 <= R; ++x1) {
      const long g1 = std::gcd(A, x1);
      for (long x0 = -R; x0 <= R; ++x0) {
        if (std::gcd(g1, x0) != 1) continue;
        const __int128 disc = static_cast<__int128>(x1) * x1 - static_cast<__int128>(4) * A * x0;
        if (is_square128(disc)) continue;
        auto E = ev.eval({x0, x1, A});
        if (E[2] == 0) continue;
        __int128 g = gcd128(gcd128(E[0], E[1]), E[2]);
        for (auto& e : E) e /= g;
        if (abs128(E[0]) > B2i || abs128(E[2]) > B2i || abs128(E[1]) > 2 * B2i) continue;
        if (!mahler_quadratic_le(from_i128(E[2]), from_i128(-E[1]), from_i128(E[0]), Rat(B2))) continue;
        part.push_back({x0, x1, A});
      }
    }
  }
  std::vector<std::array<long, 3>> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

QuadElem quad_from_sym2(const std::array<long, 3>& X) {
  // Root of A t^2 + B t + C with [C, -B, A] = X.
  const Int C = X[0], Bc = -X[1], A = X[2];
  const Int disc = Bc * Bc - 4 * A * C;
  const Int D = squarefree_part(disc);
  const Int f = *is_perfect_square(disc / D);
  return QuadElem(QuadField(D), make_rat(-Bc, 2 * A), make_rat(f, 2 * A));
}

struct RationalVerdict {
  RationalCLabels labels;
  std::vector<Label> ids;  // distinct labels, over_Q first
};

RationalVerdict verdict_for(const Rat& c) {
  RationalVerdict v;
  v.labels = rational_c_labels(c);
  v.ids.push_back(v.labels.over_Q.id);
  for (const auto& f : v.labels.fields)
    if (std::find(v.ids.begin(), v.ids.end(), f.label.id) == v.ids.end()) v.ids.push_back(f.label.id);
  return v;
}

// Hits for rational c against the requested rows.
void rational_hits(const Rat& c, const std::vector<Label>& rows, std::vector<Deg2Hit>& out) {
  RationalVerdict v = verdict_for(c);
  const QuadElem cq = QuadElem::rational(c);
  const IntPoly mp = minimal_polynomial(cq);
  for (Label L : rows) {
    Deg2Hit h;
    h.c = cq;
    h.minpoly = mp;
    h.row = L;
    h.weight = 1;
    bool via_field = false;
    for (const auto& f : v.labels.fields)
      if (f.label.id == L) {
        via_field = true;
        h.label = f.label;
        h.field = field_name(f.field);
        h.vertices = f.vertices;
        break;
      }
    const bool via_q = v.labels.over_Q.id == L;
    if (!via_field && !via_q) continue;
    if (!via_field) {
      h.label = v.labels.over_Q;
      h.field = "Q";
      h.vertices = v.labels.over_Q_vertices;
      h.generic_k = true;
    }
    if (v.labels.beyond_caps) h.anomaly = "cap";
    out.push_back(std::move(h));
  }
  // Unnamed portraits found along the way.
  auto other = [&](const PortraitLabel& lab, const std::string& field, int size) {
    Deg2Hit h;
    h.c = cq;
    h.minpoly = mp;
    h.row = Label::Other;
    h.label = lab;
    h.counted = false;
    h.anomaly = size > 10 ? "other-large" : "other";
    h.field = field;
    h.vertices = size;
    out.push_back(std::move(h));
  };
  if (!v.labels.over_Q.named()) other(v.labels.over_Q, "Q", v.labels.over_Q_vertices);
  for (const auto& f : v.labels.fields)
    if (!f.label.named()) other(f.label, field_name(f.field), f.vertices);
}

}  // namespace

RationalCLabels rational_c_labels(const Rat& c) {
  RationalCLabels r;
  Portrait q = portrait_Q(c);
  r.over_Q = q.label;
  r.over_Q_vertices = static_cast<int>(q.graph.size());
  for (const auto& nf : quad_fields_with_new_points(c)) {
    Portrait p = portrait_of(nf.set);
    r.fields.push_back({nf.field, p.label, static_cast<int>(p.graph.size())});
    if (nf.beyond_caps) r.beyond_caps = true;
  }
  return r;
}

std::vector<Deg2Hit> census_deg2_hits(const Int& B, CensusMode mode, const CensusOptions& opt) {
  if (B < 1) throw std::invalid_argument("census: B must be positive");
  std::vector<Label> rows;
  for (Label l : opt.labels.empty() ? named_labels() : opt.labels) {
    if (l == Label::Empty) {
      if (!opt.labels.empty()) throw std::invalid_argument("census: the empty portrait is not tabulated in degree 2");
      continue;
    }
    if (l == Label::Other) throw std::invalid_argument("census: degree-2 labels must be named");
    rows.push_back(l);
  }
  std::vector<Deg2Hit> hits;

  auto quad_hit = [&](const QuadElem& c, const IntPoly& mp, Label row, bool only_row) {
    PreperSet s = preper_points_quad(c);
    Portrait p = portrait_of(s);
    Deg2Hit h;
    h.c = c;
    h.minpoly = mp;
    h.label = p.label;
    h.weight = 2;
    h.field = field_name(c.field());
    h.anomaly = anomaly_kind(p);
    h.vertices = static_cast<int>(p.graph.size());
    if (past_caps(s)) h.anomaly = "cap";
    if (p.label.named()) {
      if (only_row && p.label.id != row) return;
      if (std::find(rows.begin(), rows.end(), p.label.id) == rows.end()) return;
      h.row = p.label.id;
    } else {
      h.row = only_row ? row : Label::Other;
      h.counted = false;
    }
    hits.push_back(std::move(h));
  };

  if (mode == CensusMode::Exhaustive) {
    if (B > 30) throw std::invalid_argument("census: degree-2 exhaustive mode is limited to B <= 30");
    enum_rationals(B, [&](const Rat& c) { rational_hits(c, rows, hits); });
    const long T = B.get_si() * B.get_si();
    for (long A = 1; A <= T; ++A)
      for (long Bc = -2 * T; Bc <= 2 * T; ++Bc)
        for (long C = -T; C <= T; ++C) {
          if (std::gcd(std::gcd(A, Bc), C) != 1) continue;
          if (!mahler_le_small(A, Bc, C, T)) continue;
          if (!denominators_admissible(A, Bc, C)) continue;
          if (is_square128(Bc * Bc - 4 * A * C)) continue;
          QuadElem c = quad_from_sym2({C, -Bc, A});
          if (preper_lattice(c).empty) continue;
          quad_hit(c, minimal_polynomial(c), Label::Other, false);
        }
    return hits;
  }

  std::set<Rat> rational_c;
  for (Label L : rows) {
    rational_images(L, B, opt.workers, rational_c);
    const CurveRecord& rec = curve_record(L);
    std::set<std::string> seen;
    for (const auto& X : sym2_survivors(L, B, opt.workers)) {
      QuadElem x = quad_from_sym2(X);
      if (rec.genus > 0 && !is_square_in_field(eval_int_poly(*rec.h, x))) continue;
      std::optional<QuadElem> c = eval_pi(L, x);
      if (!c) continue;
      if (c->is_rational()) {
        if (height_rational(c->u()) <= B) rational_c.insert(c->u());
        continue;
      }
      IntPoly mp = minimal_polynomial(*c);
      if (!seen.insert(poly_key(mp)).second) continue;
      if (!height_quadratic_le(mp, Rat(B))) continue;
      quad_hit(*c, mp, L, true);
    }
  }
  for (const Rat& c : rational_c) {
    std::vector<Deg2Hit> part;
    rational_hits(c, rows, part);
    for (auto& h : part) hits.push_back(std::move(h));
  }
  return hits;
}

CensusTable tabulate_deg2(const std::vector<Deg2Hit>& hits, const Int& B, CensusMode mode,
                          const CensusOptions& opt) {
  CensusTable t;
  t.degree = 2;
  t.mode = mode;
  t.B = B;
  std::vector<Label> labels;
  for (Label l : opt.labels.empty() ? named_labels() : opt.labels)
    if (l != Label::Empty) labels.push_back(l);
  labels.push_back(Label::Other);
  std::map<Label, CensusRow> rows;
  for (Label l : labels) {
    CensusRow r;
    r.label.id = l;
    r.B = B;
    r.degree = 2;
    r.mode = mode;
    r.count = 0;
    r.generic_k = 0;
    rows.emplace(l, r);
  }
  std::set<std::string> other_seen;
  for (const auto& h : hits) {
    if (!height_le(h.c, Rat(B))) continue;
    auto it = rows.find(h.row);
    if (it == rows.end()) continue;
    CensusRow& r = it->second;
    if (h.counted) {
      r.count += h.weight;
      if (h.generic_k) r.generic_k += h.weight;
    } else if (h.row == Label::Other && other_seen.insert(to_string(h.c)).second) {
      r.count += h.weight;
    }
    if (!h.anomaly.empty())
      r.anomalies.push_back({to_string(h.c), h.field, h.anomaly, to_hex(h.label.code), h.vertices});
  }
  for (Label l : labels) t.rows.push_back(rows[l]);
  t.notes.push_back("rational c whose portrait over Q matches count through fields adding no points (generic-K)");
  return t;
}

CensusTable census_deg2(const Int& B, CensusMode mode, const CensusOptions& opt) {
  return tabulate_deg2(census_deg2_hits(B, mode, opt), B, mode, opt);
}

}  // namespace dyn
