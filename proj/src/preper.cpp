#include "dyn/preper.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "dyn/lattice.hpp"

namespace dyn {

namespace {

using i128 = __int128;

// Successor table on a candidate set; -1 means the orbit leaves the set.
// Returns for each candidate whether it is preperiodic.
std::vector<char> preperiodic_mask(const std::vector<int>& next) {
  const int n = static_cast<int>(next.size());
  // 0 unknown, 1 on current walk, 2 preperiodic, 3 escapes
  std::vector<char> st(n, 0);
  std::vector<int> path;
  for (int s = 0; s < n; ++s) {
    if (st[s]) continue;
    path.clear();
    int v = s;
    char verdict;
    while (true) {
      if (v < 0) {
        verdict = 3;
        break;
      }
      if (st[v] == 1 || st[v] == 2) {
        verdict = 2;
        break;
      }
      if (st[v] == 3) {
        verdict = 3;
        break;
      }
      st[v] = 1;
      path.push_back(v);
      v = next[v];
    }
    for (int u : path) st[u] = verdict;
  }
  std::vector<char> mask(n);
  for (int i = 0; i < n; ++i) mask[i] = st[i] == 2;
  return mask;
}

// Assemble a PreperSet from candidate values and successor table.
PreperSet assemble(const QuadField& K, const QuadElem& c, std::vector<QuadElem> values,
                   const std::vector<int>& next) {
  auto mask = preperiodic_mask(next);
  std::vector<int> keep;
  for (int i = 0; i < static_cast<int>(values.size()); ++i)
    if (mask[i]) keep.push_back(i);
  std::sort(keep.begin(), keep.end(), [&](int a, int b) { return values[a] < values[b]; });
  std::map<int, int> pos;
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) pos[keep[i]] = i;

  PreperSet s;
  s.field = K;
  s.c = c;
  s.candidates = values.size();
  for (int old : keep) {
    s.graph.succ.push_back(pos.at(next[old]));
    s.graph.names.push_back(to_string(values[old]));
    s.points.push_back({values[old], 0, 1});
  }
  // (m, n): cycle vertices get m = 0, others one more than their image.
  std::vector<int> m(keep.size(), -1), per(keep.size(), 0);
  for (const auto& cyc : s.graph.cycles())
    for (int v : cyc) {
      m[v] = 0;
      per[v] = static_cast<int>(cyc.size());
    }
  for (int v = 0; v < s.graph.size(); ++v) {
    std::vector<int> chain;
    int u = v;
    while (m[u] < 0) {
      chain.push_back(u);
      u = s.graph.succ[u];
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      m[*it] = m[s.graph.succ[*it]] + 1;
      per[*it] = per[s.graph.succ[*it]];
    }
  }
  for (std::size_t i = 0; i < keep.size(); ++i) {
    s.points[i].m = m[i];
    s.points[i].n = per[i];
  }
  return s;
}

}  // namespace

bool within_escape_radius(const Rat& x, const Rat& c) {
  Rat t = abs(x) - Rat(1, 2);
  if (t <= 0) return true;
  return t * t <= Rat(1, 4) + abs(c);
}

PreperSet preper_points_Q(const Rat& c) {
  const QuadField Q = QuadField::rationals();
  auto d_opt = is_perfect_square(Int(c.get_den()));
  if (!d_opt) {
    PreperSet s;
    s.c = QuadElem::rational(c);
    return s;
  }
  const Int d = *d_opt;
  const Int a = c.get_num();
  // |e| <= E  <=>  |e/d| within the escape radius
  const Int E = (d + isqrt(d * d + 4 * abs(a))) / 2;
  std::vector<QuadElem> values;
  std::vector<int> next;
  if (fits_i64(E) && fits_i64(a) && fits_i64(d) && E < (Int(1) << 60)) {
    const i128 e_max = to_i64(E), aa = to_i64(a), dd = to_i64(d);
    const std::int64_t n = static_cast<std::int64_t>(2 * e_max + 1);
    next.resize(n);
    for (std::int64_t k = 0; k < n; ++k) {
      i128 e = k - e_max;
      i128 num = e * e + aa;
      if (num % dd != 0) {
        next[k] = -1;
        continue;
      }
      i128 e2 = num / dd;
      next[k] = (e2 < -e_max || e2 > e_max) ? -1 : static_cast<int>(e2 + e_max);
    }
    auto mask = preperiodic_mask(next);
    // Materialise exact values only for the survivors.
    std::vector<int> remap(n, -1);
    std::vector<int> next2;
    for (std::int64_t k = 0; k < n; ++k)
      if (mask[k]) {
        remap[k] = static_cast<int>(values.size());
        values.push_back(QuadElem::rational(make_rat(Int(static_cast<long>(k - e_max)), d)));
      }
    for (std::int64_t k = 0; k < n; ++k)
      if (mask[k]) next2.push_back(remap[next[k]]);
    PreperSet s = assemble(Q, QuadElem::rational(c), std::move(values), next2);
    s.candidates = static_cast<std::size_t>(n);
    return s;
  }
  throw std::overflow_error("preper_points_Q: height too large for the candidate sweep");
}

PreperSet preper_points_quad(const QuadElem& c) {
  const QuadField& K = c.field();
  if (K.is_rational()) return preper_points_Q(c.u());
  PreperLattice lat = preper_lattice(c);
  if (lat.empty) {
    PreperSet s;
    s.field = K;
    s.c = c;
    return s;
  }
  const bool half = K.half_integral_basis();
  const long double sq = std::sqrt(std::fabs(static_cast<long double>(K.D().get_d())));
  auto [cA, cB] = c.omega_coords();
  const long double T = lat.T.get_d();
  const long double cAd = cA.get_d(), cBd = cB.get_d();

  auto radius = [](long double absc) { return 0.5L + std::sqrt(0.25L + absc); };
  const long double slack = 1e-9L;

  // Integral parameters of the iteration y -> (y^2 + T^2 c) / T.
  Rat T2 = Rat(lat.T * lat.T);
  Int tA = Rat(cA * T2).get_num(), tB = Rat(cB * T2).get_num();
  if (Rat(cA * T2).get_den() != 1 || Rat(cB * T2).get_den() != 1)
    throw std::logic_error("preper_points_quad: T^2 c not integral");
  const Int mq = half ? Int((K.D() - 1) / 4) : K.D();  // w^2 = w + mq  or  w^2 = mq

  // Row description: for j in [-J, J], i in [lo_j, lo_j + cnt_j).
  struct Row {
    i128 lo;
    std::int64_t cnt;
    std::int64_t off;
  };
  std::vector<Row> rows;
  long double Jf;
  std::vector<std::pair<long double, long double>> arange;  // A interval per row

  const long double M2 = lat.M2.get_d();
  if (K.is_real()) {
    long double w1 = half ? (1 + sq) / 2 : sq, w2 = half ? (1 - sq) / 2 : -sq;
    long double Y1 = T * radius(std::fabs(cAd + cBd * w1)) * (1 + slack) + 1e-6L;
    long double Y2 = T * radius(std::fabs(cAd + cBd * w2)) * (1 + slack) + 1e-6L;
    Jf = std::floor((Y1 + Y2) / ((w1 - w2) * M2)) + 1;
    for (long double j = -Jf; j <= Jf; j += 1) {
      long double B = j * M2;
      long double lo = std::max(-Y1 - B * w1, -Y2 - B * w2);
      long double hi = std::min(Y1 - B * w1, Y2 - B * w2);
      arange.push_back({lo, hi});
    }
  } else {
    long double re = half ? 0.5L : 0, im = half ? sq / 2 : sq;
    long double absc = std::hypot(cAd + cBd * re, cBd * im);
    long double Y = T * radius(absc) * (1 + slack) + 1e-6L;
    Jf = std::floor(Y / (im * M2)) + 1;
    for (long double j = -Jf; j <= Jf; j += 1) {
      long double B = j * M2;
      long double h2 = Y * Y - (B * im) * (B * im);
      long double h = h2 > 0 ? std::sqrt(h2) : -1;
      arange.push_back({-h - B * re, h - B * re});
    }
  }
  if (Jf > 1e8L) throw std::length_error("preper_points_quad: candidate box too large");
  const std::int64_t J = static_cast<std::int64_t>(Jf);
  if (!fits_i64(lat.M1) || !fits_i64(lat.M2) || !fits_i64(lat.R) || !fits_i64(lat.T) ||
      !fits_i64(tA) || !fits_i64(tB) || !fits_i64(mq))
    throw std::overflow_error("preper_points_quad: lattice data exceeds int64");
  const i128 M1i = to_i64(lat.M1), M2i = to_i64(lat.M2), Ri = to_i64(lat.R), Ti = to_i64(lat.T);
  const i128 tAi = to_i64(tA), tBi = to_i64(tB), mqi = to_i64(mq);

  auto floor_div = [](i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  };

  std::int64_t total = 0;
  for (std::int64_t jj = -J; jj <= J; ++jj) {
    auto [lo, hi] = arange[jj + J];
    i128 B = jj * M2i;
    if (hi < lo) {
      rows.push_back({0, 0, total});
      continue;
    }
    // A = M1 i - R B within [lo, hi], with one unit of slack each side.
    i128 Alo = static_cast<i128>(std::floor(lo)) - 1, Ahi = static_cast<i128>(std::ceil(hi)) + 1;
    i128 ilo = floor_div(Alo + Ri * B, M1i), ihi = floor_div(Ahi + Ri * B, M1i) + 1;
    std::int64_t cnt = static_cast<std::int64_t>(ihi - ilo + 1);
    rows.push_back({ilo, cnt, total});
    total += cnt;
    if (total > 200000000) throw std::length_error("preper_points_quad: too many candidates");
  }

  auto index_of = [&](i128 A, i128 B) -> std::int64_t {
    if (B % M2i != 0) return -1;
    i128 j = B / M2i;
    if (j < -J || j > J) return -1;
    const Row& r = rows[static_cast<std::size_t>(j + J)];
    i128 num = A + Ri * B;
    if (num % M1i != 0) return -1;
    i128 i = num / M1i;
    if (i < r.lo || i >= r.lo + r.cnt) return -1;
    return r.off + static_cast<std::int64_t>(i - r.lo);
  };

  std::vector<int> next(total, -1);
  std::vector<std::pair<i128, i128>> coords(total);
  for (std::int64_t jj = -J; jj <= J; ++jj) {
    const Row& r = rows[jj + J];
    i128 B = jj * M2i;
    for (std::int64_t k = 0; k < r.cnt; ++k) {
      i128 A = M1i * (r.lo + k) - Ri * B;
      coords[r.off + k] = {A, B};
      // y^2 in (1, w) coordinates
      i128 sA, sB;
      if (half) {
        sA = A * A + B * B * mqi;
        sB = 2 * A * B + B * B;
      } else {
        sA = A * A + B * B * mqi;
        sB = 2 * A * B;
      }
      sA += tAi;
      sB += tBi;
      if (sA % Ti != 0 || sB % Ti != 0) continue;
      std::int64_t idx = index_of(sA / Ti, sB / Ti);
      next[r.off + k] = static_cast<int>(idx);
    }
  }
  auto mask = preperiodic_mask(next);
  std::vector<QuadElem> values;
  std::vector<int> remap(total, -1), next2;
  const Rat Tr = Rat(lat.T);
  for (std::int64_t k = 0; k < total; ++k) {
    if (!mask[k]) continue;
    remap[k] = static_cast<int>(values.size());
    Int A = from_i128(coords[k].first), B = from_i128(coords[k].second);
    // A + B w with w = (1 + sqrt D)/2 or sqrt D
    Rat u = half ? Rat(A) + Rat(B, 2) : Rat(A);
    Rat v = half ? Rat(B, 2) : Rat(B);
    u.canonicalize();
    v.canonicalize();
    values.emplace_back(K, u / Tr, v / Tr);
  }
  for (std::int64_t k = 0; k < total; ++k)
    if (mask[k]) next2.push_back(remap[next[k]]);
  PreperSet s = assemble(K, c, std::move(values), next2);
  s.candidates = static_cast<std::size_t>(total);
  return s;
}

Portrait portrait_of(const PreperSet& s) { return {s.graph, classify(s.graph)}; }
Portrait portrait_Q(const Rat& c) { return portrait_of(preper_points_Q(c)); }
Portrait portrait_quad(const QuadElem& c) { return portrait_of(preper_points_quad(c)); }

std::vector<NewPointField> quad_fields_with_new_points(const Rat& c) {
  const Int a = c.get_num(), b = c.get_den();
  // b = s q^2 with s squarefree
  Int s = 1, q = 1;
  for (const auto& [p, e] : factor(b)) {
    if (e % 2) s *= p;
    q *= ipow(p, e / 2);
  }
  // R >= escape radius, generous rounding
  const long double R = 0.5L + std::sqrt(0.25L + std::fabs(static_cast<long double>(c.get_d())));
  const long double Sf = std::floor(2 * q.get_d() * R) + 1;
  const long double Pf = std::floor(b.get_d() * R * R) + 1;
  if ((2 * Sf + 1) * (2 * Pf + 1) > 4e8L)
    throw std::length_error("quad_fields_with_new_points: height too large for the pair sweep");
  const i128 Smax = static_cast<i128>(Sf), Pmax = static_cast<i128>(Pf);
  const i128 ai = to_i64(a), bi = to_i64(b), si = to_i64(s), qi = to_i64(q);
  const i128 W = 2 * Pmax + 1;
  const std::int64_t n = static_cast<std::int64_t>((2 * Smax + 1) * W);

  auto next_of = [&](i128 S, i128 P) -> std::int64_t {
    i128 u = S * S * si;
    i128 num_s = u - 2 * P + 2 * ai;
    if (num_s % (si * qi) != 0) return -1;
    i128 num_p = P * P + ai * (u - 2 * P) + ai * ai;
    if (num_p % bi != 0) return -1;
    i128 S2 = num_s / (si * qi), P2 = num_p / bi;
    if (S2 < -Smax || S2 > Smax || P2 < -Pmax || P2 > Pmax) return -1;
    return static_cast<std::int64_t>((S2 + Smax) * W + (P2 + Pmax));
  };

  std::vector<char> st(n, 0);
  std::vector<std::int64_t> path;
  for (std::int64_t start = 0; start < n; ++start) {
    if (st[start]) continue;
    path.clear();
    std::int64_t v = start;
    char verdict;
    while (true) {
      if (v < 0) {
        verdict = 3;
        break;
      }
      if (st[v] == 1 || st[v] == 2) {
        verdict = 2;
        break;
      }
      if (st[v] == 3) {
        verdict = 3;
        break;
      }
      st[v] = 1;
      path.push_back(v);
      v = next_of(static_cast<i128>(v / W) - Smax, static_cast<i128>(v % W) - Pmax);
    }
    for (auto u : path) st[u] = verdict;
  }

  std::set<Int> discs;
  for (std::int64_t v = 0; v < n; ++v) {
    if (st[v] != 2) continue;
    i128 S = static_cast<i128>(v / W) - Smax, P = static_cast<i128>(v % W) - Pmax;
    Int disc = from_i128(S * S * si - 4 * P) * b;
    if (disc == 0) continue;
    if (disc > 0 && is_perfect_square(disc)) continue;
    discs.insert(squarefree_part(disc));
  }

  const std::size_t base = preper_points_Q(c).points.size();
  std::vector<NewPointField> out;
  for (const Int& D : discs) {
    QuadField K(D);
    NewPointField nf{K, preper_points_quad(QuadElem(K, c, 0)), false};
    if (nf.set.points.size() <= base)
      throw std::logic_error("quad_fields_with_new_points: field " + D.get_str() +
                             " adds no points for c = " + to_string(c));
    for (const auto& p : nf.set.points)
      if (p.m > kTailCap || p.n > kCycleCap) nf.beyond_caps = true;
    out.push_back(std::move(nf));
  }
  return out;
}

void check_preper_set(const PreperSet& s) {
  const int n = static_cast<int>(s.points.size());
  if (s.graph.size() != n) throw std::logic_error("preper set: graph size mismatch");
  auto f = [&](const QuadElem& x) { return x * x + s.c; };
  for (int i = 0; i < n; ++i) {
    const QuadElem& x = s.points[i].value;
    QuadElem y = f(x);
    int j = s.graph.succ[i];
    if (j < 0 || j >= n || !(QuadElem(s.field, y.u(), y.v()) == s.points[j].value))
      throw std::logic_error("preper set: edge disagrees with f_c at " + to_string(x));
    // (m, n) minimal
    const auto [m, per] = std::pair{s.points[i].m, s.points[i].n};
    QuadElem a = x;
    for (int k = 0; k < m; ++k) a = f(a);
    QuadElem b = a;
    for (int k = 0; k < per; ++k) b = f(b);
    if (!(b == a)) throw std::logic_error("preper set: (m, n) inconsistent at " + to_string(x));
    QuadElem c2 = a;
    for (int k = 1; k < per; ++k) {
      c2 = f(c2);
      if (c2 == a) throw std::logic_error("preper set: period not minimal at " + to_string(x));
    }
    if (m > 0) {
      QuadElem pre = x;
      for (int k = 0; k < m - 1; ++k) pre = f(pre);
      QuadElem t = pre;
      for (int k = 0; k < per; ++k) t = f(t);
      if (t == pre) throw std::logic_error("preper set: preperiod not minimal at " + to_string(x));
    }
  }
}

std::string graph_json(const FunctionalGraph& g, const PortraitLabel& label) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::json::array();
  for (int i = 0; i < g.size(); ++i)
    j["vertices"].push_back(g.names.empty() ? std::to_string(i) : g.names[i]);
  j["edges"] = nlohmann::json::array();
  for (int i = 0; i < g.size(); ++i) j["edges"].push_back({i, g.succ[i]});
  j["label"] = label.name();
  j["code"] = to_hex(label.code);
  return j.dump();
}

std::string preper_json(const PreperSet& s, const PortraitLabel& label) {
  nlohmann::ordered_json j;
  j["c"] = to_string(s.c);
  j["field"] = s.field.is_rational() ? std::string("Q") : "Q(sqrt(" + s.field.D().get_str() + "))";
  j["points"] = nlohmann::json::array();
  for (const auto& p : s.points)
    j["points"].push_back({{"value", to_string(p.value)}, {"m", p.m}, {"n", p.n}});
  j["edges"] = nlohmann::json::array();
  for (int i = 0; i < s.graph.size(); ++i) j["edges"].push_back({i, s.graph.succ[i]});
  j["label"] = label.name();
  j["code"] = to_hex(label.code);
  return j.dump();
}

}  // namespace dyn
