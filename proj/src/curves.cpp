#include "dyn/curves.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

#include "dyn/funcfield.hpp"

namespace dyn {

namespace {
#include "catalog_data.inc"

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

PolyXY parse_polyxy(const std::string& s) {
  PolyXY p;
  for (const auto& part : split(s, '|')) p.y.push_back(parse_intpoly_list(part));
  while (!p.y.empty() && p.y.back().is_zero()) p.y.pop_back();
  return p;
}

RatXY parse_ratxy(const std::string& s) {
  auto parts = split(s, '/');
  if (parts.size() != 2) throw std::runtime_error("catalog: expected 'num / den' in '" + s + "'");
  return {parse_polyxy(parts[0]), parse_polyxy(parts[1])};
}

}  // namespace

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<CurveRecord> parse_catalog(std::string_view text) {
  std::vector<CurveRecord> out;
  std::istringstream in{std::string(text)};
  std::string line, body;
  std::optional<CurveRecord> cur;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("catalog line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto sp = line.find(' ');
    std::string key = line.substr(0, sp);
    std::string val = sp == std::string::npos ? "" : trim(line.substr(sp + 1));
    if (key == "record") {
      if (cur) fail("nested record");
      cur = CurveRecord{};
      cur->label = parse_label(val);
      body = line + "\n";
      continue;
    }
    if (!cur) fail("data outside a record");
    if (key == "checksum") {
      char buf[17];
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(body)));
      if (val != buf)
        fail("checksum mismatch for " + label_name(cur->label) + " (stored " + val +
             ", computed " + buf + ")");
      continue;
    }
    if (key == "end") {
      if (cur->pi.k == 0 && cur->label != Label::Other) fail("record without pi");
      out.push_back(std::move(*cur));
      cur.reset();
      continue;
    }
    body += line + "\n";
    if (key == "genus") {
      cur->genus = std::stoi(val);
    } else if (key == "aut") {
      cur->aut_order = std::stoi(val);
    } else if (key == "pi") {
      auto parts = split(val, '/');
      if (parts.size() != 2) fail("pi expects 'g0 / g1'");
      cur->pi.g0 = parse_intpoly_list(parts[0]);
      cur->pi.g1 = parse_intpoly_list(parts[1]);
      cur->pi.k = std::max(cur->pi.g0.degree(), cur->pi.g1.degree());
    } else if (key == "model") {
      cur->h = parse_intpoly_list(val);
    } else if (key == "lmfdb") {
      cur->lmfdb = val;
    } else if (key == "map") {
      auto parts = split(val, ';');
      AutElement e;
      e.text = val;
      e.X = parse_ratxy(parts.at(0));
      if (parts.size() > 1) e.Y = parse_ratxy(parts[1]);
      cur->aut.push_back(std::move(e));
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (cur) throw std::runtime_error("catalog: unterminated record");
  return out;
}

const std::vector<CurveRecord>& curve_catalog() {
  static const std::vector<CurveRecord> cat = [] {
    auto recs = parse_catalog(kCatalogText);
    std::vector<CurveRecord> ordered;
    for (Label l : named_labels()) {
      auto it = std::find_if(recs.begin(), recs.end(),
                             [&](const CurveRecord& r) { return r.label == l; });
      if (it == recs.end()) throw std::runtime_error("catalog: missing record " + label_name(l));
      if (it->genus != label_genus(l) || it->aut_order != label_aut_order(l))
        throw std::runtime_error("catalog: genus/|Aut| disagree for " + label_name(l));
      ordered.push_back(*it);
    }
    return ordered;
  }();
  return cat;
}

const CurveRecord& curve_record(Label l) {
  if (l == Label::Other) throw std::invalid_argument("curve_record: Other has no curve");
  return curve_catalog().at(static_cast<int>(l));
}

std::optional<Rat> eval_pi(Label l, const Rat& x) {
  const auto& pi = curve_record(l).pi;
  Rat den = pi.g1.eval(x);
  if (den == 0) return std::nullopt;
  return pi.g0.eval(x) / den;
}

std::optional<Rat> eval_pi_hom(Label l, const Int& a, const Int& b) {
  const auto& pi = curve_record(l).pi;
  Int num = pi.g0.eval_hom(a, b, pi.k), den = pi.g1.eval_hom(a, b, pi.k);
  if (den == 0) return std::nullopt;
  return make_rat(num, den);
}

std::optional<QuadElem> eval_pi(Label l, const QuadElem& x) {
  const auto& pi = curve_record(l).pi;
  auto horner = [&](const IntPoly& p) {
    QuadElem r(x.field(), 0);
    for (int i = p.degree(); i >= 0; --i) r = r * x + QuadElem(x.field(), Rat(p.c[i]));
    return r;
  };
  QuadElem den = horner(pi.g1);
  if (den.is_zero()) return std::nullopt;
  return horner(pi.g0) / den;
}

namespace {
IntPoly fiber_poly(const RationalMap1D& pi, const Rat& c) {
  return Int(c.get_den()) * pi.g0 - Int(c.get_num()) * pi.g1;
}
}  // namespace

std::vector<Rat> solve_fiber(Label l, const Rat& c) {
  const auto& pi = curve_record(l).pi;
  IntPoly f = fiber_poly(pi, c);
  if (f.is_zero()) throw std::logic_error("solve_fiber: pi is constant");
  std::vector<Rat> out;
  for (const auto& x : rational_roots(f))
    if (pi.g1.eval(x) != 0) out.push_back(x);
  return out;
}

bool fiber_contains_infinity(Label l, const Rat& c) {
  const auto& pi = curve_record(l).pi;
  return fiber_poly(pi, c).degree() < pi.k;
}

// ---------------------------------------------------------------------------
// Aut verification

AutReport verify_aut(Label l) {
  const CurveRecord& r = curve_record(l);
  AutReport rep;
  rep.label = l;
  FuncField F(r.h);
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.failures.push_back(label_name(l) + ": " + msg);
  };
  struct Elt {
    FFElem X, Y;
  };
  std::vector<Elt> elts;
  bool curve = r.genus >= 1;
  FFElem px = F.x();
  FFElem g0x = F.eval(r.pi.g0, px), g1x = F.eval(r.pi.g1, px);
  for (const auto& a : r.aut) {
    Elt e;
    try {
      e.X = F.div(F.from_poly(a.X.num), F.from_poly(a.X.den));
      if (curve) {
        if (!a.Y) {
          fail("map '" + a.text + "' lacks a y-component");
          continue;
        }
        e.Y = F.div(F.from_poly(a.Y->num), F.from_poly(a.Y->den));
        FFElem lhs = F.mul(e.Y, e.Y), rhs = F.eval(*r.h, e.X);
        if (!F.equal(lhs, rhs)) fail("map '" + a.text + "' does not preserve y^2 = h(x)");
      }
      FFElem g1X = F.eval(r.pi.g1, e.X);
      if (F.is_zero(g1X)) {
        fail("map '" + a.text + "' sends x to a pole of pi");
        continue;
      }
      FFElem lhs = F.mul(F.eval(r.pi.g0, e.X), g1x), rhs = F.mul(g1X, g0x);
      if (!F.equal(lhs, rhs)) fail("map '" + a.text + "': pi(sigma) != pi");
    } catch (const std::exception& ex) {
      fail("map '" + a.text + "': " + ex.what());
      continue;
    }
    elts.push_back(e);
  }
  if (!rep.ok) return rep;

  auto same = [&](const Elt& u, const Elt& v) {
    return F.equal(u.X, v.X) && (!curve || F.equal(u.Y, v.Y));
  };
  auto find = [&](const Elt& u) {
    for (std::size_t i = 0; i < elts.size(); ++i)
      if (same(elts[i], u)) return static_cast<int>(i);
    return -1;
  };
  for (std::size_t i = 0; i < elts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (same(elts[i], elts[j])) fail("duplicate elements '" + r.aut[i].text + "'");
  Elt id{px, curve ? F.y() : FFElem{}};
  if (find(id) < 0) fail("identity missing");
  // sigma o tau: substitute tau's coordinates into sigma.
  for (std::size_t i = 0; i < elts.size() && rep.ok; ++i) {
    for (std::size_t j = 0; j < elts.size(); ++j) {
      const auto& s = r.aut[i];
      const Elt& t = elts[j];
      FFElem tY = curve ? t.Y : F.constant(0);
      Elt comp;
      comp.X = F.div(F.eval(s.X.num, t.X, tY), F.eval(s.X.den, t.X, tY));
      if (curve) comp.Y = F.div(F.eval(s.Y->num, t.X, tY), F.eval(s.Y->den, t.X, tY));
      if (find(comp) < 0) {
        fail("not closed: '" + s.text + "' o '" + r.aut[j].text + "'");
        break;
      }
    }
  }
  rep.group_order = static_cast<int>(elts.size());
  if (rep.group_order != r.aut_order)
    fail("group order " + std::to_string(rep.group_order) + " != " + std::to_string(r.aut_order));
  return rep;
}

HomPair hom_pair_of(Label l) {
  const auto& pi = curve_record(l).pi;
  return hom_pair(pi.g0, pi.g1);
}

// ---------------------------------------------------------------------------
// Sym^2

namespace {
Form ternary(std::initializer_list<std::pair<std::array<int, 3>, long>> terms) {
  Form f;
  f.nvars = 3;
  f.degree = 4;
  for (const auto& [e, c] : terms) f.terms.push_back({{e[0], e[1], e[2]}, Int(c)});
  return f;
}
}  // namespace

HomTriple sym2_map_8211() {
  HomTriple t;
  t.k = 4;
  t.H[0] = ternary({{{4, 0, 0}, 16},
                    {{2, 2, 0}, -32},
                    {{0, 4, 0}, 16},
                    {{3, 0, 1}, 64},
                    {{1, 2, 1}, -64},
                    {{2, 0, 2}, 96},
                    {{0, 2, 2}, -32},
                    {{1, 0, 3}, 64},
                    {{0, 0, 4}, 16}});
  t.H[1] = ternary({{{4, 0, 0}, 24},
                    {{2, 2, 0}, 16},
                    {{0, 4, 0}, 24},
                    {{3, 0, 1}, -32},
                    {{1, 2, 1}, -96},
                    {{2, 0, 2}, -112},
                    {{0, 2, 2}, 16},
                    {{1, 0, 3}, -32},
                    {{0, 0, 4}, 24}});
  t.H[2] = ternary({{{4, 0, 0}, 9},
                    {{2, 2, 0}, 30},
                    {{0, 4, 0}, 9},
                    {{3, 0, 1}, -60},
                    {{1, 2, 1}, -36},
                    {{2, 0, 2}, 118},
                    {{0, 2, 2}, 30},
                    {{1, 0, 3}, -60},
                    {{0, 0, 4}, 9}});
  return t;
}

std::array<Int, 3> apply_sym2_convention(int variant, bool output, std::array<Int, 3> v) {
  int bits = output ? variant >> 2 : variant;
  if (bits & 1) std::swap(v[0], v[2]);
  if (bits & 2) v[1] = -v[1];
  return v;
}

std::string sym2_convention_name(int variant) {
  auto part = [](int bits) {
    std::string s = (bits & 1) ? "reversed" : "as is";
    if (bits & 2) s += ", middle negated";
    return s;
  };
  return "input " + part(variant & 3) + "; output " + part(variant >> 2 & 3);
}

namespace {
bool projectively_equal(const std::array<Int, 3>& u, const std::array<Int, 3>& v) {
  if (gcd3(u) == 0 || gcd3(v) == 0) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (u[i] * v[j] != u[j] * v[i]) return false;
  return true;
}
}  // namespace

Sym2Report verify_sym2(int samples, std::uint64_t seed) {
  Sym2Report rep;
  HomTriple H = sym2_map_8211();
  HomPair G = hom_pair_of(Label::P8_211);
  rep.image_101 = H.eval({1, 0, 1});

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-60, 60);
  std::array<int, 16> hits{};
  int taken = 0;
  std::ostringstream diag;
  while (taken < samples) {
    Int a1 = coord(rng), b1 = coord(rng), a2 = coord(rng), b2 = coord(rng);
    // Points with b = 0 or on a pole of pi are excluded.
    if (b1 == 0 || b2 == 0) continue;
    Int g1p = G.G1.eval({a1, b1}), g1q = G.G1.eval({a2, b2});
    if (g1p == 0 || g1q == 0) continue;
    Int g0p = G.G0.eval({a1, b1}), g0q = G.G0.eval({a2, b2});
    auto in = sym2_coords(a1, b1, a2, b2);
    auto out = sym2_coords(g0p, g1p, g0q, g1q);
    ++taken;
    for (int v = 0; v < 16; ++v) {
      auto img = H.eval(apply_sym2_convention(v, false, in));
      if (projectively_equal(img, apply_sym2_convention(v, true, out))) ++hits[v];
      else if (v == 0 && taken <= 3)
        diag << "sample " << taken << ": input [" << in[0] << "," << in[1] << "," << in[2]
             << "] gives [" << img[0] << "," << img[1] << "," << img[2] << "]\n";
    }
  }
  rep.samples = taken;
  for (int v = 0; v < 16; ++v)
    if (hits[v] == taken) rep.matching.push_back(v);
  if (!rep.matching.empty()) rep.variant = rep.matching.front();
  rep.ok = rep.variant >= 0;
  if (!rep.ok) {
    diag << "no convention matches all samples; best hit counts:";
    for (int v = 0; v < 16; ++v) diag << " " << hits[v];
    rep.diagnostics = diag.str();
    return rep;
  }

  // Compare the transcription with our own reduction under the pinned
  // convention on a 5x5x5 grid (enough to identify quartics).
  HomTriple E = sym2_reduce(G);
  rep.reduction_agrees = true;
  for (int i = -2; i <= 2 && rep.reduction_agrees; ++i)
    for (int j = -2; j <= 2 && rep.reduction_agrees; ++j)
      for (int k = -2; k <= 2; ++k) {
        std::array<Int, 3> w{i, j, k};
        auto lhs = H.eval(w);
        auto rhs = apply_sym2_convention(rep.variant, true,
                                         E.eval(apply_sym2_convention(rep.variant, false, w)));
        if (lhs != rhs) {
          rep.reduction_agrees = false;
          diag << "transcription differs from reduction at [" << i << "," << j << "," << k << "]";
          break;
        }
      }
  rep.diagnostics = diag.str();
  return rep;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

// b^e h(a/b) with e = deg h rounded up to even; a square iff h(a/b) is.
Int h_value_even(const IntPoly& h, const Int& a, const Int& b) {
  int e = h.degree() + (h.degree() % 2);
  return h.eval_hom(a, b, e);
}

template <class F>
void for_each_rational(const Int& hbound, F&& f) {
  for (Int b = 1; b <= hbound; ++b)
    for (Int a = -hbound; a <= hbound; ++a) {
      Int g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      if (g != 1) continue;
      f(a, b);
    }
}

}  // namespace

void generate_c_degree1(Label l, const Int& hbound,
                        const std::function<void(const Rat& x, const Rat& c)>& emit) {
  const CurveRecord& r = curve_record(l);
  for_each_rational(hbound, [&](const Int& a, const Int& b) {
    if (r.h) {
      Int v = h_value_even(*r.h, a, b);
      if (v < 0 || !is_perfect_square(v)) return;
    }
    Rat x = make_rat(a, b);
    if (auto c = eval_pi(l, x)) emit(x, *c);
  });
}

void generate_cK_degree2(
    Label l, const Int& hbound,
    const std::function<void(const QuadElem& x, const QuadElem& c, const QuadField& K)>& emit) {
  const CurveRecord& r = curve_record(l);
  if (r.h) {
    for_each_rational(hbound, [&](const Int& a, const Int& b) {
      Int v = h_value_even(*r.h, a, b);
      if (v == 0 || (v > 0 && is_perfect_square(v))) return;
      Rat x = make_rat(a, b);
      auto c = eval_pi(l, x);
      if (!c) return;
      QuadField K(squarefree_part(v));
      emit(QuadElem(K, x), QuadElem(K, *c), K);
    });
    return;
  }
  Int M = hbound * hbound;
  Rat B2 = Rat(M);
  for (Int A = 1; A <= M; ++A)
    for (Int C = -M; C <= M; ++C) {
      if (C == 0) continue;
      for (Int Bc = -2 * M; Bc <= 2 * M; ++Bc) {
        Int g;
        mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), Bc.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), C.get_mpz_t());
        if (g != 1) continue;
        Int disc = Bc * Bc - 4 * A * C;
        if (disc >= 0 && is_perfect_square(disc)) continue;
        if (!mahler_quadratic_le(A, Bc, C, B2)) continue;
        Int D = squarefree_part(disc);
        Int s = isqrt(Int(disc / D));
        QuadField K(D);
        QuadElem x(K, make_rat(-Bc, 2 * A), make_rat(s, 2 * A));
        if (auto c = eval_pi(l, x)) emit(x, *c, K);
      }
    }
}

std::vector<std::pair<Rat, QuadField>> nabla_exemplars(Label l, int count) {
  const CurveRecord& r = curve_record(l);
  if (!r.h) throw std::invalid_argument("nabla_exemplars: " + label_name(l) + " has genus 0");
  std::vector<std::pair<Rat, QuadField>> out;
  std::vector<Rat> seen;
  for (Int H = 1; static_cast<int>(out.size()) < count; ++H) {
    if (H > 10000) throw std::runtime_error("nabla_exemplars: search exhausted");
    // Points of height exactly H: a/b with max(|a|, b) = H.
    for (Int b = 1; b <= H && static_cast<int>(out.size()) < count; ++b)
      for (Int a = -H; a <= H && static_cast<int>(out.size()) < count; ++a) {
        if (abs(a) != H && b != H) continue;
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (g != 1) continue;
        Int v = h_value_even(*r.h, a, b);
        if (v == 0 || (v > 0 && is_perfect_square(v))) continue;
        auto c = eval_pi(l, make_rat(a, b));
        if (!c || std::find(seen.begin(), seen.end(), *c) != seen.end()) continue;
        seen.push_back(*c);
        out.emplace_back(*c, QuadField(squarefree_part(v)));
      }
  }
  return out;
}

std::string xc_tsv(const std::vector<std::pair<Rat, Rat>>& rows) {
  std::string s = "x\tc\n";
  for (const auto& [x, c] : rows) s += to_string(x) + "\t" + to_string(c) + "\n";
  return s;
}

}  // namespace dyn
