#include "dyn/forms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>

namespace dyn {

Int Form::eval(const std::vector<Int>& x) const {
  Int r = 0, m;
  for (const auto& t : terms) {
    m = t.c;
    for (int i = 0; i < nvars; ++i)
      for (int j = 0; j < t.e[i]; ++j) m *= x[i];
    r += m;
  }
  return r;
}

double Form::eval(const std::vector<double>& x) const {
  double r = 0;
  for (const auto& t : terms) {
    double m = t.c.get_d();
    for (int i = 0; i < nvars; ++i) m *= std::pow(x[i], t.e[i]);
    r += m;
  }
  return r;
}

double Form::lipschitz_bound() const {
  double s = 0;
  for (const auto& t : terms) s += std::abs(t.c.get_d()) * degree;
  return s;
}

Form Form::scaled(const Int& s) const {
  Form f = *this;
  for (auto& t : f.terms) t.c *= s;
  return f;
}

std::string Form::to_string(const char* vars) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (!first) os << (t.c < 0 ? " - " : " + ");
    else if (t.c < 0) os << "-";
    first = false;
    Int a = abs(t.c);
    bool mono = std::any_of(t.e.begin(), t.e.end(), [](int e) { return e > 0; });
    if (a != 1 || !mono) os << a;
    bool need_star = a != 1 || !mono;
    for (int i = 0; i < nvars; ++i) {
      if (t.e[i] == 0) continue;
      if (need_star) os << "*";
      need_star = true;
      os << vars[i];
      if (t.e[i] > 1) os << "^" << t.e[i];
    }
  }
  return os.str();
}

Form homogenize(const IntPoly& f, int k) {
  if (f.degree() > k) throw std::invalid_argument("homogenize: degree exceeds k");
  Form out;
  out.nvars = 2;
  out.degree = k;
  for (int i = f.degree(); i >= 0; --i)
    if (f.c[i] != 0) out.terms.push_back({{i, k - i}, f.c[i]});
  return out;
}

HomPair hom_pair(const IntPoly& g0, const IntPoly& g1) {
  int k = std::max(g0.degree(), g1.degree());
  if (gcd(to_qpoly(g0), to_qpoly(g1)).degree() > 0)
    throw std::invalid_argument("hom_pair: g0 and g1 share a factor");
  return {homogenize(g0, k), homogenize(g1, k), k};
}

std::array<Int, 3> HomTriple::eval(const std::array<Int, 3>& x) const {
  std::vector<Int> v(x.begin(), x.end());
  return {H[0].eval(v), H[1].eval(v), H[2].eval(v)};
}

std::array<Int, 3> sym2_coords(const Int& a1, const Int& b1, const Int& a2, const Int& b2) {
  return {a1 * a2, a1 * b2 + a2 * b1, b1 * b2};
}

Int gcd3(const std::array<Int, 3>& v) {
  Int g = 0;
  for (const auto& a : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  return g;
}

namespace {

// Polynomial in (s, p) = (a1 + a2, a1 a2): key (i, j) -> coefficient of s^i p^j.
using SP = std::map<std::pair<int, int>, Int>;

void add_into(SP& acc, const SP& x, const Int& scale, int pshift) {
  for (const auto& [e, c] : x) acc[{e.first, e.second + pshift}] += scale * c;
}

// Power sums a1^m + a2^m in (s, p).
std::vector<SP> power_sums(int maxm) {
  std::vector<SP> N(maxm + 1);
  N[0][{0, 0}] = 2;
  if (maxm >= 1) N[1][{1, 0}] = 1;
  for (int m = 2; m <= maxm; ++m) {
    for (const auto& [e, c] : N[m - 1]) N[m][{e.first + 1, e.second}] += c;
    for (const auto& [e, c] : N[m - 2]) N[m][{e.first, e.second + 1}] -= c;
  }
  return N;
}

// Symmetric polynomial sum_{u,v} coef(u,v) a1^u a2^v with coef symmetric.
Form reduce_symmetric(const std::vector<std::vector<Int>>& coef, int k, const std::vector<SP>& N) {
  SP acc;
  for (int u = 0; u <= k; ++u) {
    for (int v = 0; v <= u; ++v) {
      const Int& c = coef[u][v];
      if (c == 0) continue;
      if (u == v) acc[{0, u}] += c;
      else add_into(acc, N[u - v], c, v);
    }
  }
  // s^i p^j -> x1^i x0^j x2^(k-i-j)
  Form f;
  f.nvars = 3;
  f.degree = k;
  for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
    const auto& [e, c] = *it;
    if (c == 0) continue;
    int i = e.first, j = e.second;
    if (i + j > k) throw std::logic_error("sym2_reduce: weight exceeds degree");
    f.terms.push_back({{j, i, k - i - j}, c});
  }
  std::sort(f.terms.begin(), f.terms.end(),
            [](const Form::Term& a, const Form::Term& b) { return a.e > b.e; });
  return f;
}

}  // namespace

HomTriple sym2_reduce(const HomPair& g) {
  int k = g.k;
  std::vector<Int> c0(k + 1, 0), c1(k + 1, 0);
  for (const auto& t : g.G0.terms) c0[t.e[0]] = t.c;
  for (const auto& t : g.G1.terms) c1[t.e[0]] = t.c;
  auto N = power_sums(k);
  std::vector<std::vector<Int>> e0(k + 1, std::vector<Int>(k + 1)), e1 = e0, e2 = e0;
  for (int u = 0; u <= k; ++u)
    for (int v = 0; v <= k; ++v) {
      e0[u][v] = c0[u] * c0[v];
      e1[u][v] = c0[u] * c1[v] + c0[v] * c1[u];
      e2[u][v] = c1[u] * c1[v];
    }
  HomTriple t;
  t.k = k;
  t.H = {reduce_symmetric(e0, k, N), reduce_symmetric(e1, k, N), reduce_symmetric(e2, k, N)};
  return t;
}

double min_sup_sphere(const std::vector<Form>& forms, const std::vector<double>& weights) {
  if (forms.empty()) throw std::invalid_argument("min_sup_sphere: no forms");
  const int n = forms[0].nvars;
  // On a face every coordinate lies in [-1, 1], so second derivatives of a
  // term c x^e are bounded by |c| deg (deg - 1) in the sum over index pairs.
  std::vector<double> second(forms.size(), 0.0);
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (const auto& t : forms[i].terms)
      second[i] += std::abs(t.c.get_d()) * forms[i].degree * (forms[i].degree - 1);
  struct Cell {
    int face;
    std::vector<double> center;  // free coordinates
    double r;
  };
  auto embed = [&](const Cell& c) {
    std::vector<double> x(n);
    for (int i = 0, j = 0; i < n; ++i) x[i] = i == c.face ? 1.0 : c.center[j++];
    return x;
  };
  // Value of the objective at the centre and a lower bound over the cell:
  // |F(c + h)| >= |F(c)| - r |grad F(c)|_1 - r^2 / 2 * second.
  auto bounds = [&](const Cell& c) {
    const std::vector<double> x = embed(c);
    double v = 0, lb = 0;
    for (std::size_t i = 0; i < forms.size(); ++i) {
      double f = 0;
      std::vector<double> grad(n, 0.0);
      for (const auto& t : forms[i].terms) {
        const double coef = t.c.get_d();
        double mono = coef;
        for (int j = 0; j < n; ++j) mono *= std::pow(x[j], t.e[j]);
        f += mono;
        for (int j = 0; j < n; ++j) {
          if (j == c.face || t.e[j] == 0) continue;
          double d = coef * t.e[j];
          for (int l = 0; l < n; ++l) d *= std::pow(x[l], l == j ? t.e[l] - 1 : t.e[l]);
          grad[j] += d;
        }
      }
      double g1 = 0;
      for (double g : grad) g1 += std::abs(g);
      v = std::max(v, weights[i] * std::abs(f));
      lb = std::max(lb, weights[i] * (std::abs(f) - c.r * g1 - 0.5 * c.r * c.r * second[i]));
    }
    return std::pair<double, double>{v, lb};
  };
  constexpr int kMaxDepth = 30;
  constexpr std::size_t kBudget = 4000000;
  double best = INFINITY;
  double floor_bound = INFINITY;
  std::vector<Cell> stack;
  // |F(-x)| = |F(x)| for homogeneous F, so faces x_j = +1 suffice.
  for (int face = 0; face < n; ++face) stack.push_back({face, std::vector<double>(n - 1, 0.0), 1.0});
  // Coarse grid estimate of the minimum to prune against.
  {
    const int g = n == 2 ? 4096 : 256;
    for (int face = 0; face < n; ++face) {
      std::vector<int> idx(n - 1, 0);
      while (true) {
        Cell c{face, std::vector<double>(n - 1), 0};
        for (int j = 0; j < n - 1; ++j) c.center[j] = -1.0 + 2.0 * idx[j] / g;
        best = std::min(best, bounds(c).first);
        int j = 0;
        while (j < n - 1 && ++idx[j] > g) idx[j++] = 0;
        if (j == n - 1) break;
      }
    }
  }
  const double target = 0.9 * best;
  std::size_t visited = 0;
  while (!stack.empty()) {
    Cell c = std::move(stack.back());
    stack.pop_back();
    auto [v, lb] = bounds(c);
    best = std::min(best, v);
    if (lb >= target) continue;
    if (std::log2(1.0 / c.r) >= kMaxDepth || ++visited > kBudget) {
      floor_bound = std::min(floor_bound, std::max(lb, 0.0));
      continue;
    }
    double h = c.r / 2;
    int children = 1 << (n - 1);
    for (int m = 0; m < children; ++m) {
      Cell d{c.face, c.center, h};
      for (int j = 0; j < n - 1; ++j) d.center[j] += (m >> j & 1) ? h : -h;
      stack.push_back(std::move(d));
    }
  }
  return std::min(target, floor_bound);
}

}  // namespace dyn
