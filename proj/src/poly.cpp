#include "dyn/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dyn {

template <class T>
std::string Poly<T>::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c[i];
    if (i >= 1) os << "*" << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

template struct Poly<Int>;
template struct Poly<Rat>;

Int content(const IntPoly& p) {
  Int g = 0;
  for (const auto& a : p.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  Int g = content(p);
  if (p.lead() < 0) g = -g;
  std::vector<Int> v(p.c);
  for (auto& a : v) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

QPoly to_qpoly(const IntPoly& p) {
  std::vector<Rat> v;
  v.reserve(p.c.size());
  for (const auto& a : p.c) v.emplace_back(a);
  return QPoly(std::move(v));
}

IntPoly to_primitive_intpoly(const QPoly& p) {
  Int l = 1;
  for (const auto& a : p.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
  std::vector<Int> v;
  for (const auto& a : p.c) v.emplace_back(Int(a.get_num() * (l / a.get_den())));
  return primitive_part(IntPoly(std::move(v)));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rat> r(a.c);
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) return {QPoly(), a};
  std::vector<Rat> q(dq + 1, Rat(0));
  Rat inv = 1 / b.lead();
  for (int i = dq; i >= 0; --i) {
    Rat t = r[i + db] * inv;
    q[i] = t;
    if (t == 0) continue;
    for (int j = 0; j <= db; ++j) r[i + j] -= t * b.c[j];
  }
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly monic(const QPoly& a) {
  if (a.is_zero()) return a;
  Rat inv = 1 / a.lead();
  return inv * a;
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

IntPoly divexact(const IntPoly& a, const IntPoly& b) {
  auto [q, r] = divmod(to_qpoly(a), to_qpoly(b));
  if (!r.is_zero()) throw std::logic_error("divexact: nonzero remainder");
  std::vector<Int> v;
  for (const auto& x : q.c) {
    if (x.get_den() != 1) throw std::logic_error("divexact: non-integral quotient");
    v.emplace_back(x.get_num());
  }
  return IntPoly(std::move(v));
}

static std::vector<Int> divisors(const Int& n) {
  std::vector<Int> ds{1};
  for (auto& [p, e] : factor(n)) {
    std::size_t m = ds.size();
    Int pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < m; ++i) ds.push_back(ds[i] * pk);
    }
  }
  return ds;
}

std::vector<Rat> rational_roots(const IntPoly& p0) {
  if (p0.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  std::set<Rat> roots;
  IntPoly p = p0;
  std::size_t shift = 0;
  while (shift < p.c.size() && p.c[shift] == 0) ++shift;
  if (shift > 0) {
    roots.insert(Rat(0));
    p = IntPoly(std::vector<Int>(p.c.begin() + shift, p.c.end()));
  }
  if (p.degree() >= 1) {
    p = primitive_part(p);
    auto num = divisors(p.c[0]);
    auto den = divisors(p.lead());
    for (const auto& d : den)
      for (const auto& n : num)
        for (int s : {1, -1}) {
          Rat x = make_rat(Int(s * n), d);
          if (x.get_den() != d) continue;  // already tried with smaller denominator
          if (p.eval(x) == 0) roots.insert(x);
        }
  }
  return {roots.begin(), roots.end()};
}

static Int bareiss_det(std::vector<std::vector<Int>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

static Int sylvester(const IntPoly& f, const IntPoly& g, int df, int dg) {
  const int n = df + dg;
  if (n == 0) return 1;
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n, 0));
  for (int r = 0; r < dg; ++r)
    for (int i = 0; i <= df; ++i) m[r][r + i] = f.coef(df - i);
  for (int r = 0; r < df; ++r)
    for (int i = 0; i <= dg; ++i) m[dg + r][r + i] = g.coef(dg - i);
  return bareiss_det(std::move(m));
}

Int resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  return sylvester(f, g, f.degree(), g.degree());
}

Int homogeneous_resultant(const IntPoly& f, const IntPoly& g, int k) {
  return sylvester(f, g, k, k);
}

bool is_squarefree_poly(const IntPoly& p) {
  auto q = to_qpoly(p);
  return gcd(q, q.derivative()).degree() == 0;
}

IntPoly parse_intpoly_list(const std::string& csv) {
  std::vector<Int> v;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto b = tok.find_first_not_of(" \t");
    auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    v.push_back(Int(parse_rat(tok.substr(b, e - b + 1)).get_num()));
  }
  return IntPoly(std::move(v));
}

}  // namespace dyn
