#include "dyn/dynatomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace dyn {

int BivarPoly::deg_c() const {
  int d = -1;
  for (const auto& p : z) d = std::max(d, p.degree());
  return d;
}

BivarPoly BivarPoly::var_z() { return BivarPoly({IntPoly(), IntPoly{1}}); }
BivarPoly BivarPoly::var_c() { return BivarPoly({IntPoly{0, 1}}); }
BivarPoly BivarPoly::constant(long a) { return BivarPoly({IntPoly{a}}); }

BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) {
  std::vector<IntPoly> v(std::max(a.z.size(), b.z.size()));
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.coef(j) + b.coef(j);
  return BivarPoly(std::move(v));
}

BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) {
  std::vector<IntPoly> v(std::max(a.z.size(), b.z.size()));
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.coef(j) - b.coef(j);
  return BivarPoly(std::move(v));
}

// Dense product on a flat grid with mpz_addmul; much faster than nested
// IntPoly products for the iterates.
BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  if (a.is_zero() || b.is_zero()) return BivarPoly();
  const int az = a.deg_z(), bz = b.deg_z();
  const int ac = a.deg_c(), bc = b.deg_c();
  const int rz = az + bz, rc = ac + bc;
  std::vector<mpz_class> g(static_cast<std::size_t>(rz + 1) * (rc + 1));
  for (int i = 0; i <= az; ++i) {
    const auto& pa = a.z[i].c;
    for (int j = 0; j <= bz; ++j) {
      const auto& pb = b.z[j].c;
      mpz_class* row = &g[static_cast<std::size_t>(i + j) * (rc + 1)];
      for (std::size_t s = 0; s < pa.size(); ++s) {
        if (pa[s] == 0) continue;
        for (std::size_t t = 0; t < pb.size(); ++t)
          mpz_addmul(row[s + t].get_mpz_t(), pa[s].get_mpz_t(), pb[t].get_mpz_t());
      }
    }
  }
  std::vector<IntPoly> v(rz + 1);
  for (int k = 0; k <= rz; ++k) {
    auto first = g.begin() + static_cast<std::ptrdiff_t>(k) * (rc + 1);
    v[k] = IntPoly(std::vector<Int>(std::make_move_iterator(first),
                                    std::make_move_iterator(first + rc + 1)));
  }
  return BivarPoly(std::move(v));
}

BivarPoly BivarPoly::compose_z(const BivarPoly& q) const {
  BivarPoly r;
  for (int j = deg_z(); j >= 0; --j) r = r * q + BivarPoly({z[j]});
  return r;
}

std::string BivarPoly::dump() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = deg_z(); j >= 0; --j)
    for (int i = z[j].degree(); i >= 0; --i) {
      if (z[j].c[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << z[j].c[i] << "*c^" << i << "*z^" << j;
    }
  return os.str();
}

BivarPoly divexact_monic(const BivarPoly& a, const BivarPoly& b) {
  if (b.is_zero() || !(b.z.back() == IntPoly{1}))
    throw std::invalid_argument("divexact_monic: divisor not monic in z");
  const int db = b.deg_z();
  std::vector<IntPoly> r(a.z);
  const int dq = a.deg_z() - db;
  if (dq < 0) {
    if (!a.is_zero()) throw std::logic_error("divexact_monic: nonzero remainder");
    return BivarPoly();
  }
  std::vector<IntPoly> q(dq + 1);
  for (int i = dq; i >= 0; --i) {
    q[i] = r[i + db];
    if (q[i].is_zero()) continue;
    for (int j = 0; j < db; ++j)
      if (!b.z[j].is_zero()) r[i + j] = r[i + j] - q[i] * b.z[j];
    r[i + db] = IntPoly();
  }
  for (int j = 0; j < db; ++j)
    if (!r[j].is_zero()) throw std::logic_error("divexact_monic: nonzero remainder");
  return BivarPoly(std::move(q));
}

namespace {

std::mutex g_memo_mu;
std::map<int, BivarPoly> g_iter, g_phi;

void check_range(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi)
    throw std::out_of_range(std::string(what) + ": argument " + std::to_string(n) +
                            " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

}  // namespace

const BivarPoly& fc_iterate(int n) {
  check_range(n, 1, kIterateCap, "fc_iterate");
  std::lock_guard<std::mutex> lock(g_memo_mu);
  auto it = g_iter.find(n);
  if (it != g_iter.end()) return it->second;
  BivarPoly f = BivarPoly::var_z() * BivarPoly::var_z() + BivarPoly::var_c();
  g_iter.emplace(1, f);
  int start = 1;
  for (int k = n - 1; k >= 1; --k)
    if (g_iter.count(k)) {
      f = g_iter.at(k);
      start = k;
      break;
    }
  for (int k = start + 1; k <= n; ++k) {
    f = f * f + BivarPoly::var_c();
    g_iter.emplace(k, f);
  }
  return g_iter.at(n);
}

const BivarPoly& dynatomic(int N) {
  check_range(N, 1, kPeriodCap, "dynatomic");
  {
    std::lock_guard<std::mutex> lock(g_memo_mu);
    auto it = g_phi.find(N);
    if (it != g_phi.end()) return it->second;
  }
  BivarPoly num = BivarPoly::constant(1), den = BivarPoly::constant(1);
  for (int n : divisors(N)) {
    int mu = mobius(N / n);
    if (mu == 0) continue;
    BivarPoly t = fc_iterate(n) - BivarPoly::var_z();
    (mu > 0 ? num : den) = (mu > 0 ? num : den) * t;
  }
  BivarPoly phi = divexact_monic(num, den);
  std::lock_guard<std::mutex> lock(g_memo_mu);
  return g_phi.emplace(N, std::move(phi)).first->second;
}

BivarPoly gen_dynatomic(int M, int N) {
  check_range(M, 1, kPreperiodCap, "gen_dynatomic");
  const BivarPoly& phi = dynatomic(N);
  BivarPoly phi1 = divexact_monic(phi.compose_z(fc_iterate(1)), phi);
  if (M == 1) return phi1;
  return phi1.compose_z(fc_iterate(M - 1));
}

Int degree_D(int N) {
  if (N < 1) throw std::invalid_argument("degree_D: N must be positive");
  Int d = 0;
  for (int n : divisors(N)) d += mobius(N / n) * ipow(2, n);
  return d;
}

Int cycle_bound_R(int N) {
  if (N == 1) return 2;
  Int d = degree_D(N);
  if (d % N != 0) throw std::logic_error("cycle_bound_R: N does not divide D(N)");
  return d / N;
}

QPoly specialize(const BivarPoly& p, const Rat& c) {
  std::vector<Rat> v;
  v.reserve(p.z.size());
  for (const auto& q : p.z) v.push_back(q.eval(c));
  return QPoly(std::move(v));
}

std::vector<QuadElem> specialize(const BivarPoly& p, const QuadElem& c) {
  std::vector<QuadElem> v;
  v.reserve(p.z.size());
  for (const auto& q : p.z) {
    QuadElem r(c.field(), 0);
    for (int i = q.degree(); i >= 0; --i) r = r * c + QuadElem(c.field(), Rat(q.c[i]));
    v.push_back(r);
  }
  while (!v.empty() && v.back().is_zero()) v.pop_back();
  return v;
}

namespace {

QPoly iterate_at(int n, const Rat& c) {
  QPoly cc = QPoly::constant(c);
  QPoly r({Rat(0), Rat(1)});
  for (int k = 0; k < n; ++k) r = r * r + cc;
  return r;
}

QPoly exact_quotient(const QPoly& a, const QPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("dynatomic: nonzero remainder");
  return q;
}

}  // namespace

QPoly dynatomic_at(int N, const Rat& c) {
  check_range(N, 1, kIterateCap, "dynatomic_at");
  QPoly num = QPoly::constant(1), den = QPoly::constant(1);
  const QPoly z({Rat(0), Rat(1)});
  for (int n : divisors(N)) {
    int mu = mobius(N / n);
    if (mu == 0) continue;
    QPoly t = iterate_at(n, c) - z;
    if (mu > 0)
      num = num * t;
    else
      den = den * t;
  }
  return exact_quotient(num, den);
}

QPoly gen_dynatomic_at(int M, int N, const Rat& c) {
  if (M < 1) throw std::out_of_range("gen_dynatomic_at: M must be positive");
  QPoly phi = dynatomic_at(N, c);
  QPoly top = phi.compose(iterate_at(M, c));
  QPoly bot = M == 1 ? phi : phi.compose(iterate_at(M - 1, c));
  return exact_quotient(top, bot);
}

}  // namespace dyn
