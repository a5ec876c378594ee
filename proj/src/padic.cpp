#include <omp.h>

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <map>
#include <stdexcept>

#include "dyn/constants.hpp"

namespace dyn {

namespace {

constexpr int kMaxLevel = 64;
using Counts = std::array<std::array<std::uint64_t, kMaxLevel + 1>, kMaxLevel + 1>;  // [v][m]

// Forms reduced mod P = p^L, evaluated on residue representatives.  For
// p = 2, P = 2^64 and arithmetic wraps; otherwise p^L < 2^62 and products go
// through 128 bits.
class ModEvaluator {
 public:
  ModEvaluator(const std::vector<Form>& forms, const Int& p) {
    if (!fits_i64(p) || p < 2) throw std::invalid_argument("valuation_distribution: bad prime");
    p_ = static_cast<std::uint64_t>(p.get_ui());
    n_ = forms.at(0).nvars;
    if (n_ > 3) throw std::invalid_argument("valuation_distribution: at most 3 variables");
    wrap_ = p_ == 2;
    if (wrap_) {
      levels_ = 64;
    } else {
      levels_ = 0;
      unsigned __int128 q = 1;
      while (q * p_ < (static_cast<unsigned __int128>(1) << 62)) {
        q *= p_;
        ++levels_;
      }
      P_ = static_cast<std::uint64_t>(q);
    }
    degree_ = forms[0].degree;
    if (degree_ > 31) throw std::invalid_argument("valuation_distribution: degree above 31");
    for (const auto& f : forms) {
      if (f.nvars != n_ || f.degree != degree_)
        throw std::invalid_argument("valuation_distribution: forms of unequal shape");
      std::vector<Term> ts;
      for (const auto& t : f.terms) {
        Term u;
        for (int i = 0; i < n_; ++i) u.e[i] = t.e[i];
        u.c = reduce(t.c);
        ts.push_back(u);
      }
      forms_.push_back(std::move(ts));
      taylor_.push_back(taylor_table(f));
    }
  }

  int levels() const { return levels_; }
  int nvars() const { return n_; }
  std::uint64_t p() const { return p_; }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (wrap_) return a * b;
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % P_);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (wrap_) return a + b;
    std::uint64_t s = a + b;
    return s >= P_ ? s - P_ : s;
  }
  int val(std::uint64_t r) const {
    if (r == 0) return levels_;
    if (wrap_) return __builtin_ctzll(r);
    int v = 0;
    while (r % p_ == 0) {
      r /= p_;
      ++v;
    }
    return v;
  }

  /// V on the class x + p^m Z_p^n when it is constant there, else -1.
  /// F_i(x + p^m t) = F_i(x) + sum_{|a| >= 1} p^(m|a|) T_{i,a}(x) t^a, so
  /// v(F_i) is fixed on the class when v(F_i(x)) < w_i = min_a m|a| + v(T_{i,a}(x)).
  int resolve(const std::array<std::uint64_t, 3>& x, int m) const {
    std::array<std::array<std::uint64_t, 32>, 3> pw;
    for (int i = 0; i < n_; ++i) {
      pw[i][0] = 1;
      for (int e = 1; e <= degree_; ++e) pw[i][e] = mul(pw[i][e - 1], x[i]);
    }
    auto eval = [&](const std::vector<Term>& f) {
      std::uint64_t s = 0;
      for (const auto& t : f) {
        std::uint64_t v = t.c;
        for (int i = 0; i < n_; ++i) v = mul(v, pw[i][t.e[i]]);
        s = add(s, v);
      }
      return s;
    };
    const std::size_t nf = forms_.size();
    std::array<int, 8> d{};
    int dmin = levels_;
    for (std::size_t i = 0; i < nf; ++i) {
      d[i] = val(eval(forms_[i]));
      dmin = std::min(dmin, d[i]);
    }
    if (dmin < m) return dmin;
    int known = levels_, unknown_floor = INT32_MAX;
    for (std::size_t i = 0; i < nf; ++i) {
      int w = INT32_MAX;
      for (const auto& [order, f] : taylor_[i]) w = std::min(w, m * order + val(eval(f)));
      if (d[i] < w && d[i] < levels_) known = std::min(known, d[i]);
      else unknown_floor = std::min(unknown_floor, w);
    }
    if (known < levels_ && known <= unknown_floor) return known;
    return -1;
  }

  std::uint64_t reduce(const Int& c) const {
    Int mod = wrap_ ? Int(1) << 64 : Int(static_cast<unsigned long>(P_));
    Int r = c % mod;
    if (r < 0) r += mod;
    std::uint64_t lo = 0;
    mpz_export(&lo, nullptr, -1, sizeof lo, 0, 0, r.get_mpz_t());
    return lo;
  }

 private:
  struct Term {
    std::array<int, 3> e{};
    std::uint64_t c = 0;
  };
  std::uint64_t p_ = 0, P_ = 0;
  int n_ = 0, levels_ = 0, degree_ = 0;
  bool wrap_ = false;
  std::vector<std::vector<Term>> forms_;
  // Per form: (|a|, T_a as a polynomial in x) for every shift a != 0.
  std::vector<std::vector<std::pair<int, std::vector<Term>>>> taylor_;

  std::vector<std::pair<int, std::vector<Term>>> taylor_table(const Form& f) const {
    std::map<std::array<int, 3>, std::map<std::array<int, 3>, Int>> by_shift;
    for (const auto& t : f.terms) {
      std::array<int, 3> e{};
      for (int i = 0; i < n_; ++i) e[i] = t.e[i];
      for (int a0 = 0; a0 <= e[0]; ++a0)
        for (int a1 = 0; a1 <= (n_ > 1 ? e[1] : 0); ++a1)
          for (int a2 = 0; a2 <= (n_ > 2 ? e[2] : 0); ++a2) {
            std::array<int, 3> a{a0, a1, a2};
            if (a0 + a1 + a2 == 0) continue;
            Int c = t.c;
            std::array<int, 3> rest{};
            for (int i = 0; i < 3; ++i) {
              Int b;
              mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(e[i]),
                           static_cast<unsigned long>(a[i]));
              c *= b;
              rest[i] = e[i] - a[i];
            }
            by_shift[a][rest] += c;
          }
    }
    std::vector<std::pair<int, std::vector<Term>>> out;
    for (const auto& [a, poly] : by_shift) {
      std::vector<Term> ts;
      for (const auto& [rest, c] : poly)
        if (c != 0) ts.push_back({rest, reduce(c)});
      out.emplace_back(a[0] + a[1] + a[2], std::move(ts));
    }
    return out;
  }
};

struct Walker {
  const ModEvaluator& ev;
  Counts counts{};
  std::uint64_t classes = 0;

  // x is a representative of a class mod p^m with step pm = p^m.
  void visit(std::array<std::uint64_t, 3> x, int m, std::uint64_t pm) {
    ++classes;
    int d = ev.resolve(x, m);
    if (d >= 0) {
      ++counts[d][m];
      return;
    }
    if (m + 1 > ev.levels())
      throw std::runtime_error("valuation_distribution: depth guard hit at p = " +
                               std::to_string(ev.p()) + " (forms share a p-adic zero?)");
    const int n = ev.nvars();
    const std::uint64_t p = ev.p();
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= p;
    for (std::uint64_t t = 0; t < total; ++t) {
      std::array<std::uint64_t, 3> y = x;
      std::uint64_t r = t;
      for (int i = 0; i < n; ++i) {
        y[i] = ev.add(y[i], ev.mul(pm, r % p));
        r /= p;
      }
      visit(y, m + 1, pm * p);
    }
  }
};

ValuationDistribution finish(const std::vector<Form>& forms, const Int& p, const Counts& counts,
                             std::uint64_t classes) {
  ValuationDistribution d;
  d.p = p;
  d.nvars = forms[0].nvars;
  d.degree = forms[0].degree;
  d.classes = classes;
  for (int v = 0; v <= kMaxLevel; ++v) {
    Rat m = 0;
    for (int l = 1; l <= kMaxLevel; ++l)
      if (counts[v][l]) m += Rat(Int(static_cast<unsigned long>(counts[v][l])), ipow(p, d.nvars * l));
    if (m != 0) {
      m.canonicalize();
      d.mass[v] = m;
    }
  }
  return d;
}

}  // namespace

Rat ValuationDistribution::total() const {
  Rat s = 0;
  for (const auto& [v, m] : mass) s += m;
  return s;
}

ValuationDistribution valuation_distribution(const std::vector<Form>& forms, const Int& p,
                                             int workers) {
  if (forms.empty()) throw std::invalid_argument("valuation_distribution: no forms");
  if (!is_prime(p)) throw std::invalid_argument("valuation_distribution: p is not prime");
  ModEvaluator ev(forms, p);
  const int n = ev.nvars();
  const std::uint64_t pp = ev.p();

  if (workers <= 1) {
    // Serial reference: plain recursion from the classes mod p.
    Walker w{ev};
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= pp;
    for (std::uint64_t t = 1; t < total; ++t) {
      std::array<std::uint64_t, 3> x{};
      std::uint64_t r = t;
      for (int i = 0; i < n; ++i) {
        x[i] = r % pp;
        r /= pp;
      }
      w.visit(x, 1, pp);
    }
    return finish(forms, p, w.counts, w.classes);
  }

  // Parallel: start at a level with enough classes to spread; a class whose
  // ancestor was already resolved is resolved at the start level with the same
  // valuation, so the masses agree with the serial walk.
  int m0 = 1;
  std::uint64_t q = pp;  // p^m0
  auto classes_at = [&](std::uint64_t qq) {
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i) c *= qq;
    return c;
  };
  while (classes_at(q) < 256 && m0 + 1 < ev.levels() && q < (1u << 20)) {
    q *= pp;
    ++m0;
  }
  const std::uint64_t top = classes_at(q);
  std::vector<Counts> partial(static_cast<std::size_t>(workers));
  std::vector<std::uint64_t> visited(static_cast<std::size_t>(workers), 0);
  std::string error;
#pragma omp parallel num_threads(workers)
  {
    const int tid = omp_get_thread_num();
    Walker w{ev};
#pragma omp for schedule(dynamic, 1)
    for (std::uint64_t t = 0; t < top; ++t) {
      std::array<std::uint64_t, 3> x{};
      std::uint64_t r = t;
      bool primitive = false;
      for (int i = 0; i < n; ++i) {
        x[i] = r % q;
        r /= q;
        if (x[i] % pp) primitive = true;
      }
      if (!primitive) continue;
      try {
        w.visit(x, m0, q);
      } catch (const std::exception& e) {
#pragma omp critical
        error = e.what();
      }
    }
    partial[tid] = w.counts;
    visited[tid] = w.classes;
  }
  if (!error.empty()) throw std::runtime_error(error);
  Counts sum{};
  std::uint64_t classes = 0;
  for (int t = 0; t < workers; ++t) {
    for (int v = 0; v <= kMaxLevel; ++v)
      for (int l = 0; l <= kMaxLevel; ++l) sum[v][l] += partial[t][v][l];
    classes += visited[t];
  }
  return finish(forms, p, sum, classes);
}

Chart parse_chart(const std::string& s) {
  if (s == "affine-Z_p-box" || s == "affine") return Chart::AffineBox;
  if (s == "full-Q_p-chart-decomposition" || s == "full") return Chart::FullQp;
  throw std::invalid_argument("unknown chart: " + s);
}

Rat padic_region_volume(const ValuationDistribution& d, Chart chart) {
  const Int& p = d.p;
  const int n = d.nvars, k = d.degree;
  // Z_p^n is the union over j >= 0 of p^j * (primitive vectors); every
  // integral point satisfies the bound.
  Rat vol = 1;
  if (chart == Chart::AffineBox) return vol;
  // x = p^-j y, y primitive, j >= 1: |F(x)| = p^(kj - V(y)) <= 1 iff V(y) >= kj.
  for (long j = 1; k * j <= d.max_v(); ++j) {
    Rat tail = 0;
    for (auto it = d.mass.lower_bound(k * j); it != d.mass.end(); ++it) tail += it->second;
    vol += Rat(ipow(p, n * j)) * tail;
  }
  vol.canonicalize();
  return vol;
}

Rat padic_region_volume(const std::vector<Form>& forms, const Int& p, Chart chart, int workers) {
  return padic_region_volume(valuation_distribution(forms, p, workers), chart);
}

LocalFactor weighted_local_factor(const ValuationDistribution& d, int e, int k) {
  const int n = d.nvars;
  Rat norm = 1 - Rat(1, ipow(d.p, n));
  bool exact = true;
  Rat sum = 0;
  double approx = 0;
  const double pd = d.p.get_d();
  for (const auto& [v, m] : d.mass) {
    approx += m.get_d() * std::pow(pd, static_cast<double>(e) * v / k);
    if ((static_cast<long>(e) * v) % k == 0)
      sum += m * Rat(ipow(d.p, static_cast<unsigned long>(e * v / k)));
    else
      exact = false;
  }
  LocalFactor f;
  f.value = approx / norm.get_d();
  if (exact) {
    Rat r = sum / norm;
    r.canonicalize();
    f.exact = r;
    f.value = r.get_d();
  }
  return f;
}

std::vector<Int> bad_primes(const HomPair& G) {
  auto to_poly = [&](const Form& f) {
    std::vector<Int> c(static_cast<std::size_t>(G.k) + 1, Int(0));
    for (const auto& t : f.terms) c[static_cast<std::size_t>(t.e[0])] += t.c;
    return IntPoly(std::move(c));
  };
  IntPoly g0 = to_poly(G.G0), g1 = to_poly(G.G1);
  Int res = homogeneous_resultant(g0, g1, G.k);
  if (res == 0) throw std::invalid_argument("bad_primes: forms share a factor");
  std::vector<Int> ps;
  for (const Int& x : {res, content(g0), content(g1)}) {
    if (abs(x) <= 1) continue;
    for (const auto& [q, e] : factor(abs(x)))
      if (std::find(ps.begin(), ps.end(), q) == ps.end()) ps.push_back(q);
  }
  std::sort(ps.begin(), ps.end());
  return ps;
}

}  // namespace dyn
