#include "dyn/constants.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "dyn/curves.hpp"

namespace dyn {

// --- zeta and Mahler measures ------------------------------------------------

Approx zeta_val(int s) {
  if (s != 2 && s != 3) throw std::invalid_argument("zeta_val: only s = 2, 3 are supported");
  // Euler-Maclaurin at N with Bernoulli corrections B_2 .. B_12; the error is
  // bounded by the first omitted term.
  constexpr int N = 10;
  static const long double B[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66,
                                  -691.0L / 2730, 7.0L / 6};
  long double sum = 0;
  for (int n = 1; n < N; ++n) sum += std::pow(static_cast<long double>(n), -s);
  sum += std::pow(static_cast<long double>(N), 1 - s) / (s - 1);
  sum += std::pow(static_cast<long double>(N), -s) / 2;
  long double rising = s;  // s (s+1) ... (s + 2j - 2)
  long double fact = 2;    // (2j)!
  long double next = 0;
  for (int j = 1; j <= 7; ++j) {
    long double term = B[j - 1] / fact * rising * std::pow(static_cast<long double>(N), -s - 2 * j + 1);
    if (j == 7) {
      next = std::fabs(term);
      break;
    }
    sum += term;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= (2 * j + 1) * (2 * j + 2);
  }
  return {static_cast<double>(sum), static_cast<double>(next) + 4e-16 * static_cast<double>(sum)};
}

double mahler_inf_real(double a, double b, double c) {
  if (a == 0) return std::max(std::fabs(b), std::fabs(c));
  const double disc = b * b - 4 * a * c;
  if (disc < 0) return std::max(std::fabs(a), std::fabs(c));  // |r1| = |r2| = sqrt(c / a)
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double r1, r2;
  if (q == 0) {
    r1 = r2 = 0;
  } else {
    r1 = q / a;
    r2 = c / q;
  }
  return std::fabs(a) * std::max(1.0, std::fabs(r1)) * std::max(1.0, std::fabs(r2));
}

Approx mahler_inf(const IntPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("mahler_inf: zero polynomial");
  const int n = f.degree();
  if (n == 0) return {std::fabs(f.c[0].get_d()), 0};
  if (n == 1) return {std::max(std::fabs(f.c[0].get_d()), std::fabs(f.c[1].get_d())), 0};
  if (n == 2) {
    double v = mahler_inf_real(f.c[2].get_d(), f.c[1].get_d(), f.c[0].get_d());
    return {v, 1e-14 * v};
  }
  // Companion matrix of the monic polynomial.
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  const double lead = f.lead().get_d();
  for (int i = 0; i < n; ++i) C(i, n - 1) = -f.c[i].get_d() / lead;
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1;
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  using cld = std::complex<long double>;
  auto eval = [&](cld z, cld& d) {
    cld r = 0;
    d = 0;
    for (int i = n; i >= 0; --i) {
      d = d * z + r;
      r = r * z + cld(static_cast<long double>(f.c[i].get_d()), 0);
    }
    return r;
  };
  long double M = std::fabs(static_cast<long double>(lead));
  long double err_rel = 0;
  for (int i = 0; i < n; ++i) {
    cld z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    cld d;
    for (int it = 0; it < 8; ++it) {
      cld v = eval(z, d);
      if (std::abs(d) == 0) break;
      z -= v / d;
    }
    cld v = eval(z, d);
    long double rad = std::abs(d) > 0 ? n * std::abs(v) / std::abs(d) : 0;
    long double m = std::max<long double>(1, std::abs(z));
    M *= m;
    if (std::abs(z) + rad > 1) err_rel += rad / m;
  }
  return {static_cast<double>(M), static_cast<double>(M * err_rel) + 1e-14 * static_cast<double>(M)};
}

Rat mahler_p(const IntPoly& f, const Int& p) {
  if (f.is_zero()) throw std::invalid_argument("mahler_p: zero polynomial");
  long v = kValInf;
  for (const auto& a : f.c)
    if (a != 0) v = std::min(v, padic_val(a, p));
  if (v >= 0) return Rat(1, ipow(p, static_cast<unsigned long>(v)));
  return Rat(ipow(p, static_cast<unsigned long>(-v)));
}

// --- archimedean integrals ---------------------------------------------------

namespace {

std::vector<double> real_roots_in(const std::vector<double>& asc, double lo, double hi) {
  std::vector<double> c = asc;
  while (!c.empty() && c.back() == 0) c.pop_back();
  std::vector<double> out;
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return out;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) C(i, n - 1) = -c[i] / c[n];
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1;
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  for (int i = 0; i < n; ++i) {
    auto z = es.eigenvalues()[i];
    if (std::fabs(z.imag()) > 1e-7 * std::max(1.0, std::abs(z))) continue;
    if (z.real() > lo && z.real() < hi) out.push_back(z.real());
  }
  return out;
}

double horner(const std::vector<double>& asc, double x) {
  double r = 0;
  for (int i = static_cast<int>(asc.size()) - 1; i >= 0; --i) r = r * x + asc[i];
  return r;
}

std::vector<double> to_double(const IntPoly& p, int len) {
  std::vector<double> v(static_cast<std::size_t>(len), 0.0);
  for (int i = 0; i <= p.degree(); ++i) v[static_cast<std::size_t>(i)] = p.c[i].get_d();
  return v;
}

// Integral of max(|a(x)|, |b(x)|)^(-s) |x|^q over [-1, 1], split at kinks.
Approx integrate_chart(const std::vector<double>& a, const std::vector<double>& b, double s,
                       double q) {
  std::vector<double> cuts{-1.0, 0.0, 1.0};
  std::vector<double> sum(a.size()), dif(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum[i] = a[i] + b[i];
    dif[i] = a[i] - b[i];
  }
  const std::array<const std::vector<double>*, 4> polys{&sum, &dif, &a, &b};
  for (const auto* poly : polys)
    for (double r : real_roots_in(*poly, -1, 1)) cuts.push_back(r);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return std::fabs(x - y) < 1e-13; }),
             cuts.end());
  auto f = [&](double x) {
    double m = std::max(std::fabs(horner(a, x)), std::fabs(horner(b, x)));
    double w = q == 0 ? 1.0 : std::pow(std::fabs(x), q);
    return w * std::pow(m, -s);
  };
  Approx out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0;
    double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1],
                                                                             15, 1e-13, &err);
    out.value += v;
    out.err += err;
  }
  return out;
}

}  // namespace

Approx arch_volume_p1(const IntPoly& g0, const IntPoly& g1, int k, int e) {
  if (g0.is_zero() || g1.is_zero()) throw std::invalid_argument("arch_volume_p1: zero map");
  const int kx = std::max(g0.degree(), g1.degree());
  if (homogeneous_resultant(g0, g1, kx) == 0)
    throw std::invalid_argument("arch_volume_p1: g0 and g1 are not coprime");
  const double s = static_cast<double>(e) / k;
  // |u| <= 1 directly.
  Approx inner = integrate_chart(to_double(g0, kx + 1), to_double(g1, kx + 1), s, 0);
  // |u| > 1: u = 1/t, du = dt / t^2, g(1/t) = t^-kx G(1, t).
  auto rev = [&](const IntPoly& g) {
    std::vector<double> v = to_double(g, kx + 1);
    std::reverse(v.begin(), v.end());
    return v;
  };
  Approx outer = integrate_chart(rev(g0), rev(g1), s, kx * s - 2);
  Approx r{inner.value + outer.value, inner.err + outer.err};
  r.err += 1e-12 * r.value;
  return r;
}

namespace {

struct Interval {
  double lo, hi;
};

Interval imul(Interval a, Interval b) {
  double p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval ipow(Interval a, int e) {
  if (e == 0) return {1, 1};
  double l = std::pow(a.lo, e), h = std::pow(a.hi, e);
  if (e % 2 == 1) return {l, h};
  if (a.lo <= 0 && a.hi >= 0) return {0, std::max(l, h)};
  return {std::min(l, h), std::max(l, h)};
}

// Binary form over a box, padded outward for rounding.
Interval eval_form(const Form& f, Interval x, Interval y) {
  Interval s{0, 0};
  for (const auto& t : f.terms) {
    Interval m = imul(ipow(x, t.e[0]), ipow(y, t.e[1]));
    double c = t.c.get_d();
    Interval cm = c >= 0 ? Interval{c * m.lo, c * m.hi} : Interval{c * m.hi, c * m.lo};
    s.lo += cm.lo;
    s.hi += cm.hi;
  }
  double pad = 1e-12 * (std::fabs(s.lo) + std::fabs(s.hi)) + 1e-300;
  return {s.lo - pad, s.hi + pad};
}

}  // namespace

Approx area_R1(const HomPair& G, double tol) {
  const double m = min_sup_sphere({G.G0, G.G1}, {1.0, 1.0});
  if (!(m > 0)) throw std::invalid_argument("area_R1: region is unbounded (common real zero)");
  const double rho = std::pow(m, -1.0 / G.k) * 1.0001;
  // Upper half plane; G(-v) = +-G(v) makes R(1) centrally symmetric.
  struct Cell {
    double x, y, h;  // lower-left corner and side
  };
  std::vector<Cell> pending;
  const int g = 64;
  const double h0 = 2 * rho / g;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g / 2; ++j) pending.push_back({-rho + i * h0, j * h0, h0});
  double inside = 0;
  double undecided = 0;
  for (int level = 0; level < 40; ++level) {
    std::vector<Cell> next;
    undecided = 0;
    for (const Cell& c : pending) {
      Interval X{c.x, c.x + c.h}, Y{c.y, c.y + c.h};
      Interval a = eval_form(G.G0, X, Y), b = eval_form(G.G1, X, Y);
      auto abs_hi = [](Interval v) { return std::max(std::fabs(v.lo), std::fabs(v.hi)); };
      auto abs_lo = [](Interval v) { return v.lo > 0 ? v.lo : v.hi < 0 ? -v.hi : 0.0; };
      if (abs_hi(a) <= 1 && abs_hi(b) <= 1) {
        inside += c.h * c.h;
      } else if (abs_lo(a) > 1 || abs_lo(b) > 1) {
        // outside
      } else {
        undecided += c.h * c.h;
        next.push_back(c);
      }
    }
    // Full-plane error is half the full-plane undecided area.
    if (undecided <= tol || next.size() > (1u << 23)) break;
    pending.clear();
    for (const Cell& c : next) {
      double h = c.h / 2;
      pending.push_back({c.x, c.y, h});
      pending.push_back({c.x + h, c.y, h});
      pending.push_back({c.x, c.y + h, h});
      pending.push_back({c.x + h, c.y + h, h});
    }
  }
  return {2 * inside + undecided, undecided};
}

// --- Sym^2 volume ------------------------------------------------------------

namespace {

// Ternary forms with double coefficients, evaluated without allocation.
struct FastTriple {
  struct Term {
    int e0, e1, e2;
    double c;
  };
  std::array<std::vector<Term>, 3> f;
  int k = 0;
  explicit FastTriple(const HomTriple& H) : k(H.k) {
    for (int i = 0; i < 3; ++i)
      for (const auto& t : H.H[i].terms) f[i].push_back({t.e[0], t.e[1], t.e[2], t.c.get_d()});
  }
  double mahler(double x0, double x1, double x2) const {
    double p0[16], p1[16], p2[16];
    p0[0] = p1[0] = p2[0] = 1;
    for (int e = 1; e <= k; ++e) {
      p0[e] = p0[e - 1] * x0;
      p1[e] = p1[e - 1] * x1;
      p2[e] = p2[e - 1] * x2;
    }
    double h[3];
    for (int i = 0; i < 3; ++i) {
      double s = 0;
      for (const auto& t : f[i]) s += t.c * p0[t.e0] * p1[t.e1] * p2[t.e2];
      h[i] = s;
    }
    return mahler_inf_real(h[0], -h[1], h[2]);
  }
};

}  // namespace

double vol_S1_box_radius(const HomTriple& H) {
  // M(a z^2 + b z + c) >= max(|a|, |b| / 2, |c|).
  const double m3 = min_sup_sphere({H.H[0], H.H[1], H.H[2]}, {1.0, 0.5, 1.0});
  if (!(m3 > 0)) throw std::invalid_argument("vol_S1: region is unbounded");
  return std::pow(m3, -1.0 / H.k);
}

Approx vol_S1(const HomTriple& H, std::uint64_t seed, std::size_t samples, int workers) {
  if (H.k > 15) throw std::invalid_argument("vol_S1: degree above 15");
  const FastTriple F(H);
  const double rho = vol_S1_box_radius(H);
  constexpr int kShifts = 16;
  constexpr std::size_t kChunk = 1 << 16;
  const std::size_t per_shift = std::max<std::size_t>(samples / kShifts, 1);
  // R_3 Kronecker sequence in 64-bit fixed point: alpha_d = phi^-d with
  // phi^4 = phi + 1.
  const long double phi = 1.2207440846057594753616853491088319L;
  std::array<std::uint64_t, 3> alpha;
  for (int d = 0; d < 3; ++d)
    alpha[d] = static_cast<std::uint64_t>(std::ldexp(std::fmod(std::pow(phi, -(d + 1)), 1.0L), 64));
  std::mt19937_64 rng(seed);
  std::array<std::array<std::uint64_t, 3>, kShifts> shift;
  for (auto& s : shift)
    for (auto& c : s) c = rng();
  const std::size_t chunks = (per_shift + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(kShifts) * chunks, 0);
  const long long jobs = static_cast<long long>(hits.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(workers, 1))
  for (long long job = 0; job < jobs; ++job) {
    const std::size_t s = static_cast<std::size_t>(job) / chunks;
    const std::size_t c = static_cast<std::size_t>(job) % chunks;
    const std::size_t begin = c * kChunk, end = std::min(per_shift, begin + kChunk);
    std::uint64_t count = 0;
    for (std::size_t i = begin; i < end; ++i) {
      double x[3];
      for (int d = 0; d < 3; ++d) {
        std::uint64_t u = shift[s][d] + alpha[d] * static_cast<std::uint64_t>(i + 1);
        x[d] = rho * (std::ldexp(static_cast<double>(u >> 11), -53) * 2 - 1);
      }
      if (F.mahler(x[0], x[1], x[2]) <= 1) ++count;
    }
    hits[static_cast<std::size_t>(job)] = count;
  }
  const double box = 8 * rho * rho * rho;
  double mean = 0, sq = 0;
  std::array<double, kShifts> est;
  for (int s = 0; s < kShifts; ++s) {
    std::uint64_t h = 0;
    for (std::size_t c = 0; c < chunks; ++c) h += hits[static_cast<std::size_t>(s) * chunks + c];
    est[s] = box * static_cast<double>(h) / static_cast<double>(per_shift);
    mean += est[s];
  }
  mean /= kShifts;
  for (double e : est) sq += (e - mean) * (e - mean);
  return {mean, std::sqrt(sq / (kShifts - 1) / kShifts)};
}

// --- leading constants -------------------------------------------------------

double LeadingConstant::remultiplied() const {
  double v = prefactor.get_d();
  if (zeta > 0) v /= zeta;
  for (const auto& lv : decomposition) v *= lv.value / lv.lambda.get_d();
  return v;
}

namespace {

std::string prime_place(const Int& p) { return p.get_str(); }

Rat frac(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

void finish_c(LeadingConstant& lc, double zeta_err) {
  lc.c.value = lc.remultiplied();
  double rel = lc.zeta > 0 ? zeta_err / lc.zeta : 0;
  for (const auto& lv : lc.decomposition)
    if (lv.value != 0) rel += lv.err / std::fabs(lv.value);
  lc.c.err = std::fabs(lc.c.value) * rel;
}

// Adds the bad-prime factors w_p / lambda_p for a distribution exponent e/k.
void add_primes(LeadingConstant& lc, const std::vector<Form>& forms, const std::vector<Int>& primes,
                int e, int k, int n, int workers) {
  for (const Int& p : primes) {
    ValuationDistribution d = valuation_distribution(forms, p, workers);
    LocalFactor f = weighted_local_factor(d, e, k);
    Rat lambda = n == 2 ? Rat(1 + Rat(1, p)) : Rat((1 - Rat(1, p * p * p)) / (1 - Rat(1, p)));
    lambda.canonicalize();
    LocalVolume lv;
    lv.place = prime_place(p);
    lv.lambda = lambda;
    if (f.exact) {
      Rat w = *f.exact * lambda;
      w.canonicalize();
      lv.exact = w;
      lv.value = w.get_d();
    } else {
      lv.value = f.value * lambda.get_d();
      lv.err = 1e-15 * lv.value;
    }
    lv.region_volume = padic_region_volume(d, Chart::FullQp);
    lc.decomposition.push_back(lv);
  }
}

std::vector<Form> pair_forms(const HomPair& G) { return {G.G0, G.G1}; }

}  // namespace

std::uint64_t count_curve_points(const IntPoly& h, const Int& bound) {
  const int d = h.degree();
  if (d < 1) throw std::invalid_argument("count_curve_points: constant model");
  const int dh = d % 2 ? d + 1 : d;  // even homogenisation degree
  std::uint64_t n = 0;
  // Points at infinity: one for odd degree, two when the leading coefficient
  // is a square for even degree.
  if (d % 2) n += 1;
  else if (h.lead() > 0 && is_perfect_square(h.lead())) n += 2;
  if (!fits_i64(bound)) throw std::invalid_argument("count_curve_points: bound too large");
  const long B = bound.get_si();
  for (long b = 1; b <= B; ++b)
    for (long a = -B; a <= B; ++a) {
      if (std::gcd(a, b) != 1) continue;
      Int v = h.eval_hom(Int(a), Int(b), dh);
      if (v == 0) n += 1;
      else if (v > 0 && is_perfect_square(v)) n += 2;
    }
  return n;
}

LeadingConstant leading_constant_deg1(Label l, const ConstantsOptions& opt) {
  if (l == Label::Other) throw UnsupportedError("constants: no model for Other");
  const CurveRecord& rec = curve_record(l);
  LeadingConstant lc;
  lc.label = l;
  lc.degree = 1;
  lc.aut = rec.aut_order;
  if (rec.genus == 0) {
    const HomPair G = hom_pair_of(l);
    const int k = G.k;
    lc.a = frac(2, k);
    lc.b = 0;
    lc.prefactor = frac(1, 2 * rec.aut_order);
    const Approx z = zeta_val(2);
    lc.zeta = z.value;
    const Approx w = arch_volume_p1(rec.pi.g0, rec.pi.g1, k, 2);
    lc.decomposition.push_back({"infinity", w.value, w.err, std::nullopt, Rat(1), std::nullopt});
    add_primes(lc, pair_forms(G), bad_primes(G), 2, k, 2, opt.workers);
    finish_c(lc, z.err);
    return lc;
  }
  if (rec.genus == 1) {
    int rank;
    if (opt.rank) rank = *opt.rank;
    else if (l == Label::P10_211a || l == Label::P10_211b) rank = 0;
    else
      throw UnsupportedError("constants: rank of the elliptic curve for " + label_name(l) +
                             " is not known here; pass it explicitly");
    if (rank != 0)
      throw UnsupportedError("constants: positive rank needs the regulator, which is not computed");
    const std::uint64_t small = count_curve_points(*rec.h, Int(100));
    const std::uint64_t large = count_curve_points(*rec.h, Int(1000));
    if (small != large)
      throw std::runtime_error("constants: point count on " + label_name(l) +
                               " grew between heights 100 and 1000; rank 0 is doubtful");
    lc.a = 0;
    lc.b = 0;
    lc.prefactor = frac(static_cast<long>(large), rec.aut_order);
    lc.zeta = 0;
    lc.notes.push_back("torsion order " + std::to_string(large) +
                       " from the point count, stable between H(x) <= 100 and 1000");
    finish_c(lc, 0);
    return lc;
  }
  throw UnsupportedError("constants: degree-1 constants for genus-2 portraits are not defined "
                         "(finitely many points)");
}

LeadingConstant leading_constant_deg2(Label l, const ConstantsOptions& opt) {
  if (l == Label::Other) throw UnsupportedError("constants: no model for Other");
  const CurveRecord& rec = curve_record(l);
  LeadingConstant lc;
  lc.label = l;
  lc.degree = 2;
  lc.aut = rec.aut_order;
  if (rec.genus == 1)
    throw UnsupportedError("constants: degree-2 constants for genus-1 portraits need Faltings-height "
                           "and Neron-Tate regulator data, which are out of scope");
  const HomPair G = hom_pair_of(l);
  if (rec.genus == 0) {
    const int k = G.k;
    lc.a = frac(6, k);
    lc.b = 0;
    lc.prefactor = frac(2, 3 * rec.aut_order);
    const Approx z = zeta_val(3);
    lc.zeta = z.value;
    const HomTriple H = l == Label::P8_211 ? sym2_map_8211() : sym2_reduce(G);
    const Approx vol = vol_S1(H, opt.seed, opt.samples, opt.workers);
    lc.vol_S1 = vol;
    lc.decomposition.push_back(
        {"infinity", 1.5 * vol.value, 1.5 * vol.err, std::nullopt, Rat(1), std::nullopt});
    add_primes(lc, {H.H[0], H.H[1], H.H[2]}, bad_primes(G), 3, k, 3, opt.workers);
    finish_c(lc, z.err);
    if (l == Label::P8_211) {
      Approx cf{vol.value / (8 * z.value), vol.err / (8 * z.value)};
      lc.closed_form = cf;
      lc.notes.push_back("closed form Vol(S(1)) / (8 zeta(3)) = " + std::to_string(cf.value) +
                         "; assembled / closed form = " + std::to_string(lc.c.value / cf.value));
    }
    return lc;
  }
  // Genus 2: the curve map has degree 2 k_x.
  const int k = rec.curve_degree();
  lc.a = frac(4, k);
  lc.b = 0;
  lc.prefactor = frac(1, rec.aut_order);
  const Approx z = zeta_val(2);
  lc.zeta = z.value;
  const Approx w = arch_volume_p1(rec.pi.g0, rec.pi.g1, k, 4);
  lc.decomposition.push_back({"infinity", w.value, w.err, std::nullopt, Rat(1), std::nullopt});
  add_primes(lc, pair_forms(G), bad_primes(G), 4, k, 2, opt.workers);
  finish_c(lc, z.err);
  return lc;
}

std::string constants_json(const LeadingConstant& c) {
  nlohmann::ordered_json j;
  j["label"] = label_name(c.label);
  j["degree"] = c.degree;
  j["a"] = to_string(c.a);
  j["b"] = to_string(c.b);
  j["c"] = {{"value", c.c.value}, {"err", c.c.err}};
  auto dec = nlohmann::ordered_json::array();
  for (const auto& lv : c.decomposition) {
    nlohmann::ordered_json e;
    e["place"] = lv.place;
    e["value"] = lv.value;
    if (lv.err > 0) e["err"] = lv.err;
    if (lv.exact) e["exact"] = to_string(*lv.exact);
    e["lambda"] = to_string(lv.lambda);
    if (lv.region_volume) e["region_volume"] = to_string(*lv.region_volume);
    dec.push_back(e);
  }
  j["decomposition"] = dec;
  j["zeta"] = c.zeta > 0 ? nlohmann::ordered_json(c.zeta) : nlohmann::ordered_json(nullptr);
  j["aut"] = c.aut;
  j["prefactor"] = to_string(c.prefactor);
  j["remultiplied"] = c.remultiplied();
  if (c.vol_S1) j["vol_S1"] = {{"value", c.vol_S1->value}, {"err", c.vol_S1->err}};
  if (c.closed_form)
    j["closed_form"] = {{"value", c.closed_form->value}, {"err", c.closed_form->err}};
  if (!c.notes.empty()) j["notes"] = c.notes;
  return j.dump(2);
}

}  // namespace dyn
