#include "dyn/lattice.hpp"

#include <algorithm>
#include <map>

namespace dyn {

namespace {

Int mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int inv_mod(const Int& a, const Int& m) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), Int(mod(a, m)).get_mpz_t(), m.get_mpz_t()))
    throw std::logic_error("inv_mod: not invertible");
  return r;
}

// Minimal polynomial of w: x^2 - x - m (half-integral basis) or x^2 - D.
Int g_eval(const QuadField& K, const Int& x) {
  if (K.half_integral_basis()) return x * x - x - (K.D() - 1) / 4;
  return x * x - K.D();
}
Int g_deriv(const QuadField& K, const Int& x) {
  return K.half_integral_basis() ? Int(2 * x - 1) : Int(2 * x);
}

Int hensel_lift(const QuadField& K, Int x, const Int& p, unsigned k) {
  Int pk = ipow(p, k);
  for (unsigned prec = 1; prec < k; prec *= 2) {
    Int m = ipow(p, std::min(2 * prec, k));
    x = mod(x - g_eval(K, x) * inv_mod(g_deriv(K, x), m), m);
  }
  return mod(x, pk);
}

}  // namespace

Int sqrt_mod_prime(const Int& n0, const Int& p) {
  Int n = mod(n0, p);
  if (n == 0) return 0;
  if (mpz_legendre(n.get_mpz_t(), p.get_mpz_t()) != 1)
    throw std::invalid_argument("sqrt_mod_prime: not a quadratic residue");
  // Tonelli-Shanks
  Int q = p - 1;
  unsigned long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  auto powm = [&](const Int& b, const Int& e) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  };
  Int c = powm(z, q), x = powm(n, (q + 1) / 2), t = powm(n, q);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Int tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Int b = powm(c, ipow(2, m - i - 1));
    x = x * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return x;
}

PrimeType prime_type(const QuadField& K, const Int& p) {
  Int d = K.discriminant();
  if (p == 2) {
    if (d % 2 == 0) return PrimeType::Ramified;
    return mod(d, 8) == 1 ? PrimeType::Split : PrimeType::Inert;
  }
  int l = mpz_legendre(Int(mod(d, p)).get_mpz_t(), p.get_mpz_t());
  if (l == 0) return PrimeType::Ramified;
  return l == 1 ? PrimeType::Split : PrimeType::Inert;
}

std::vector<Int> omega_roots(const QuadField& K, const Int& p, unsigned k) {
  if (k == 0) k = 1;
  PrimeType t = prime_type(K, p);
  if (t == PrimeType::Inert) return {};
  if (t == PrimeType::Ramified) {
    Int r0;
    if (K.half_integral_basis())
      r0 = (p + 1) / 2;  // double root 1/2 mod p (p odd here)
    else if (p == 2)
      r0 = mod(K.D(), 2);
    else
      r0 = 0;
    return {mod(r0, ipow(p, k))};
  }
  std::vector<Int> roots;
  if (p == 2) {
    for (long x : {0L, 1L})
      if (mod(g_eval(K, Int(x)), 2) == 0) roots.push_back(hensel_lift(K, Int(x), p, k));
  } else {
    Int s = sqrt_mod_prime(K.D(), p);
    if (K.half_integral_basis()) {
      Int half = (p + 1) / 2;
      roots = {mod((1 + s) * half, p), mod((1 - s) * half, p)};
    } else {
      roots = {s, mod(-s, p)};
    }
    for (auto& r : roots) r = hensel_lift(K, r, p, k);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Int omega_norm(const QuadField& K, const Int& A, const Int& B) {
  if (K.half_integral_basis()) return A * A + A * B - (K.D() - 1) / 4 * B * B;
  return A * A - K.D() * B * B;
}

PreperLattice preper_lattice(const QuadElem& c) {
  const QuadField& K = c.field();
  if (K.is_rational()) throw std::invalid_argument("preper_lattice: field is Q");
  PreperLattice out;
  if (c.is_zero()) return out;
  auto [cA, cB] = c.omega_coords();
  Int L;
  mpz_lcm(L.get_mpz_t(), cA.get_den_mpz_t(), cB.get_den_mpz_t());
  Int nA = Rat(cA * L).get_num(), nB = Rat(cB * L).get_num();
  if (L == 1) return out;
  Int N = omega_norm(K, nA, nB);

  struct Local {
    Int m1, m2, rho;
  };
  std::vector<Local> locals;

  for (const auto& [p, eL] : factor(L)) {
    PrimeType type = prime_type(K, p);
    long vL = padic_val(L, p);
    if (type == PrimeType::Inert) {
      long v = std::min(padic_val(nA, p), padic_val(nB, p)) - vL;
      if (v >= 0) continue;
      if (v % 2) return {true};
      long t = -v / 2;
      // r = t + k = 0 at the unique prime
      out.T *= ipow(p, t);
      locals.push_back({1, 1, 0});
      continue;
    }
    if (type == PrimeType::Ramified) {
      long v = padic_val(N, p) - 2 * vL;
      if (v >= 0) continue;
      if (v % 2) return {true};
      long k = v / 2;                 // negative
      long t = (-k + 1) / 2;          // ceil(-k / 2)
      long r = 2 * t + k;             // 0 or 1
      out.T *= ipow(p, t);
      long s = r / 2;
      if (r % 2 == 0) {
        Int ps = ipow(p, s);
        locals.push_back({ps, ps, 0});
      } else {
        Int rho = omega_roots(K, p, 1).at(0);
        locals.push_back({ipow(p, s + 1), ipow(p, s), rho});
      }
      continue;
    }
    // split
    long vN = padic_val(N, p);
    unsigned prec = static_cast<unsigned>(vN + 1);
    auto roots = omega_roots(K, p, prec);
    Int pp = ipow(p, prec);
    long v[2];
    for (int i = 0; i < 2; ++i) v[i] = padic_val(Int(mod(nA + nB * roots[i], pp)), p) - vL;
    long k[2];
    for (int i = 0; i < 2; ++i) {
      if (v[i] < 0 && v[i] % 2) return {true};
      k[i] = v[i] < 0 ? v[i] / 2 : 0;
    }
    long t = std::max(-k[0], -k[1]);
    if (t == 0) continue;
    out.T *= ipow(p, t);
    long r[2] = {t + k[0], t + k[1]};
    int hi = r[0] >= r[1] ? 0 : 1;
    auto lifted = omega_roots(K, p, static_cast<unsigned>(std::max<long>(r[hi], 1)));
    locals.push_back({ipow(p, r[hi]), ipow(p, r[1 - hi]), lifted[hi]});
  }

  for (const auto& l : locals) {
    // CRT: R = rho mod m1, R = old R mod old M1
    Int newR;
    if (out.M1 == 1) {
      newR = mod(l.rho, l.m1);
    } else if (l.m1 == 1) {
      newR = out.R;
    } else {
      Int t = mod((l.rho - out.R) * inv_mod(out.M1, l.m1), l.m1);
      newR = out.R + out.M1 * t;
    }
    out.M1 *= l.m1;
    out.M2 *= l.m2;
    out.R = mod(newR, out.M1);
  }
  return out;
}

}  // namespace dyn
