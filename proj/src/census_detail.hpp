#pragma once

// 128-bit evaluation of the census forms.  Callers keep inputs inside
// safe_radius(), so no intermediate value overflows.

#include <array>
#include <cmath>
#include <vector>

#include "dyn/arith.hpp"
#include "dyn/forms.hpp"

namespace dyn::detail {

inline __int128 abs128(__int128 x) { return x < 0 ? -x : x; }

inline __int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long radius_for(long double coef_sum, int k) {
  return static_cast<long>(std::pow(std::ldexp(1.0L, 120) / (coef_sum + 1), 1.0L / k));
}

struct PairEval {
  int k = 0;
  std::vector<__int128> c0, c1;  // coefficient of a^i b^(k-i)

  explicit PairEval(const HomPair& G) : k(G.k), c0(G.k + 1, 0), c1(G.k + 1, 0) {
    for (const auto& t : G.G0.terms) c0[t.e[0]] += to_i128(t.c);
    for (const auto& t : G.G1.terms) c1[t.e[0]] += to_i128(t.c);
  }
  long safe_radius() const {
    long double s = 0;
    for (int i = 0; i <= k; ++i)
      s += std::fabs(static_cast<long double>(c0[i])) + std::fabs(static_cast<long double>(c1[i]));
    return radius_for(s, k);
  }
  void eval(__int128 a, __int128 b, __int128& g0, __int128& g1) const {
    g0 = 0;
    g1 = 0;
    // Horner in a with b-powers folded in from the top.
    __int128 bp = 1;
    for (int i = k; i >= 0; --i) {
      g0 = g0 * a + c0[i] * bp;
      g1 = g1 * a + c1[i] * bp;
      bp *= b;
    }
  }
};

struct TripleEval {
  struct Term {
    std::array<int, 3> e;
    __int128 c;
  };
  int k = 0;
  std::array<std::vector<Term>, 3> f;

  explicit TripleEval(const HomTriple& T) : k(T.k) {
    for (int i = 0; i < 3; ++i)
      for (const auto& t : T.H[i].terms) f[i].push_back({{t.e[0], t.e[1], t.e[2]}, to_i128(t.c)});
  }
  long safe_radius() const {
    long double s = 0;
    for (const auto& fi : f)
      for (const auto& t : fi) s += std::fabs(static_cast<long double>(t.c));
    return radius_for(s, k);
  }
  std::array<__int128, 3> eval(const std::array<__int128, 3>& x) const {
    std::array<std::vector<__int128>, 3> pw;
    for (int j = 0; j < 3; ++j) {
      pw[j].assign(k + 1, 1);
      for (int d = 1; d <= k; ++d) pw[j][d] = pw[j][d - 1] * x[j];
    }
    std::array<__int128, 3> r{0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (const auto& t : f[i]) r[i] += t.c * pw[0][t.e[0]] * pw[1][t.e[1]] * pw[2][t.e[2]];
    return r;
  }
};

}  // namespace dyn::detail
