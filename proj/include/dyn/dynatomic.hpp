#pragma once

#include <string>
#include <vector>

#include "dyn/arith.hpp"
#include "dyn/poly.hpp"
#include "dyn/quad.hpp"

namespace dyn {

/// Element of Z[c][z]: coefficient of z^j is the polynomial z[j] in c.
struct BivarPoly {
  std::vector<IntPoly> z;

  BivarPoly() = default;
  explicit BivarPoly(std::vector<IntPoly> v) : z(std::move(v)) { trim(); }

  void trim() {
    while (!z.empty() && z.back().is_zero()) z.pop_back();
  }
  int deg_z() const { return static_cast<int>(z.size()) - 1; }
  int deg_c() const;
  bool is_zero() const { return z.empty(); }
  IntPoly coef(int j) const { return j >= 0 && j <= deg_z() ? z[j] : IntPoly(); }

  static BivarPoly var_z();
  static BivarPoly var_c();
  static BivarPoly constant(long a);

  friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.z == b.z; }

  /// this(c, q(c, z)).
  BivarPoly compose_z(const BivarPoly& q) const;

  /// Sparse "coef*c^i*z^j" terms, z-degree descending then c-degree descending.
  std::string dump() const;
};

/// Exact quotient a / b for b monic in z.  Throws std::logic_error on a
/// nonzero remainder.
BivarPoly divexact_monic(const BivarPoly& a, const BivarPoly& b);

/// Degree caps.
inline constexpr int kIterateCap = 12;
inline constexpr int kPeriodCap = 8;
inline constexpr int kPreperiodCap = 4;

/// f_c^n(z), n in [1, kIterateCap].
const BivarPoly& fc_iterate(int n);

/// Phi_N(c, z), N in [1, kPeriodCap].
const BivarPoly& dynatomic(int N);

/// Phi_{M,N}(c, z) for 1 <= M <= kPreperiodCap.  Computed as
/// Phi_{1,N}(c, f_c^{M-1}(z)).
BivarPoly gen_dynatomic(int M, int N);

/// D(N) = sum_{n | N} mu(N/n) 2^n and R(N) = D(N)/N (R(1) = 2).
Int degree_D(int N);
Int cycle_bound_R(int N);

QPoly specialize(const BivarPoly& p, const Rat& c);
std::vector<QuadElem> specialize(const BivarPoly& p, const QuadElem& c);

/// Phi_N(c, z) and Phi_{M,N}(c, z) for a fixed rational c, computed in Q[z]
/// directly (much cheaper than specialising the bivariate polynomial).
QPoly dynatomic_at(int N, const Rat& c);
QPoly gen_dynatomic_at(int M, int N, const Rat& c);

}  // namespace dyn
