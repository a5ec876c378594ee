#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "dyn/arith.hpp"

namespace dyn {

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
template <class T>
struct Poly {
  std::vector<T> c;

  Poly() = default;
  explicit Poly(std::vector<T> v) : c(std::move(v)) { trim(); }
  Poly(std::initializer_list<long> v) {
    for (long x : v) c.emplace_back(x);
    trim();
  }
  static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
  static Poly monomial(const T& a, int d) {
    std::vector<T> v(d + 1, T(0));
    v[d] = a;
    return Poly(std::move(v));
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const T& lead() const { return c.back(); }
  T coef(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : T(0); }

  template <class U>
  U eval(const U& x) const {
    U r(0);
    for (int i = degree(); i >= 0; --i) r = r * x + U(c[i]);
    return r;
  }

  /// b^k * p(a/b) for k >= degree.
  template <class U>
  U eval_hom(const U& a, const U& b, int k) const {
    U r(0), bp(1);
    std::vector<U> bpow(k + 1);
    for (int i = 0; i <= k; ++i) {
      bpow[i] = bp;
      bp = bp * b;
    }
    U ap(1);
    for (int i = 0; i <= degree(); ++i) {
      r = r + U(c[i]) * ap * bpow[k - i];
      ap = ap * a;
    }
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> v(std::max(a.c.size(), b.c.size()), T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> v(std::max(a.c.size(), b.c.size()), T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) v[i] -= b.c[i];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a) { return Poly() - a; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> v(a.c.size() + b.c.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i] == 0) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
    }
    return Poly(std::move(v));
  }
  friend Poly operator*(const T& s, const Poly& a) {
    std::vector<T> v(a.c);
    for (auto& x : v) x *= s;
    return Poly(std::move(v));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

  Poly pow(unsigned e) const {
    Poly r = constant(T(1)), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// p(q(x)).
  Poly compose(const Poly& q) const {
    Poly r;
    for (int i = degree(); i >= 0; --i) r = r * q + constant(c[i]);
    return r;
  }

  Poly derivative() const {
    std::vector<T> v;
    for (int i = 1; i <= degree(); ++i) v.push_back(T(i) * c[i]);
    return Poly(std::move(v));
  }

  std::string to_string(const char* var = "x") const;
};

using IntPoly = Poly<Int>;
using QPoly = Poly<Rat>;

Int content(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);
QPoly to_qpoly(const IntPoly& p);
/// Clears denominators and removes content; leading coefficient made positive.
IntPoly to_primitive_intpoly(const QPoly& p);

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly gcd(QPoly a, QPoly b);
QPoly monic(const QPoly& a);

/// Exact quotient a / b in Z[x]; throws if b does not divide a.
IntPoly divexact(const IntPoly& a, const IntPoly& b);

/// Rational roots of a nonzero integer polynomial (distinct, ascending).
std::vector<Rat> rational_roots(const IntPoly& p);

/// Homogeneous resultant of two binary forms of degree k given by their
/// dehomogenisations (coefficients above the actual degree treated as zero).
Int homogeneous_resultant(const IntPoly& f, const IntPoly& g, int k);

/// Resultant via Sylvester determinant.
Int resultant(const IntPoly& f, const IntPoly& g);

/// Discriminant-free squarefree test over Q.
bool is_squarefree_poly(const IntPoly& p);

IntPoly parse_intpoly_list(const std::string& csv);

}  // namespace dyn
