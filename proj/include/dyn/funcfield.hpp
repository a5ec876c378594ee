#pragma once

#include <optional>
#include <string>

#include "dyn/curves.hpp"
#include "dyn/poly.hpp"

namespace dyn {

/// Element (a + b y) / d of Q(x)[y] / (y^2 - h), or of Q(x) when h is absent.
/// Kept normalised: gcd(a, b, d) = 1 and d monic, so equality is structural.
struct FFElem {
  QPoly a, b, d;
};

class FuncField {
 public:
  explicit FuncField(std::optional<IntPoly> h);

  FFElem x() const;
  FFElem y() const;
  FFElem constant(const Rat& r) const;
  FFElem from_poly(const PolyXY& p) const;

  FFElem add(const FFElem& u, const FFElem& v) const;
  FFElem sub(const FFElem& u, const FFElem& v) const;
  FFElem mul(const FFElem& u, const FFElem& v) const;
  /// Throws std::domain_error on zero.
  FFElem inv(const FFElem& u) const;
  FFElem div(const FFElem& u, const FFElem& v) const { return mul(u, inv(v)); }
  bool is_zero(const FFElem& u) const { return u.a.is_zero() && u.b.is_zero(); }
  bool equal(const FFElem& u, const FFElem& v) const;

  /// p(X) for a univariate polynomial.
  FFElem eval(const IntPoly& p, const FFElem& X) const;
  /// P(X, Y).
  FFElem eval(const PolyXY& P, const FFElem& X, const FFElem& Y) const;

  std::string to_string(const FFElem& u) const;

 private:
  FFElem normalize(QPoly a, QPoly b, QPoly d) const;
  std::optional<QPoly> h_;
};

}  // namespace dyn
