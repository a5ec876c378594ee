#pragma once

#include <string>
#include <string_view>

#include "dyn/arith.hpp"
#include "dyn/poly.hpp"

namespace dyn {

/// Q(sqrt(D)) with D squarefree, D != 0, 1.  D = 1 is reserved for Q itself
/// (see rationals()), used where a portrait is computed over the base field.
class QuadField {
 public:
  explicit QuadField(const Int& D);
  static QuadField rationals();

  const Int& D() const { return d_; }
  bool is_rational() const { return d_ == 1; }
  bool is_real() const { return d_ > 0; }
  /// Field discriminant: D if D = 1 mod 4, else 4D.
  Int discriminant() const;
  bool half_integral_basis() const;

  friend bool operator==(const QuadField& a, const QuadField& b) { return a.d_ == b.d_; }
  friend bool operator<(const QuadField& a, const QuadField& b) { return a.d_ < b.d_; }

 private:
  struct RationalTag {};
  explicit QuadField(RationalTag) : d_(1) {}
  Int d_;
};

/// u + v*sqrt(D).
class QuadElem {
 public:
  QuadElem() : K_(QuadField::rationals()) {}
  QuadElem(const QuadField& K, Rat u, Rat v = 0);
  static QuadElem rational(const Rat& u) { return QuadElem(QuadField::rationals(), u, 0); }

  const QuadField& field() const { return K_; }
  const Rat& u() const { return u_; }
  const Rat& v() const { return v_; }
  bool is_rational() const { return v_ == 0; }
  bool is_zero() const { return u_ == 0 && v_ == 0; }

  QuadElem conj() const { return QuadElem(K_, u_, -v_); }
  Rat norm() const { return u_ * u_ - v_ * v_ * K_.D(); }
  Rat trace() const { return 2 * u_; }
  QuadElem inv() const;

  friend QuadElem operator+(const QuadElem& a, const QuadElem& b);
  friend QuadElem operator-(const QuadElem& a, const QuadElem& b);
  friend QuadElem operator-(const QuadElem& a) { return QuadElem(a.K_, -a.u_, -a.v_); }
  friend QuadElem operator*(const QuadElem& a, const QuadElem& b);
  friend QuadElem operator/(const QuadElem& a, const QuadElem& b) { return a * b.inv(); }
  friend bool operator==(const QuadElem& a, const QuadElem& b) {
    return a.K_ == b.K_ && a.u_ == b.u_ && a.v_ == b.v_;
  }
  friend bool operator<(const QuadElem& a, const QuadElem& b) {
    if (a.u_ != b.u_) return a.u_ < b.u_;
    return a.v_ < b.v_;
  }

  /// Coordinates in the ring-of-integers basis (1, w).
  std::pair<Rat, Rat> omega_coords() const;
  /// Real embeddings (real fields) or real/imag parts (imaginary fields).
  double approx_embedding(int which) const;
  double approx_abs(int which) const;

 private:
  QuadField K_;
  Rat u_, v_;
};

QuadElem parse_quad(std::string_view s, const QuadField& K);
QuadElem parse_quad(std::string_view s);
std::string to_string(const QuadElem& x);

/// Primitive minimal polynomial over Z, positive leading coefficient
/// (degree 1 for rational elements).
IntPoly minimal_polynomial(const QuadElem& x);

struct Enclosure {
  double lo = 0, hi = 0;
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

/// Mahler measure of a x^2 + b x + c, exact enclosure with relative width
/// below 1e-15.
Enclosure mahler_quadratic(const Int& a, const Int& b, const Int& c);
/// Exact test M(a x^2 + b x + c) <= T.
bool mahler_quadratic_le(const Int& a, const Int& b, const Int& c, const Rat& T);

/// H(alpha) = M(f)^(1/2) for alpha a root of the primitive irreducible quadratic f.
Enclosure height_quadratic(const IntPoly& f);
/// Exact decision H(alpha) <= B.
bool height_quadratic_le(const IntPoly& f, const Rat& B);

/// Absolute height of an element of degree <= 2.
Enclosure height(const QuadElem& x);
bool height_le(const QuadElem& x, const Rat& B);

}  // namespace dyn
