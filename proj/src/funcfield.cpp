#include "dyn/funcfield.hpp"

#include <stdexcept>

namespace dyn {

FuncField::FuncField(std::optional<IntPoly> h) {
  if (h) h_ = to_qpoly(*h);
}

FFElem FuncField::normalize(QPoly a, QPoly b, QPoly d) const {
  if (d.is_zero()) throw std::domain_error("function field: zero denominator");
  if (!h_ && !b.is_zero()) throw std::logic_error("function field: y used without a curve");
  if (a.is_zero() && b.is_zero()) return {QPoly(), QPoly(), QPoly::constant(1)};
  QPoly g = gcd(gcd(a, b), d);
  if (g.degree() > 0) {
    a = divmod(a, g).first;
    b = divmod(b, g).first;
    d = divmod(d, g).first;
  }
  Rat s = 1 / d.lead();
  return {s * a, s * b, s * d};
}

FFElem FuncField::x() const { return {QPoly{0, 1}, QPoly(), QPoly{1}}; }

FFElem FuncField::y() const {
  if (!h_) throw std::logic_error("function field: no y in genus 0");
  return {QPoly(), QPoly{1}, QPoly{1}};
}

FFElem FuncField::constant(const Rat& r) const {
  return normalize(QPoly::constant(r), QPoly(), QPoly{1});
}

FFElem FuncField::add(const FFElem& u, const FFElem& v) const {
  return normalize(u.a * v.d + v.a * u.d, u.b * v.d + v.b * u.d, u.d * v.d);
}

FFElem FuncField::sub(const FFElem& u, const FFElem& v) const {
  return normalize(u.a * v.d - v.a * u.d, u.b * v.d - v.b * u.d, u.d * v.d);
}

FFElem FuncField::mul(const FFElem& u, const FFElem& v) const {
  QPoly a = u.a * v.a;
  if (h_) a = a + u.b * v.b * *h_;
  return normalize(a, u.a * v.b + v.a * u.b, u.d * v.d);
}

FFElem FuncField::inv(const FFElem& u) const {
  if (is_zero(u)) throw std::domain_error("function field: inverse of zero");
  // 1 / ((a + b y) / d) = d (a - b y) / (a^2 - b^2 h)
  QPoly n = u.a * u.a;
  if (h_) n = n - u.b * u.b * *h_;
  if (n.is_zero()) throw std::domain_error("function field: zero divisor (h is a square?)");
  return normalize(u.d * u.a, -(u.d * u.b), n);
}

bool FuncField::equal(const FFElem& u, const FFElem& v) const {
  return u.a == v.a && u.b == v.b && u.d == v.d;
}

FFElem FuncField::eval(const IntPoly& p, const FFElem& X) const {
  FFElem r = constant(0);
  for (int i = p.degree(); i >= 0; --i) r = add(mul(r, X), constant(Rat(p.c[i])));
  return r;
}

FFElem FuncField::eval(const PolyXY& P, const FFElem& X, const FFElem& Y) const {
  FFElem r = constant(0);
  for (int j = static_cast<int>(P.y.size()) - 1; j >= 0; --j)
    r = add(mul(r, Y), eval(P.y[j], X));
  return r;
}

FFElem FuncField::from_poly(const PolyXY& p) const {
  if (p.y.size() <= 1) return eval(p.y.empty() ? IntPoly() : p.y[0], x());
  return eval(p, x(), y());
}

std::string FuncField::to_string(const FFElem& u) const {
  std::string s = "(" + u.a.to_string();
  if (!u.b.is_zero()) s += ") + (" + u.b.to_string() + ")*y";
  else s += ")";
  if (!(u.d == QPoly{1})) s += " / (" + u.d.to_string() + ")";
  return s;
}

}  // namespace dyn
