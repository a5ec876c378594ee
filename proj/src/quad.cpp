#include "dyn/quad.hpp"

#include <cmath>

namespace dyn {

QuadField::QuadField(const Int& D) : d_(D) {
  if (D == 0 || D == 1) throw std::invalid_argument("QuadField: D must not be 0 or 1");
  if (!is_squarefree(D)) throw std::invalid_argument("QuadField: D must be squarefree");
}

QuadField QuadField::rationals() { return QuadField(RationalTag{}); }

bool QuadField::half_integral_basis() const {
  Int r = d_ % 4;
  if (r < 0) r += 4;
  return !is_rational() && r == 1;
}

Int QuadField::discriminant() const { return half_integral_basis() ? d_ : Int(4 * d_); }

QuadElem::QuadElem(const QuadField& K, Rat u, Rat v) : K_(K), u_(std::move(u)), v_(std::move(v)) {
  u_.canonicalize();
  v_.canonicalize();
  if (K_.is_rational() && v_ != 0) throw std::invalid_argument("QuadElem: irrational part over Q");
}

static void check_same(const QuadElem& a, const QuadElem& b) {
  if (!(a.field() == b.field())) {
    // rational elements embed in every field
    if (a.is_rational() || b.is_rational()) return;
    throw std::invalid_argument("QuadElem: field mismatch");
  }
}

static QuadField common(const QuadElem& a, const QuadElem& b) {
  check_same(a, b);
  return a.field().is_rational() ? b.field() : a.field();
}

QuadElem operator+(const QuadElem& a, const QuadElem& b) {
  return QuadElem(common(a, b), a.u_ + b.u_, a.v_ + b.v_);
}

QuadElem operator-(const QuadElem& a, const QuadElem& b) {
  return QuadElem(common(a, b), a.u_ - b.u_, a.v_ - b.v_);
}

QuadElem operator*(const QuadElem& a, const QuadElem& b) {
  QuadField K = common(a, b);
  return QuadElem(K, a.u_ * b.u_ + a.v_ * b.v_ * K.D(), a.u_ * b.v_ + a.v_ * b.u_);
}

QuadElem QuadElem::inv() const {
  if (is_zero()) throw std::domain_error("QuadElem: inverse of zero");
  Rat n = norm();
  return QuadElem(K_, u_ / n, -v_ / n);
}

std::pair<Rat, Rat> QuadElem::omega_coords() const {
  // w = (1 + sqrt D)/2 when D = 1 mod 4, so sqrt D = 2w - 1.
  if (K_.half_integral_basis()) return {u_ - v_, 2 * v_};
  return {u_, v_};
}

double QuadElem::approx_embedding(int which) const {
  double d = std::sqrt(std::fabs(K_.D().get_d()));
  if (K_.is_real()) return u_.get_d() + (which == 0 ? 1 : -1) * v_.get_d() * d;
  return which == 0 ? u_.get_d() : v_.get_d() * d;
}

double QuadElem::approx_abs(int which) const {
  if (K_.is_rational()) return std::fabs(u_.get_d());
  if (K_.is_real()) return std::fabs(approx_embedding(which));
  return std::hypot(approx_embedding(0), approx_embedding(1));
}

std::string to_string(const QuadElem& x) {
  if (x.field().is_rational() || x.v() == 0) return to_string(x.u());
  std::string s = to_string(x.u());
  if (x.v() < 0)
    s += "-" + to_string(Rat(-x.v()));
  else
    s += "+" + to_string(x.v());
  return s + "*sqrt(" + x.field().D().get_str() + ")";
}

static std::string strip(std::string_view s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  return t;
}

QuadElem parse_quad(std::string_view text) {
  std::string s = strip(text);
  auto pos = s.find("sqrt(");
  if (pos == std::string::npos) return QuadElem::rational(parse_rat(s));
  auto close = s.find(')', pos);
  if (close == std::string::npos || close + 1 != s.size()) throw ParseError("bad sqrt(...) term");
  Int D(parse_rat(s.substr(pos + 5, close - pos - 5)).get_num());
  QuadField K = [&] {
    try {
      return QuadField(D);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }();
  std::string pre = s.substr(0, pos);
  if (!pre.empty() && pre.back() == '*') pre.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = pre.size(); i-- > 1;)
    if ((pre[i] == '+' || pre[i] == '-') && pre[i - 1] != '+' && pre[i - 1] != '-' &&
        pre[i - 1] != '/') {
      split = i;
      break;
    }
  std::string us = split == std::string::npos ? "" : pre.substr(0, split);
  std::string vs = split == std::string::npos ? pre : pre.substr(split);
  if (!vs.empty() && vs[0] == '+') vs.erase(0, 1);
  if (vs.size() >= 2 && vs[0] == '-' && vs[1] == '-') vs.erase(0, 2);
  Rat v = (vs.empty() || vs == "+") ? Rat(1) : vs == "-" ? Rat(-1) : parse_rat(vs);
  Rat u = us.empty() ? Rat(0) : parse_rat(us);
  return QuadElem(K, u, v);
}

QuadElem parse_quad(std::string_view s, const QuadField& K) {
  QuadElem x = parse_quad(s);
  if (x.field().is_rational()) return QuadElem(K, x.u(), 0);
  if (!(x.field() == K)) throw ParseError("element field differs from requested field");
  return x;
}

IntPoly minimal_polynomial(const QuadElem& x) {
  if (x.is_rational()) return to_primitive_intpoly(QPoly(std::vector<Rat>{-x.u(), Rat(1)}));
  return to_primitive_intpoly(QPoly(std::vector<Rat>{x.norm(), -x.trace(), Rat(1)}));
}

namespace {

constexpr unsigned long kScaleBits = 160;

// Enclosure of sqrt(q) for rational q >= 0 as rationals.
std::pair<Rat, Rat> sqrt_enclosure(const Rat& q) {
  Int scaled = (Int(q.get_num()) << (2 * kScaleBits)) / Int(q.get_den());
  Int s = isqrt(scaled);
  Rat one = Rat(Int(1) << kScaleBits);
  Rat lo = Rat(s) / one;
  Rat hi = Rat(s + 1) / one;
  return {lo, hi};
}

double down(const Rat& q) {
  double d = q.get_d();
  return std::nextafter(d, -INFINITY);
}
double up(const Rat& q) {
  double d = q.get_d();
  return std::nextafter(d, INFINITY);
}

}  // namespace

Enclosure mahler_quadratic(const Int& a, const Int& b, const Int& c) {
  if (a == 0) {
    Int m = abs(b) > abs(c) ? Int(abs(b)) : Int(abs(c));
    if (b == 0) m = abs(c);
    return {down(Rat(m)), up(Rat(m))};
  }
  Int base = abs(a) > abs(c) ? Int(abs(a)) : Int(abs(c));
  Int disc = b * b - 4 * a * c;
  Rat lo = base, hi = base;
  if (disc >= 0) {
    auto [slo, shi] = sqrt_enclosure(Rat(disc));
    Rat tlo = (Rat(abs(b)) + slo) / 2, thi = (Rat(abs(b)) + shi) / 2;
    if (tlo > lo) lo = tlo;
    if (thi > hi) hi = thi;
  }
  return {down(lo), up(hi)};
}

bool mahler_quadratic_le(const Int& a, const Int& b, const Int& c, const Rat& T) {
  if (a == 0) {
    if (b == 0) return Rat(abs(c)) <= T;
    return Rat(abs(b)) <= T && Rat(abs(c)) <= T;
  }
  if (Rat(abs(a)) > T || Rat(abs(c)) > T) return false;
  Int disc = b * b - 4 * a * c;
  if (disc < 0) return true;
  // (|b| + sqrt(disc))/2 <= T  <=>  2T - |b| >= 0 and disc <= (2T - |b|)^2
  Rat r = 2 * T - Rat(abs(b));
  if (r < 0) return false;
  return Rat(disc) <= r * r;
}

static void check_quadratic(const IntPoly& f) {
  if (f.degree() != 2) throw std::invalid_argument("height_quadratic: degree must be 2");
  if (content(f) != 1) throw std::invalid_argument("height_quadratic: polynomial not primitive");
  Int disc = f.c[1] * f.c[1] - 4 * f.c[2] * f.c[0];
  if (disc >= 0 && is_perfect_square(disc))
    throw std::invalid_argument("height_quadratic: polynomial is reducible");
}

Enclosure height_quadratic(const IntPoly& f) {
  check_quadratic(f);
  Enclosure m = mahler_quadratic(f.c[2], f.c[1], f.c[0]);
  return {std::nextafter(std::sqrt(m.lo), 0.0), std::nextafter(std::sqrt(m.hi), INFINITY)};
}

bool height_quadratic_le(const IntPoly& f, const Rat& B) {
  check_quadratic(f);
  return mahler_quadratic_le(f.c[2], f.c[1], f.c[0], B * B);
}

Enclosure height(const QuadElem& x) {
  if (x.is_rational()) {
    double h = height_rational(x.u()).get_d();
    return {h, h};
  }
  return height_quadratic(minimal_polynomial(x));
}

bool height_le(const QuadElem& x, const Rat& B) {
  if (x.is_rational()) return Rat(height_rational(x.u())) <= B;
  return height_quadratic_le(minimal_polynomial(x), B);
}

}  // namespace dyn
