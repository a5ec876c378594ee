#include <doctest.h>

#include <random>
#include <set>

#include "dyn/preper.hpp"

using namespace dyn;

namespace {

// Rational preperiodic points of z^2 + c by iterating every candidate n/s
// (s^2 the denominator of c) inside the escape disc until its orbit repeats.
std::set<Rat> orbit_oracle(const Rat& c) {
  std::set<Rat> out;
  auto s = is_perfect_square(Int(c.get_den()));
  if (!s) return out;
  const Rat R = 1 + Rat(abs(c));  // at least the escape radius
  const Int nmax = Int(R * *s) + 1;
  for (Int n = -nmax; n <= nmax; ++n) {
    Rat x = make_rat(n, *s);
    std::set<Rat> seen;
    bool pre = false;
    for (int step = 0; step < 64; ++step) {
      if (!seen.insert(x).second) {
        pre = true;
        break;
      }
      // Larger denominators square at every step and never come back.
      if (abs(x) > R || x.get_den() != *s) break;
      x = x * x + c;
    }
    if (pre) out.insert(make_rat(n, *s));
  }
  return out;
}

}  // namespace

TEST_CASE("named portraits over Q") {
  CHECK(portrait_Q(make_rat(-91, 36)).label.id == Label::P8_211);
  CHECK(portrait_Q(Rat(1)).label.id == Label::Empty);
  CHECK(portrait_Q(Rat(0)).graph.size() == 3);
  CHECK(portrait_Q(Rat(0)).label.id == Label::Other);
  CHECK(portrait_Q(Rat(-1)).label.id == Label::Other);
  CHECK(portrait_Q(Rat(-2)).graph.size() == 5);
  CHECK(portrait_Q(Rat(-2)).label.id == Label::Other);
  // c = -29/16 has a rational 3-cycle.
  CHECK(portrait_Q(make_rat(-29, 16)).label.id == Label::P8_3);
  // Non-square denominator: nothing.
  CHECK(preper_points_Q(make_rat(1, 2)).points.empty());
}

TEST_CASE("rational preperiodic points against orbit iteration") {
  std::mt19937_64 rng(29);
  int nonempty = 0;
  for (int i = 0; i < 400; ++i) {
    long s = static_cast<long>(rng() % 12) + 1;
    long a = static_cast<long>(rng() % 601) - 400;
    Rat c = make_rat(a, s * s);
    PreperSet ps = preper_points_Q(c);
    std::set<Rat> got;
    for (const auto& pt : ps.points) got.insert(pt.value.u());
    CHECK_MESSAGE(got == orbit_oracle(c), "c = " << to_string(c));
    if (!got.empty()) ++nonempty;
    check_preper_set(ps);
  }
  CHECK(nonempty > 20);
}

TEST_CASE("points over quadratic fields") {
  PreperSet s = preper_points_quad(parse_quad("0", QuadField(Int(-1))));
  CHECK(s.points.size() == 5);
  CHECK(portrait_of(s).label.id == Label::Other);
  check_preper_set(s);
  // c = -35/4 over Q(sqrt 2) is one of the 8(2,1,1) quadratic examples.
  PreperSet t = preper_points_quad(QuadElem(QuadField(Int(2)), make_rat(-35, 4), 0));
  check_preper_set(t);
  CHECK(t.points.size() >= 8);
}

TEST_CASE("conjugate c has the same portrait") {
  std::mt19937_64 rng(31);
  const long Ds[] = {-7, -3, -1, 2, 3, 5, 13};
  for (int i = 0; i < 60; ++i) {
    QuadField K(Int(Ds[rng() % 7]));
    Rat u = make_rat(static_cast<long>(rng() % 41) - 30, 4 * (static_cast<long>(rng() % 3) + 1));
    Rat v = make_rat(static_cast<long>(rng() % 9) - 4, 2 * (static_cast<long>(rng() % 2) + 1));
    QuadElem c(K, u, v), cbar(K, u, -v);
    PreperSet s = preper_points_quad(c);
    check_preper_set(s);
    CHECK(portrait_of(s).label == portrait_quad(cbar).label);
  }
}

TEST_CASE("fields adding points") {
  for (long a : {-91, -29, -3, 0, -2 * 16}) {
    Rat c = a == -91 ? make_rat(-91, 36) : a == -29 ? make_rat(-29, 16) : a == -3 ? make_rat(-3, 4) : Rat(a);
    const std::size_t base = preper_points_Q(c).points.size();
    std::set<Int> listed;
    for (const auto& nf : quad_fields_with_new_points(c)) {
      CHECK(nf.set.points.size() > base);
      check_preper_set(nf.set);
      listed.insert(nf.field.D());
    }
    // Fields not listed add nothing.
    for (long D : {-5, -2, 6, 7, 11, 17}) {
      if (listed.count(Int(D))) continue;
      CHECK(preper_points_quad(QuadElem(QuadField(Int(D)), c, 0)).points.size() == base);
    }
  }
}

TEST_CASE("escape radius") {
  CHECK(within_escape_radius(Rat(2), Rat(-2)));
  CHECK_FALSE(within_escape_radius(make_rat(21, 10), Rat(-2)));
  CHECK(within_escape_radius(make_rat(1, 2), Rat(0)));
}
