#pragma once

#include <string>
#include <vector>

#include "dyn/arith.hpp"
#include "dyn/catalog.hpp"
#include "dyn/graph.hpp"
#include "dyn/quad.hpp"

namespace dyn {

struct OrbitPoint {
  QuadElem value;
  int m = 0;  // preperiod
  int n = 1;  // eventual period
};

/// Preper(f_c, K) with its graph; graph vertex i is points[i].
struct PreperSet {
  QuadField field = QuadField::rationals();
  QuadElem c;
  std::vector<OrbitPoint> points;
  FunctionalGraph graph;
  std::size_t candidates = 0;  // size of the searched candidate set
};

PreperSet preper_points_Q(const Rat& c);
/// Points in the field of c (c may be rational with a non-trivial field).
PreperSet preper_points_quad(const QuadElem& c);

struct Portrait {
  FunctionalGraph graph;
  PortraitLabel label;
};

Portrait portrait_Q(const Rat& c);
Portrait portrait_quad(const QuadElem& c);
Portrait portrait_of(const PreperSet& s);

/// Preperiod/period caps used to flag unusual points.
inline constexpr int kTailCap = 4;
inline constexpr int kCycleCap = 6;

struct NewPointField {
  QuadField field;
  PreperSet set;
  bool beyond_caps = false;  // some point has m > kTailCap or n > kCycleCap
};

/// All quadratic fields K with Preper(f_c, K) strictly larger than
/// Preper(f_c, Q), sorted by D.
std::vector<NewPointField> quad_fields_with_new_points(const Rat& c);

/// Escape radius test |x| <= 1/2 + sqrt(1/4 + |c|) for rational x, c, exact.
bool within_escape_radius(const Rat& x, const Rat& c);

/// Throws std::logic_error unless the set is forward closed, edges agree with
/// exact evaluation and (m, n) are consistent.
void check_preper_set(const PreperSet& s);

std::string preper_json(const PreperSet& s, const PortraitLabel& label);
std::string graph_json(const FunctionalGraph& g, const PortraitLabel& label);

}  // namespace dyn
