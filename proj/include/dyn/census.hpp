#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dyn/arith.hpp"
#include "dyn/catalog.hpp"
#include "dyn/constants.hpp"
#include "dyn/forms.hpp"
#include "dyn/quad.hpp"

namespace dyn {

enum class CensusMode { Exhaustive, Parametrized };
std::string mode_name(CensusMode m);
/// "exhaustive" or "parametrized"; throws ParseError otherwise.
CensusMode parse_mode(std::string_view s);

/// A c worth a second look: an unnamed portrait, or a point past the
/// preperiod/period caps.
struct Anomaly {
  std::string c;
  std::string field;  // "Q" or "Q(sqrt(D))"
  std::string kind;   // "other", "cap", "other-large"
  std::string code;   // canonical code (hex) of the portrait
  int vertices = 0;
};

struct CensusRow {
  PortraitLabel label;
  Int B;
  int degree = 1;
  CensusMode mode = CensusMode::Exhaustive;
  Int count;
  std::vector<Anomaly> anomalies;
  Int generic_k;  // degree 2: rational c counted through the generic-K reading
};

struct CensusTable {
  int degree = 1;
  CensusMode mode = CensusMode::Exhaustive;
  Int B;
  Int total;  // degree 1: #{c in Q : H(c) <= B}
  std::vector<CensusRow> rows;
  std::vector<std::string> notes;
  const CensusRow* row(Label l) const;
};

// --- rationals of bounded height -------------------------------------------

/// Calls f(c) for every c in Q with H(c) <= B, each exactly once, ordered by
/// denominator then numerator.
void enum_rationals(const Int& B, const std::function<void(const Rat&)>& f);
/// #{c in Q : H(c) <= B} = 1 + 2 #{(a, b) in [1, B]^2 coprime}, by a Mobius sum.
Int count_rationals(const Int& B);

// --- degree 1 ------------------------------------------------------------

struct CensusOptions {
  std::vector<Label> labels;  // empty: every label
  int workers = 1;
};

/// One c with a nonempty portrait.
struct Deg1Hit {
  Rat c;
  PortraitLabel label;
};

/// Nonempty-portrait c with H(c) <= B, sorted by c.  Exhaustive mode runs
/// portrait_Q on every c with square denominator; parametrized mode only on
/// images of the cycle families (or of the requested labels' own maps).
std::vector<Deg1Hit> census_deg1_hits(const Int& B, CensusMode mode, const CensusOptions& opt = {});
/// Rows for every named label plus Other; the empty portrait is
/// count_rationals(B) minus the rest.  Parametrized mode refuses B < 10.
CensusTable census_deg1(const Int& B, CensusMode mode, const CensusOptions& opt = {});
/// Table at B from hits computed at some B' >= B.
CensusTable tabulate_deg1(const std::vector<Deg1Hit>& hits, const Int& B, CensusMode mode,
                          const CensusOptions& opt = {});

/// Upper bound for H(x) over x with H(pi(x)) <= B: (g B / m)^(1/k), with g the
/// largest possible gcd of G0(a, b), G1(a, b) and m from min_sup_sphere.
Int x_height_bound(Label l, const Int& B);
/// prod p^(max V_p) over the bad primes: bounds gcd(G0(a, b), G1(a, b)) for
/// coprime a, b.
Int max_gcd(const HomPair& G);

/// #{[a:b] in P^1(Q) : H(pi([a:b])) <= B}; workers <= 1 is the serial reference.
Int count_NQ1_direct(Label l, const Int& B, int workers = 1);

struct GcdLemmaReport {
  bool ok = true;
  long pairs = 0;
  long odd_pairs = 0;  // both odd: gcd 16
  std::string counterexample;
};
/// gcd(G0(a, b), G1(a, b)) for 8(2,1,1) over coprime |a|, |b| <= range: 1 when
/// a, b have different parity, 16 when both are odd.
GcdLemmaReport verify_gcd_lemma(long range, int workers = 1);

struct FiberReport {
  int examined = 0;
  int size_four = 0;
  std::vector<std::pair<Rat, int>> exceptions;  // c and its fibre size
};
/// Fibre sizes over the first `count` distinct c = pi(x) (x by height) whose
/// portrait contains the label's graph.
FiberReport fiber_sizes(Label l, int count);

// --- degree 2 ------------------------------------------------------------

struct Deg2Hit {
  QuadElem c;          // one representative; conjugates count once more
  IntPoly minpoly;     // of c
  PortraitLabel label; // portrait that decided the hit
  Label row = Label::Other;  // row the hit (or its anomaly) belongs to
  int weight = 1;      // 2 for quadratic c
  bool counted = true; // false: anomaly only
  bool generic_k = false;
  std::string anomaly;  // "", "other", "other-large" or "cap"
  std::string field;    // field of the deciding portrait
  int vertices = 0;
};

/// Counts of c with [Q(c):Q] <= 2, H(c) <= B and Preper(f_c, K) matching a
/// requested label for some quadratic K containing c.  The empty portrait is
/// not tabulated.  Exhaustive mode is O(B^6) and meant for small B.
std::vector<Deg2Hit> census_deg2_hits(const Int& B, CensusMode mode, const CensusOptions& opt = {});
CensusTable census_deg2(const Int& B, CensusMode mode, const CensusOptions& opt = {});
CensusTable tabulate_deg2(const std::vector<Deg2Hit>& hits, const Int& B, CensusMode mode,
                          const CensusOptions& opt = {});

/// Labels of Preper(f_c, K) over quadratic K for rational c: the Q-portrait
/// (any K adding no points) and one entry per field adding points.
struct FieldLabel {
  QuadField field;
  PortraitLabel label;
  int vertices = 0;
};
struct RationalCLabels {
  PortraitLabel over_Q;
  int over_Q_vertices = 0;
  std::vector<FieldLabel> fields;
  bool beyond_caps = false;
};
RationalCLabels rational_c_labels(const Rat& c);

// --- reports ---------------------------------------------------------------

struct CompareRow {
  Int B;
  Int empirical;
  double predicted = 0;
  double ratio = 0;
  double residual = 0;
  double scaled_residual = 0;  // residual / B^e with e the error exponent
};
struct CompareReport {
  Label label = Label::Other;
  int degree = 1;
  LeadingConstant constant;
  double error_exponent = 0;
  std::vector<CompareRow> rows;
};
CompareReport compare_report(Label l, int degree, const std::vector<Int>& Bs,
                             const ConstantsOptions& copt = {}, int workers = 1);

std::string census_tsv(const CensusTable& t);
std::string census_json(const CensusTable& t);
std::string compare_tsv(const CompareReport& r);
std::string compare_json(const CompareReport& r);

/// Accepts "1e6", "2000", "10^4".
Int parse_bound(std::string_view s);

}  // namespace dyn
