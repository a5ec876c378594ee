#pragma once

#include <string>
#include <vector>

namespace dyn {

/// Finite functional graph: vertex i maps to succ[i].  Optional payload
/// strings (point values) are carried along but ignored by all structural
/// operations.
struct FunctionalGraph {
  std::vector<int> succ;
  std::vector<std::string> names;

  FunctionalGraph() = default;
  explicit FunctionalGraph(std::vector<int> s) : succ(std::move(s)) {}

  int size() const { return static_cast<int>(succ.size()); }
  int add_vertex(int target, std::string name = {});
  std::vector<int> in_degrees() const;
  /// Vertex sets of the cycles, each listed in succ order from its smallest vertex.
  std::vector<std::vector<int>> cycles() const;
  /// Relabel: vertex i becomes perm[i].
  FunctionalGraph permuted(const std::vector<int>& perm) const;
  void validate() const;
};

/// Byte-string code, equal for two graphs iff they are isomorphic.
std::string canonical_code(const FunctionalGraph& g);
std::string to_hex(const std::string& bytes);

struct AdmissibilityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

AdmissibilityReport check_strongly_admissible(const FunctionalGraph& g);
inline bool is_strongly_admissible(const FunctionalGraph& g) {
  return check_strongly_admissible(g).ok;
}

/// Minimal strongly admissible graph containing g: a second fixed point is
/// added when g has exactly one, then every vertex of in-degree 1 receives a
/// fresh leaf parent.  Throws std::invalid_argument if g exceeds the cycle
/// bounds or has a vertex of in-degree above 2.
FunctionalGraph admissible_completion(const FunctionalGraph& g);

/// True iff `inner` embeds injectively into `outer` as a functional subgraph.
bool embeds(const FunctionalGraph& inner, const FunctionalGraph& outer);

}  // namespace dyn
