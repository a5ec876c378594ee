#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dyn/graph.hpp"

namespace dyn {

enum class Label : int {
  Empty,
  P4_11,
  P4_2,
  P6_11,
  P6_2,
  P6_3,
  P8_211,
  P8_11a,
  P8_11b,
  P8_2a,
  P8_2b,
  P10_211a,
  P10_211b,
  P8_3,
  P8_4,
  P10_311,
  P10_32,
  Other,
};

inline constexpr int kNamedLabelCount = 17;

/// All named labels in table order.
const std::vector<Label>& named_labels();

/// "8(2,1,1)", "∅", "Other".
std::string label_name(Label l);
/// Shell-safe form: "8_2_1_1", "10_2_1_1a", "empty".
std::string label_cli_name(Label l);
/// Accepts either form; throws std::invalid_argument on unknown names.
Label parse_label(std::string_view s);

int label_genus(Label l);
int label_aut_order(Label l);
int label_vertex_count(Label l);

struct PortraitLabel {
  Label id = Label::Other;
  std::string code;  // canonical code (raw bytes)
  std::string name() const { return label_name(id); }
  bool named() const { return id != Label::Other; }
  friend bool operator==(const PortraitLabel& a, const PortraitLabel& b) {
    return a.id == b.id && a.code == b.code;
  }
};

/// Catalog graph of a named label.  For the a/b pairs this triggers the
/// exemplar pinning on first use.
const FunctionalGraph& catalog_graph(Label l);

PortraitLabel classify(const FunctionalGraph& g);

/// Subgraph containment between catalog graphs.  Throws for Other.
bool catalog_contains(Label outer, Label inner);

/// Outcome of the a/b pinning, one line per pair, for diagnostics.
struct PinningRecord {
  Label label;
  std::string shape;  // "sym", "chain", "fixed-leaf", "cycle-leaf"
  int votes_for = 0;
  int votes_against = 0;
};
const std::vector<PinningRecord>& ab_pinning();

/// The two unlabelled candidate shapes for an a/b pair, before pinning.
std::vector<std::pair<std::string, FunctionalGraph>> ab_candidate_shapes(Label l);

}  // namespace dyn
