// Quantifier-alternation graph over sorts: an edge S1 -> S2 records an
// existential of sort S2 in the scope of a universal of sort S1 (in
// negation normal form), or a function from S1 into S2. Acyclicity of this
// graph is what keeps grounding finite.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tipforge/fol.hpp"

namespace tipforge {

struct QaEdge {
  std::string from, to;
  std::string provenance;  // which quantifier or function induced the edge

  bool operator==(const QaEdge& o) const {
    return from == o.from && to == o.to && provenance == o.provenance;
  }
};

struct QaGraph {
  std::vector<std::string> vertices;  // every sort of the vocabulary
  std::vector<QaEdge> edges;          // deduplicated, in discovery order

  bool acyclic() const;
  // Vertices in an order where every edge goes forward; nullopt when cyclic.
  std::optional<std::vector<std::string>> topo_order() const;
  // Edges that lie on some cycle (for error reporting).
  std::vector<QaEdge> cycle_edges() const;
};

// Union of the edges induced by each formula (converted to negation normal
// form internally). Vertices are all sorts of the vocabulary.
QaGraph qa_graph(const std::vector<FoPtr>& formulas, const FoVocabulary& vocab);

// Graphviz rendering, deterministic node and edge order.
std::string emit_qa_dot(const QaGraph& graph);

}  // namespace tipforge
