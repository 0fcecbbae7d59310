#include <map>
#include <sstream>

#include "tipforge/lazy.hpp"
#include "tipforge/qa_graph.hpp"

namespace tipforge {

const char* vc_kind_name(VcKind kind) {
  switch (kind) {
    case VcKind::Initiation: return "initiation";
    case VcKind::Consecution: return "consecution";
    case VcKind::Safety: return "safety";
  }
  return "?";
}

std::vector<Vc> generate_vcs(const TransitionSystem& ts,
                             const std::vector<FoPtr>& axioms) {
  std::vector<FoPtr> theta_parts = axioms;
  theta_parts.insert(theta_parts.end(), ts.theta.begin(), ts.theta.end());
  FoPtr theta = fo_and(theta_parts);
  FoPtr inv = fo_and(ts.invariant);

  std::map<std::string, std::string> prime_map;
  for (const std::string& m : ts.mutable_relations)
    prime_map[m] = primed_name(m);
  FoPtr inv_primed = rename_relations(inv, prime_map);

  std::vector<Vc> vcs;
  vcs.push_back(
      Vc{VcKind::Initiation, "", fo_implies(theta, fo_implies(ts.init, inv))});
  for (const Transition& t : ts.transitions)
    vcs.push_back(Vc{VcKind::Consecution, t.name,
                     fo_implies(theta, fo_implies(fo_and({inv, t.formula}),
                                                  inv_primed))});
  vcs.push_back(
      Vc{VcKind::Safety, "", fo_implies(theta, fo_implies(inv, ts.safety))});
  return vcs;
}

namespace {

std::string vc_label(const Vc& vc) {
  std::string label = vc_kind_name(vc.kind);
  if (vc.kind == VcKind::Consecution) label += " '" + vc.transition + "'";
  return label;
}

}  // namespace

std::optional<Cti> find_cti(const TransitionSystem& ts,
                            const std::vector<FoPtr>& axioms,
                            const EprOptions& opts) {
  std::vector<Vc> vcs = generate_vcs(ts, axioms);

  // Reject any condition outside the decidable fragment before solving
  // anything, so a failure cannot depend on which condition is checked
  // first.
  for (const Vc& vc : vcs) {
    QaGraph graph = qa_graph({fo_not(vc.formula)}, ts.vocab);
    if (!graph.acyclic()) {
      std::ostringstream os;
      os << ts.origin << ": negated " << vc_label(vc)
         << " condition has a cyclic quantifier-alternation graph:";
      for (const QaEdge& e : graph.cycle_edges())
        os << " " << e.from << "->" << e.to << " (" << e.provenance << ")";
      throw EprCyclicError(os.str(), graph.cycle_edges());
    }
  }

  for (const Vc& vc : vcs) {
    EprResult r = epr_sat({fo_not(vc.formula)}, ts.vocab, opts);
    if (!r.sat) continue;
    Cti cti;
    cti.structure = *r.model;
    cti.vc_kind = vc.kind;
    cti.transition = vc.transition;
    // A counterexample must actually falsify its condition.
    if (eval_on_structure(vc.formula, cti.structure))
      throw TipError("internal error: counterexample satisfies the " +
                     vc_label(vc) + " condition it should falsify");
    return cti;
  }
  return std::nullopt;
}

}  // namespace tipforge
