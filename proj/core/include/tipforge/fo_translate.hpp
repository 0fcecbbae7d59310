// Translation of threshold-guard formulas into many-sorted first-order
// axioms over one sort per named threshold, plus the cyclic-formula filter
// that keeps the translated axiom set inside the decidable fragment.
#pragma once

#include <string>
#include <vector>

#include "tipforge/fol.hpp"
#include "tipforge/simple_formula.hpp"

namespace tipforge {

// Sort named after a threshold: elements stand for the sets meeting it.
std::string threshold_sort_name(const std::string& threshold_name);

// Membership relation for a threshold sort ("member_<t>(node, Q_<t>)") or a
// set parameter ("member_<a>(node)").
std::string member_relation_name(const std::string& name);

// Vocabulary induced by a specification: the node sort, one sort per
// threshold, membership relations for thresholds and set parameters.
FoVocabulary fo_vocab(const ProtocolSpec& spec);

// Translates a guard formula. A threshold-guarded conclusion g_t(B) becomes
// "some element of the threshold sort lies inside B"; nonempty(B) and
// universal(B) become plain node quantification. Quantified set variables
// become variables of their guard's sort. Introduced witness and node
// variable names are deterministic and avoid the formula's binder names.
FoPtr fo_translate(const TipPtr& f, const ProtocolSpec& spec);
FoPtr fo_translate(const SimpleFormula& f, const ProtocolSpec& spec);

// Removes the formulas whose conclusion guard names one of their own
// quantifier guards (their translations are tautological, and keeping them
// would put a self-edge in the alternation graph). Requires the
// feasibility, threshold-order, and guard-sanity gates to hold, and
// verifies that the surviving set translates to an acyclic alternation
// graph, failing loudly otherwise.
std::vector<SimpleFormula> drop_cyclic(const std::vector<SimpleFormula>& delta,
                                       const ProtocolSpec& spec,
                                       long lia_budget = 100000);

// Guard-comparison facts expressible as valid simple formulas: threshold
// inclusions (forall x:g[ti]. g[tj](x)), per-threshold nonemptiness or
// totality, and literal facts (g[tj](lit), nonempty(lit), universal(lit)).
// Emitted alongside an axiom set, they let syntactic subsumption stand in
// for first-order entailment. Deterministic order; every returned formula
// is valid under the spec's assumptions.
std::vector<SimpleFormula> subsumption_fact_formulas(const ProtocolSpec& spec,
                                                     long lia_budget = 100000);

}  // namespace tipforge
