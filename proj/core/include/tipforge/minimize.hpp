// Greedy single-pass axiom-set reduction: walk Δ in order and drop each
// formula that the remaining set still entails in first-order logic.  The
// result is a local minimum — no retained formula can be removed without
// losing entailment — because entailment is monotone in the axiom set.
#pragma once

#include <vector>

#include "tipforge/epr.hpp"
#include "tipforge/simple_formula.hpp"
#include "tipforge/spec.hpp"

namespace tipforge {

struct MinimizeOptions {
  // When set, the guard-inclusion fact formulas are conjoined as axioms in
  // every entailment check, and guard-subsumption between formulas becomes
  // a solver-free drop criterion (guard subsumption implies first-order
  // entailment only in the presence of those facts).  All soundness
  // guarantees are then relative to the facts.
  bool with_subsumption_axioms = false;
  // Grounding budgets default higher here than for a single satisfiability
  // query: an entailment check grounds a whole candidate set at once, and
  // the witness Skolem functions of high-quantifier members multiply the
  // Herbrand domains.
  EprOptions epr{.max_domain = 65536,
                 .max_clauses = 12'582'912,
                 .max_conflicts = 2'000'000,
                 .dump_cnf_path = {}};
  long lia_budget = 100000;
};

struct MinimizeResult {
  std::vector<SimpleFormula> delta_min;  // retained, in input order
  std::vector<SimpleFormula> dropped;    // dropped, in input order
  long fast_path_drops = 0;       // removed without a solver call
  long entailment_checks = 0;     // grounding-solver queries made
};

// Preconditions: every formula is syntactically acyclic (run the
// cyclic-formula filter first).  Exact duplicates are always dropped
// without a solver call.  After the pass, every dropped formula is
// re-verified to follow from the final set; a failure is a bug and raises
// TipError rather than being swallowed.
MinimizeResult minimize(const std::vector<SimpleFormula>& delta,
                        const ProtocolSpec& spec,
                        const MinimizeOptions& opts = {});

}  // namespace tipforge
