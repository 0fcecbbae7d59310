// Decidable satisfiability for the quantifier-alternation-acyclic fragment:
// Skolemization along the acyclic stratification, finite Herbrand domain
// construction per sort in topological order, exhaustive grounding of the
// universals, and dispatch to the embedded CDCL core.
//
// "Unsat" answers are definitive for this fragment (the grounding bound is
// complete); resource limits raise BudgetExceeded instead of guessing.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tipforge/fol.hpp"
#include "tipforge/qa_graph.hpp"
#include "tipforge/structure.hpp"

namespace tipforge {

// Raised when the query's quantifier-alternation graph has a cycle; carries
// the edges that lie on cycles so callers can report exactly what went wrong.
class EprCyclicError : public TipError {
 public:
  EprCyclicError(const std::string& msg, std::vector<QaEdge> edges)
      : TipError(msg), edges_(std::move(edges)) {}
  const std::vector<QaEdge>& edges() const { return edges_; }

 private:
  std::vector<QaEdge> edges_;
};

struct EprOptions {
  // Cap on any single sort's Herbrand domain.
  std::size_t max_domain = 4096;
  // Cap on ground clauses (counted across expansion, equality theory, and
  // CNF conversion).
  std::size_t max_clauses = 4'000'000;
  // Conflict budget for the SAT core.
  std::uint64_t max_conflicts = 2'000'000;
  // When nonempty, the ground instance is written here in DIMACS format
  // before solving.
  std::string dump_cnf_path;
};

struct GroundingPlan {
  // Topological order of the quantifier-alternation graph; domains are
  // built in this order so every function's argument sorts are finished
  // before its result sort starts.
  std::vector<std::string> sort_order;
  // Computed Herbrand bound per sort (after seeding empty sorts).
  std::map<std::string, std::size_t> domain_sizes;
  // Skolem symbol -> (argument sorts of the enclosing universals, result
  // sort).  Constants have an empty argument list.
  std::map<std::string, std::pair<std::vector<std::string>, std::string>>
      skolems;
};

struct EprStats {
  std::size_t vars = 0;
  std::size_t clauses = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
};

struct EprResult {
  bool sat = false;
  // Present iff sat: a concrete finite model of all input formulas, with
  // equality already quotiented out (equality is index identity on it).
  std::optional<FiniteStructure> model;
  GroundingPlan plan;
  EprStats stats;
};

// Decides satisfiability of the conjunction of `formulas` (closed, well
// sorted for `vocab`).  Every sort of `vocab` is interpreted in a returned
// model, and the model is re-validated against the inputs before it is
// handed out.  Throws EprCyclicError when the alternation graph is cyclic
// and BudgetExceeded when a resource cap is hit.
EprResult epr_sat(const std::vector<FoPtr>& formulas,
                  const FoVocabulary& vocab, const EprOptions& opts = {});

// True iff axioms ∪ {¬goal} is unsatisfiable.
bool entails(const std::vector<FoPtr>& axioms, const FoPtr& goal,
             const FoVocabulary& vocab, const EprOptions& opts = {});

}  // namespace tipforge
