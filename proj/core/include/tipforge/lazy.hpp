// Inductive-invariant checking for transition systems, and the
// counterexample-driven loop that grows a threshold-axiom set on demand: each
// counterexample to induction is eliminated by the first enumerated valid
// guard formula it falsifies, until every verification condition holds.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tipforge/aip.hpp"
#include "tipforge/epr.hpp"
#include "tipforge/fots.hpp"
#include "tipforge/structure.hpp"

namespace tipforge {

enum class VcKind { Initiation, Consecution, Safety };

const char* vc_kind_name(VcKind kind);

// One positive verification condition: a closed formula whose validity (over
// the system's vocabulary, modulo the background axioms folded into it) is
// required for the invariant to be inductive and the safety property to hold.
struct Vc {
  VcKind kind = VcKind::Initiation;
  std::string transition;  // consecution only
  FoPtr formula;
};

// Emits, in order: initiation (axioms -> (init -> invariant)), one
// consecution per transition in declaration order
// (axioms -> (invariant and transition -> invariant')), and safety
// (axioms -> (invariant -> safety)). The extra axioms are conjoined with the
// system's own background axioms; the primed invariant renames exactly the
// mutable relations.
std::vector<Vc> generate_vcs(const TransitionSystem& ts,
                             const std::vector<FoPtr>& axioms);

// A structure falsifying one verification condition. Initiation and safety
// counterexamples interpret the single-state vocabulary; consecution
// counterexamples also interpret the primed copies of the mutable relations.
struct Cti {
  FiniteStructure structure;
  VcKind vc_kind = VcKind::Initiation;
  std::string transition;  // consecution only
};

// Checks the verification conditions in their emitted order and returns a
// counterexample for the first one that fails, or nothing when all hold.
// Every condition's negation is checked for quantifier-alternation
// acyclicity up front; a cyclic one raises EprCyclicError (with the
// offending edges) before any solving starts. The returned structure is
// re-validated against the failed condition on construction.
std::optional<Cti> find_cti(const TransitionSystem& ts,
                            const std::vector<FoPtr>& axioms,
                            const EprOptions& opts = {});

struct LazyOptions {
  // Cap on counterexample-elimination rounds.
  std::size_t max_iters = 64;
  AipOptions aip;
  EprOptions epr;
};

// One elimination round: the counterexample found, the formula chosen to
// eliminate it, and the formula's position in the enumeration stream.
struct LazyStep {
  Cti cti;
  SimpleFormula chosen;
  std::size_t stream_index = 0;
};

struct LazyResult {
  std::vector<SimpleFormula> delta_int;  // in addition order
  std::vector<LazyStep> trace;
  std::size_t iterations = 0;
  bool verified = false;  // all verification conditions hold at exit
  AipStats aip_stats;     // enumeration work actually performed
};

// Raised when no enumerated valid formula eliminates a counterexample.
class LazyNoFixError : public TipError {
 public:
  LazyNoFixError(const std::string& msg, Cti cti)
      : TipError(msg), cti_(std::move(cti)) {}
  const Cti& cti() const { return cti_; }

 private:
  Cti cti_;
};

// Grows an axiom set until the system's invariant is inductive and safe:
// while some verification condition fails, scan the valid-formula stream in
// enumeration order and add the first formula not yet chosen that the
// counterexample falsifies (consecution counterexamples are tested on their
// current-state reduct, then their next-state reduct). On success the
// result's formulas are re-validated, the conditions are re-checked once
// more, and the trace is checked for strict progress.
LazyResult lazy_infer(const TransitionSystem& ts, const ProtocolSpec& spec,
                      const LazyOptions& opts = {});

}  // namespace tipforge
