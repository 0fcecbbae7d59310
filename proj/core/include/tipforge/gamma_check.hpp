// Validity of threshold-guard formulas under the protocol assumptions, and
// the standing well-formedness gates on specifications.
//
// A quantified guard formula is valid when, for every choice of parameter
// values and sets permitted by the assumptions, every assignment of the
// quantified variables to sets meeting their guards satisfies the guarded
// conclusion. Validity reduces to unsatisfiability of
//   Gamma  and  (each quantified set meets its guard)  and  not(conclusion)
// in quantifier-free cardinality arithmetic.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tipforge/qfbapa.hpp"
#include "tipforge/simple_formula.hpp"

namespace tipforge {

struct GammaCheckOptions {
  long lia_budget = 100000;
  // Use the pure-arithmetic shortcut for one-quantifier, literal-free
  // formulas when the assumptions permit it (see gamma_check.cpp).
  bool allow_fast_path = true;
  // Produce a countermodel for invalid formulas (costs a second solver
  // call when the shortcut was taken).
  bool want_model = false;
};

struct GammaCheckResult {
  bool valid = false;
  bool used_fast_path = false;
  long nodes_used = 0;
  // Witness of invalidity, when requested and invalid.
  std::optional<BapaModel> countermodel;
};

// Decides validity of a simple formula.
GammaCheckResult gamma_valid(const ProtocolSpec& spec, const SimpleFormula& f,
                             const GammaCheckOptions& opts = {});

// Decides validity of one quantified atom (Forall over Atom, or bare Atom),
// with an arbitrary intersection/union/complement body.
GammaCheckResult gamma_valid_tip_atom(const ProtocolSpec& spec,
                                      const TipPtr& atom,
                                      const GammaCheckOptions& opts = {});

// Decides validity of a full formula: every decomposed atom must be valid.
// The countermodel, when requested, witnesses the first failing atom.
GammaCheckResult gamma_valid_tip(const ProtocolSpec& spec, const TipPtr& f,
                                 const GammaCheckOptions& opts = {});

// ---------------------------------------------------------------------------
// Well-formedness gates.

struct GateReport {
  bool feasible = false;       // every threshold fits in the domain
  bool nondegenerate = false;  // every threshold can require >= 1 node
  bool sane = false;           // guards cannot be forced trivial/total
  bool acyclic = false;        // no two thresholds are forced equal
  std::vector<std::string> failures;

  bool all() const { return feasible && nondegenerate && sane && acyclic; }
};

bool check_feasible(const ProtocolSpec& spec, std::vector<std::string>* why,
                    long lia_budget = 100000);
bool check_nondegenerate(const ProtocolSpec& spec,
                         std::vector<std::string>* why,
                         long lia_budget = 100000);
bool check_sane(const ProtocolSpec& spec, std::vector<std::string>* why,
                long lia_budget = 100000);
bool check_acyclic(const ProtocolSpec& spec, std::vector<std::string>* why,
                   long lia_budget = 100000);

GateReport check_gates(const ProtocolSpec& spec, long lia_budget = 100000);

}  // namespace tipforge
