// Semantic-agreement harness: the first-order translation of a guard
// formula, evaluated on a materialized threshold-sort extension of a
// concrete instance, must agree with direct evaluation of the guard
// formula at that instance. Instances are randomized over permitted
// parameter assignments; node-domain sizes are capped by the formula's
// quantifier count purely to bound evaluation cost (all caps are <= 5).
#pragma once

#include <string>
#include <vector>

#include "tipforge/simple_formula.hpp"

namespace tipforge::testing {

struct AgreementStats {
  long structures = 0;    // materialized extensions built
  long comparisons = 0;   // (formula, structure) pairs checked
  long mismatches = 0;
  std::string first_mismatch;
};

struct AgreementOptions {
  int instances_per_formula = 100;
  long int_lo = -1;
  long int_hi = 5;
};

// Node-domain cap for a formula with q quantifiers (5 / 4 / 3 / 2 as q
// grows; evaluation on the extension is exponential in q).
int agreement_n_cap(int q);

// Compares every formula in `delta` against `instances_per_formula`
// randomized extensions and reports mismatches.
AgreementStats fo_vs_direct_agreement(const ProtocolSpec& spec,
                                      const std::vector<SimpleFormula>& delta,
                                      unsigned seed,
                                      const AgreementOptions& opts = {});

}  // namespace tipforge::testing
