// Differential suites: each pits a production decision procedure against an
// independent exhaustive oracle on randomized inputs and reports the first
// disagreement, if any.
#pragma once

#include <string>

namespace tipforge::testing {

struct DiffStats {
  long cases = 0;
  long disagreements = 0;
  std::string first_disagreement;  // description of the earliest failure
};

// Validity of random guard formulas (quantifiers <= 3) over a pool of
// specifications versus the n-bounded brute-force oracle (n <= 6 for
// formulas with <= 2 quantifiers, n <= 5 at 3 quantifiers).
DiffStats gamma_vs_brute(unsigned seed, int cases);

// Satisfiability of random quantifier-free cardinality formulas versus
// exhaustive search over bounded region counts and parameter values. A SAT
// verdict must come with a model the evaluator accepts; an UNSAT verdict
// must leave the exhaustive search empty-handed.
DiffStats qfbapa_vs_exhaustive(unsigned seed, int cases);

// Satisfiability of random box-bounded linear integer systems versus
// enumeration of the box.
DiffStats lia_vs_box(unsigned seed, int cases);

}  // namespace tipforge::testing
