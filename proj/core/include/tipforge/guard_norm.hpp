// Normalization of cardinality guards to "at least" form.
//
// Any comparison between a set's size and a symbolic value ell/k can be
// rewritten as a lower bound on either the set or its complement:
//   |X| >  ell/k  ==  |X|   >= (ell + 1) / k
//   |X| <= ell/k  ==  |X^c| >= (k*n - ell) / k
//   |X| <  ell/k  ==  |X^c| >= (k*n - ell + 1) / k
// using integrality of k*|X| and ell (denominators are cleared first).
#pragma once

#include "tipforge/spec.hpp"

namespace tipforge {

struct NormalizedGuard {
  // True when the resulting bound constrains the complement of the set.
  bool complemented = false;
  // The "at least" bound, canonicalized.
  LinTerm numerator;
  Int divisor{1};
};

// `op` must be one of Le, Lt, Ge, Gt. The guard compares |X| against
// numerator/divisor. The reserved parameter "n" denotes the domain size.
NormalizedGuard normalize_cardinality_guard(CmpOp op, LinTerm numerator,
                                            Int divisor);

}  // namespace tipforge
