// Deterministic random generators for property and differential tests:
// guard formulas over a specification, quantifier-free cardinality
// formulas, many-sorted first-order formulas, and finite structures.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "tipforge/fol.hpp"
#include "tipforge/simple_formula.hpp"
#include "tipforge/structure.hpp"

namespace tipforge::testing {

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// Random simple guard formula, produced through the concrete syntax so the
// parser and classifier participate. Quantifier count is drawn from
// [0, max_q]; when the formula would have an empty body a parameter literal
// is forced in.
SimpleFormula random_simple(Rng& rng, const ProtocolSpec& spec, int max_q);

// Random quantifier-free cardinality-arithmetic formula over the given set
// and integer parameter names (boolean depth <= 2, set depth <= 2).
GammaPtr random_gamma(Rng& rng, const std::vector<std::string>& sets,
                      const std::vector<std::string>& ints);

// Fixed two-sorted test vocabulary: sorts s, t; relations P(s), R(s,t),
// Q(t); constants c:s, d:t. No functions.
FoVocabulary two_sorted_vocab();

// Random closed formula over two_sorted_vocab(): depth-bounded boolean
// structure, at most `max_quants` quantifiers, atoms and equalities over
// bound variables and constants.
FoPtr random_fo(Rng& rng, int max_quants);

// Random structure for two_sorted_vocab() with each sort's domain size
// drawn from [1, max_elems].
FiniteStructure random_two_sorted_structure(Rng& rng, int max_elems);

}  // namespace tipforge::testing
