// Deterministic enumeration of simple-formula candidates.
//
// Candidates at quantifier depth q are ordered lexicographically by
//   (literal subset, quantifier-guard multiset, conclusion guard):
//   - literal subsets by ascending bitmask, where bit 2i selects parameter
//     i and bit 2i+1 selects its complement;
//   - quantifier-guard multisets as nondecreasing index sequences in
//     lexicographic order;
//   - conclusion guards by threshold index, then "at least one", then
//     "all".
// The formula with no quantifiers and no literals is excluded.
#pragma once

#include <vector>

#include "tipforge/simple_formula.hpp"

namespace tipforge {

// All candidates at depth q, in order.
std::vector<SimpleFormula> enumerate_candidates(const ProtocolSpec& spec,
                                                int q);

// Number of candidates at depth q (matches the vector's size).
unsigned long count_candidates(const ProtocolSpec& spec, int q);

}  // namespace tipforge
