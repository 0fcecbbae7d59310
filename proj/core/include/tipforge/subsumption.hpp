// Subsumption between simple formulas.
//
// alpha subsumes beta (written alpha <= beta here) when validity of alpha
// forces validity of beta by instantiation: beta's conclusion guard is no
// stronger than alpha's, and every quantifier/literal of beta can stand in
// for a distinct quantifier/literal of alpha -- a quantifier whose guard
// demands at least as much, a literal whose size always meets the target
// quantifier's guard, or the identical literal. Unmatched quantifiers of
// alpha are instantiated with the whole domain (well-formed specs keep
// every guard feasible), and unmatched literals of alpha only shrink the
// established intersection.
#pragma once

#include <vector>

#include "tipforge/gamma_check.hpp"

namespace tipforge {

// Precomputed guard-comparison tables. All entries are decided with the
// exact cardinality-arithmetic engine against the spec's assumptions.
class SubsumptionCache {
 public:
  SubsumptionCache(const ProtocolSpec& spec, long lia_budget = 100000);

  const ProtocolSpec& spec() const { return spec_; }

  // Assumptions entail value(t_i) >= value(t_j).
  bool thresh_ge(int i, int j) const;

  // Assumptions entail |literal| >= value(t_j).
  bool lit_ge_thresh(const SimpleLiteral& lit, int j) const;

  // Assumptions entail value(h1) >= value(h2) for conclusion guards
  // (thresholds, "at least one" = 1, "all" = n).
  bool head_ge(const AtomicGuard& h1, const AtomicGuard& h2) const;

 private:
  int head_id(const AtomicGuard& h) const;

  const ProtocolSpec& spec_;
  int nt_;
  std::vector<bool> thresh_ge_;   // nt x nt
  std::vector<bool> lit_ge_;      // (2*params) x nt
  std::vector<bool> head_ge_;     // (nt+2) x (nt+2)
};

// Whether alpha subsumes beta (validity of alpha implies validity of
// beta under the cache's spec).
bool subsumes_simple(const SimpleFormula& alpha, const SimpleFormula& beta,
                     const SubsumptionCache& cache);

}  // namespace tipforge
