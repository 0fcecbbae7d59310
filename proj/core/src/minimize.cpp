#include "tipforge/minimize.hpp"

#include <algorithm>
#include <vector>

#include "tipforge/fo_translate.hpp"
#include "tipforge/subsumption.hpp"

namespace tipforge {

MinimizeResult minimize(const std::vector<SimpleFormula>& delta,
                        const ProtocolSpec& spec,
                        const MinimizeOptions& opts) {
  for (const auto& f : delta) {
    if (f.head.kind == AtomicGuard::Kind::Thresh &&
        std::find(f.quants.begin(), f.quants.end(), f.head.thresh) !=
            f.quants.end())
      throw TipError(
          "minimization requires acyclic formulas; run the cyclic-formula "
          "filter first");
  }

  const FoVocabulary vocab = fo_vocab(spec);
  const std::size_t n = delta.size();
  std::vector<FoPtr> fo(n);
  for (std::size_t i = 0; i < n; ++i) fo[i] = fo_translate(delta[i], spec);

  std::vector<FoPtr> fact_axioms;
  SubsumptionCache cache(spec, opts.lia_budget);
  if (opts.with_subsumption_axioms) {
    for (const auto& fact : subsumption_fact_formulas(spec, opts.lia_budget))
      fact_axioms.push_back(fo_translate(fact, spec));
  }

  MinimizeResult res;
  std::vector<bool> alive(n, true);
  // Formulas already visited and kept, translated. Entailment is monotone
  // in the axiom set, so entailment from this subset already settles a
  // drop; the full current set is grounded only when the subset check
  // fails. This keeps the expensive groundings away from the late
  // high-quantifier candidates, whose witness Skolem functions dominate
  // the Herbrand domains.
  std::vector<FoPtr> kept_fo = fact_axioms;

  for (std::size_t i = 0; i < n; ++i) {
    // Solver-free paths: an identical copy elsewhere, or (under the facts
    // flag) a remaining formula that guard-subsumes this one.
    bool fast_drop = false;
    for (std::size_t j = 0; j < n && !fast_drop; ++j) {
      if (j == i || !alive[j]) continue;
      if (delta[j] == delta[i])
        fast_drop = true;
      else if (opts.with_subsumption_axioms &&
               subsumes_simple(delta[j], delta[i], cache))
        fast_drop = true;
    }
    if (fast_drop) {
      alive[i] = false;
      ++res.fast_path_drops;
      continue;
    }

    bool drop = false;
    if (!kept_fo.empty()) {
      ++res.entailment_checks;
      drop = entails(kept_fo, fo[i], vocab, opts.epr);
    }
    if (!drop) {
      std::vector<FoPtr> axioms = fact_axioms;
      for (std::size_t j = 0; j < n; ++j)
        if (alive[j] && j != i) axioms.push_back(fo[j]);
      ++res.entailment_checks;
      drop = entails(axioms, fo[i], vocab, opts.epr);
    }
    if (drop)
      alive[i] = false;
    else
      kept_fo.push_back(fo[i]);
  }

  std::vector<FoPtr> final_axioms = fact_axioms;
  for (std::size_t i = 0; i < n; ++i) {
    if (alive[i]) {
      res.delta_min.push_back(delta[i]);
      final_axioms.push_back(fo[i]);
    } else {
      res.dropped.push_back(delta[i]);
    }
  }

  // Soundness re-verification: everything dropped must still follow from
  // what is left.
  for (std::size_t i = 0; i < n; ++i) {
    if (alive[i]) continue;
    if (!entails(final_axioms, fo[i], vocab, opts.epr))
      throw TipError(
          "internal error: minimization dropped a formula the final set "
          "does not entail: " +
          delta[i].str(spec));
  }
  return res;
}

}  // namespace tipforge
