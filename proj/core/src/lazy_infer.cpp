#include <set>
#include <string>

#include "tipforge/fo_translate.hpp"
#include "tipforge/gamma_check.hpp"
#include "tipforge/lazy.hpp"

namespace tipforge {

namespace {

// Whether the counterexample falsifies the translated formula. The formula
// speaks about a single state, so a two-state consecution counterexample is
// tested on its current-state reduct and then on its next-state reduct;
// falsification in either makes the formula eligible.
bool eliminates(const FoPtr& fo, const Cti& cti,
                const std::set<std::string>& mutables) {
  if (cti.vc_kind == VcKind::Consecution) {
    if (!eval_on_structure(fo, pre_state_reduct(cti.structure, mutables)))
      return true;
    return !eval_on_structure(fo, post_state_reduct(cti.structure, mutables));
  }
  return !eval_on_structure(fo, cti.structure);
}

std::string cti_label(const Cti& cti) {
  std::string label = vc_kind_name(cti.vc_kind);
  if (cti.vc_kind == VcKind::Consecution)
    label += " '" + cti.transition + "'";
  return label;
}

}  // namespace

LazyResult lazy_infer(const TransitionSystem& ts, const ProtocolSpec& spec,
                      const LazyOptions& opts) {
  LazyResult res;
  AipStream stream(spec, opts.aip);
  // Memoized stream prefix, so every round rescans from the beginning
  // without re-deciding validity.
  std::vector<SimpleFormula> seen;
  std::vector<FoPtr> seen_fo;
  std::vector<bool> chosen;
  auto fetched = [&](std::size_t i) -> bool {
    while (seen.size() <= i) {
      std::optional<SimpleFormula> f = stream.next();
      if (!f) return false;
      seen.push_back(*f);
      seen_fo.push_back(fo_translate(*f, spec));
      chosen.push_back(false);
    }
    return true;
  };

  std::vector<FoPtr> axioms;  // translations of the formulas added so far
  for (;;) {
    std::optional<Cti> cti = find_cti(ts, axioms, opts.epr);
    if (!cti) break;
    if (res.iterations >= opts.max_iters)
      throw BudgetExceeded("counterexample elimination exceeded " +
                           std::to_string(opts.max_iters) + " rounds");
    ++res.iterations;

    bool fixed = false;
    for (std::size_t i = 0; fetched(i); ++i) {
      if (chosen[i]) continue;
      if (!eliminates(seen_fo[i], *cti, ts.mutable_relations)) continue;
      chosen[i] = true;
      res.delta_int.push_back(seen[i]);
      axioms.push_back(seen_fo[i]);
      res.trace.push_back(LazyStep{*cti, seen[i], i});
      fixed = true;
      break;
    }
    if (!fixed)
      throw LazyNoFixError("no valid guard formula eliminates the " +
                               cti_label(*cti) +
                               " counterexample; the enumeration stream is "
                               "exhausted",
                           *cti);
  }

  // Success checks. The conditions are re-checked once more from scratch,
  // every chosen formula is re-validated, and the trace must show strict
  // progress: distinct formulas, each falsified by the counterexample it
  // was chosen for.
  if (find_cti(ts, axioms, opts.epr))
    throw TipError(
        "internal error: a verification condition failed on recheck");
  GammaCheckOptions gopts;
  gopts.lia_budget = opts.aip.lia_budget;
  gopts.allow_fast_path = opts.aip.allow_fast_path;
  for (const SimpleFormula& f : res.delta_int)
    if (!gamma_valid(spec, f, gopts).valid)
      throw TipError("internal error: chosen formula is not valid: " +
                     f.str(spec));
  if (res.trace.size() != res.delta_int.size())
    throw TipError("internal error: trace and result lengths differ");
  std::set<std::size_t> used;
  for (const LazyStep& s : res.trace) {
    if (!used.insert(s.stream_index).second)
      throw TipError("internal error: formula chosen twice");
    if (!eliminates(seen_fo[s.stream_index], s.cti, ts.mutable_relations))
      throw TipError(
          "internal error: a trace step does not falsify its counterexample");
  }

  res.verified = true;
  res.aip_stats = stream.stats();
  return res;
}

}  // namespace tipforge
