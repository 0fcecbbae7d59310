#include "structure_agreement.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <utility>

#include "random_gen.hpp"
#include "tipforge/brute_force.hpp"
#include "tipforge/fo_translate.hpp"
#include "tipforge/structure.hpp"
#include "tipforge/threshold_structure.hpp"

namespace tipforge::testing {

int agreement_n_cap(int q) {
  if (q <= 2) return 5;
  if (q == 3) return 4;
  if (q <= 5) return 3;
  return 2;
}

namespace {

// Region-count view of an instance, in the spec's set-parameter order.
BapaModel model_from_instance(const ProtocolSpec& spec,
                              const ConcreteInstance& inst) {
  BapaModel m;
  m.n = inst.n;
  m.ints["n"] = inst.n;
  for (const auto& [name, v] : inst.ints) m.ints[name] = v;
  m.set_names = spec.set_params;
  for (long e = 0; e < inst.n; ++e) {
    unsigned long region = 0;
    for (std::size_t i = 0; i < m.set_names.size(); ++i)
      if ((inst.sets.at(m.set_names[i]) >> e) & 1ul) region |= 1ul << i;
    m.regions[region] += 1;
  }
  return m;
}

// Relabels the instance's sets to the element layout the extension builder
// uses, so both evaluations see the same concrete sets. Region counts are
// unchanged, hence permittedness is too.
ConcreteInstance canonical_instance(const ProtocolSpec& spec,
                                    const BapaModel& m,
                                    const ConcreteInstance& orig) {
  ConcreteInstance inst;
  inst.n = orig.n;
  inst.ints = orig.ints;
  for (const std::string& s : spec.set_params) {
    SetMask mask = 0;
    for (long e : m.set_elements(s)) mask |= 1ul << e;
    inst.sets[s] = mask;
  }
  return inst;
}

SetMask random_subset(Rng& rng, long n) {
  int size = pick(rng, 0, static_cast<int>(n));
  std::vector<int> elems(static_cast<std::size_t>(n));
  std::iota(elems.begin(), elems.end(), 0);
  std::shuffle(elems.begin(), elems.end(), rng);
  SetMask mask = 0;
  for (int i = 0; i < size; ++i)
    mask |= 1ul << elems[static_cast<std::size_t>(i)];
  return mask;
}

// Rejection-samples a permitted instance with n <= n_cap. Integer
// parameters are probed first with all sets empty (a cheap feasibility
// screen that is also the fallback when no random set assignment passes).
std::optional<ConcreteInstance> draw_permitted(Rng& rng,
                                               const ProtocolSpec& spec,
                                               int n_cap,
                                               const AgreementOptions& opts) {
  for (int attempt = 0; attempt < 20000; ++attempt) {
    ConcreteInstance inst;
    inst.n = pick(rng, 1, n_cap);
    for (const std::string& p : spec.int_params)
      inst.ints[p] = pick(rng, static_cast<int>(opts.int_lo),
                          static_cast<int>(opts.int_hi));
    for (const std::string& s : spec.set_params) inst.sets[s] = 0;
    const bool empty_ok = instance_permitted(spec, inst);
    for (int mask_try = 0; mask_try < 40; ++mask_try) {
      for (const std::string& s : spec.set_params)
        inst.sets[s] = random_subset(rng, inst.n);
      if (instance_permitted(spec, inst)) return inst;
    }
    if (empty_ok) {
      for (const std::string& s : spec.set_params) inst.sets[s] = 0;
      return inst;
    }
  }
  return std::nullopt;
}

}  // namespace

AgreementStats fo_vs_direct_agreement(const ProtocolSpec& spec,
                                      const std::vector<SimpleFormula>& delta,
                                      unsigned seed,
                                      const AgreementOptions& opts) {
  Rng rng(seed);
  AgreementStats st;

  std::map<int, std::vector<std::size_t>> by_cap;
  for (std::size_t i = 0; i < delta.size(); ++i)
    by_cap[agreement_n_cap(delta[i].q())].push_back(i);

  for (const auto& [cap, idxs] : by_cap) {
    std::vector<std::pair<ConcreteInstance, FiniteStructure>> envs;
    for (int k = 0; k < opts.instances_per_formula; ++k) {
      std::optional<ConcreteInstance> drawn =
          draw_permitted(rng, spec, cap, opts);
      if (!drawn) {
        ++st.mismatches;
        if (st.first_mismatch.empty())
          st.first_mismatch = spec.name +
                              ": could not sample a permitted instance with "
                              "n <= " +
                              std::to_string(cap);
        return st;
      }
      BapaModel m = model_from_instance(spec, *drawn);
      ConcreteInstance inst = canonical_instance(spec, m, *drawn);
      FiniteStructure ext = build_t_extension(
          make_node_core(static_cast<int>(inst.n)), m, spec);
      envs.emplace_back(std::move(inst), std::move(ext));
      ++st.structures;
    }
    for (std::size_t i : idxs) {
      FoPtr fo = fo_translate(delta[i], spec);
      for (const auto& [inst, ext] : envs) {
        const bool on_structure = eval_on_structure(fo, ext);
        const bool direct = brute_force_valid_at(spec, delta[i], inst);
        ++st.comparisons;
        if (on_structure != direct) {
          ++st.mismatches;
          if (st.first_mismatch.empty())
            st.first_mismatch =
                spec.name + ": " + delta[i].str(spec) + " at n=" +
                std::to_string(inst.n) + " (translation " +
                (on_structure ? "true" : "false") + ", direct " +
                (direct ? "true" : "false") + ")";
        }
      }
    }
  }
  return st;
}

}  // namespace tipforge::testing
