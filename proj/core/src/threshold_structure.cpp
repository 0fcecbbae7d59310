#include "tipforge/threshold_structure.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include "tipforge/fo_translate.hpp"

namespace tipforge {

Int threshold_value_at(const Threshold& t, const BapaModel& params) {
  Rat num = t.numerator().constant();
  for (const auto& [var, coeff] : t.numerator().coeffs()) {
    auto it = params.ints.find(var);
    if (it == params.ints.end())
      throw TipError("threshold " + t.name() +
                     " mentions a parameter without a value: " + var);
    num += coeff * Rat(it->second);
  }
  return ceil_rat(num / Rat(t.divisor()));
}

FiniteStructure build_t_extension(const FiniteStructure& core,
                                  const BapaModel& params,
                                  const ProtocolSpec& spec) {
  if (spec.gamma && !eval_bapa(spec.gamma, params))
    throw TipError(
        "parameter assignment violates the protocol assumptions");
  if (params.n > 12)
    throw TipError("threshold-sort materialization is capped at n <= 12");
  if (params.n <= 0) throw TipError("node domain must be nonempty");
  const int n = static_cast<int>(params.n.get_si());
  auto node_dom = core.domains.find("node");
  if (node_dom == core.domains.end() ||
      static_cast<int>(node_dom->second.size()) != n)
    throw TipError(
        "core structure's node domain does not match the assignment's "
        "universe size");

  FiniteStructure out = core;

  // Set parameters: unary membership relations from the assigned values.
  for (const auto& a : spec.set_params) {
    auto& rel = out.relations[member_relation_name(a)];
    rel.clear();
    for (long e : params.set_elements(a))
      rel.insert({static_cast<int>(e)});
  }

  // Threshold sorts: every subset at or above the threshold value,
  // ordered by (size, bitmask) so small witnesses come first.
  for (const auto& t : spec.thresholds) {
    const Int value = threshold_value_at(t, params);
    if (value > n)
      throw TipError("threshold " + t.name() +
                     " is infeasible at this assignment: requires " +
                     value.get_str() + " of " + std::to_string(n) +
                     " nodes");
    const unsigned min_size =
        value < 0 ? 0u : static_cast<unsigned>(value.get_ui());
    std::vector<unsigned long> masks;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask)
      if (std::popcount(mask) >= static_cast<int>(min_size))
        masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](unsigned long a, unsigned long b) {
      const int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });

    auto& dom = out.domains[threshold_sort_name(t.name())];
    dom.clear();
    auto& rel = out.relations[member_relation_name(t.name())];
    rel.clear();
    for (std::size_t j = 0; j < masks.size(); ++j) {
      std::string name = "{";
      bool first = true;
      for (int i = 0; i < n; ++i) {
        if (!(masks[j] >> i & 1)) continue;
        name += (first ? "" : ",") + std::to_string(i);
        first = false;
        rel.insert({i, static_cast<int>(j)});
      }
      name += "}";
      dom.push_back(std::move(name));
    }
  }
  return out;
}

}  // namespace tipforge
