// Quantifier-free boolean algebra with cardinality arithmetic.
//
// Decides formulas built from linear comparisons over integer parameters,
// cardinality comparisons over set expressions, and set equalities, under
// boolean structure. The decision reduces set atoms to exact region counts
// (see venn.hpp) and hands each disjunct to the integer feasibility engine.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tipforge/venn.hpp"

namespace tipforge {

struct BapaModel {
  Int n;
  // Values of all integer parameters, including "n".
  std::map<std::string, Int> ints;
  // Base set names, in encoding order.
  std::vector<std::string> set_names;
  // Region bitmask -> count; only nonzero regions are present.
  std::map<unsigned long, Int> regions;

  Int set_size(const std::string& name) const;

  // Concrete elements 0..n-1 of a base set, assigning ids to regions in
  // increasing bitmask order. Throws when n exceeds 1,000,000.
  std::vector<long> set_elements(const std::string& name) const;

  std::string str() const;
};

struct BapaResult {
  bool sat = false;
  std::optional<BapaModel> model;
  long nodes_used = 0;
};

// Decides `formula`. Every set parameter mentioned must be in `set_names`;
// every integer parameter must be in `int_names` or be "n". Deterministic.
// Throws BudgetExceeded when a disjunct exhausts `lia_budget` nodes or the
// disjunctive normal form exceeds an internal size cap.
BapaResult qfbapa_sat(const GammaPtr& formula,
                      const std::vector<std::string>& set_names,
                      const std::vector<std::string>& int_names,
                      long lia_budget = 100000);

// Evaluates a formula against a model (exact, using region counts).
// Every set mentioned must be a base set of the model.
bool eval_bapa(const GammaPtr& formula, const BapaModel& model);

}  // namespace tipforge
