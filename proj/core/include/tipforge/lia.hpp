// Exact linear integer arithmetic satisfiability.
//
// Constraints are linear inequalities over integer-valued variables with
// rational coefficients. Decision is by exact rational simplex (Bland's
// rule, phase-I feasibility) plus branch-and-bound on fractional values,
// with per-row gcd tightening so rows like 2x - 2y = 1 are refuted without
// search. The node budget bounds branch-and-bound; exhausting it raises
// BudgetExceeded (never a verdict).
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tipforge/numeric.hpp"

namespace tipforge {

struct LiaResult {
  bool sat = false;
  // Variable index -> value, only when sat.
  std::map<int, Int> model;
  // Branch-and-bound nodes consumed.
  long nodes_used = 0;
};

class LiaSystem {
 public:
  // Adds an integer variable. When `lower` is set, value >= lower is
  // enforced. Returns the variable index.
  int add_var(std::string name, std::optional<Int> lower = std::nullopt);

  int var_count() const { return static_cast<int>(names_.size()); }
  const std::string& var_name(int v) const { return names_.at(v); }

  // Each adds a constraint  sum coeffs[i].second * x_{coeffs[i].first}  op
  // rhs. Lt/Gt are reduced to Le/Ge using integrality. Ne is not supported
  // here (split at a higher level).
  void add_le(std::vector<std::pair<int, Rat>> coeffs, Rat rhs);
  void add_ge(std::vector<std::pair<int, Rat>> coeffs, Rat rhs);
  void add_lt(std::vector<std::pair<int, Rat>> coeffs, Rat rhs);
  void add_gt(std::vector<std::pair<int, Rat>> coeffs, Rat rhs);
  void add_eq(std::vector<std::pair<int, Rat>> coeffs, Rat rhs);

  size_t constraint_count() const { return rows_.size(); }

  // Renders the system for debugging.
  std::string str() const;

 private:
  friend LiaResult lia_sat(const LiaSystem& sys, long node_budget);

  // Internal normal form: integer-coefficient row  coeffs . x <= rhs,
  // gcd-tightened.
  struct Row {
    std::vector<std::pair<int, Int>> coeffs;  // sorted by var, nonzero
    Int rhs;
  };

  void push_le(const std::vector<std::pair<int, Rat>>& coeffs, const Rat& rhs);

  std::vector<std::string> names_;
  std::vector<std::optional<Int>> lowers_;
  std::vector<Row> rows_;
};

// Decides the system. Deterministic. Throws BudgetExceeded when the
// branch-and-bound node budget is exhausted.
LiaResult lia_sat(const LiaSystem& sys, long node_budget = 100000);

}  // namespace tipforge
