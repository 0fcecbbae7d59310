// Complete propositional SAT solver: conflict-driven clause learning with
// two-literal watches, first-UIP learning, and non-chronological
// backjumping.  Fully deterministic: decisions pick the lowest-index
// unassigned variable and try false first, so identical clause sets always
// produce identical runs, models, and statistics.
//
// "Unsatisfiable" answers are definitive (no incompleteness anywhere); the
// only resource guard is the conflict budget, which raises BudgetExceeded
// rather than returning a wrong answer.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tipforge/numeric.hpp"

namespace tipforge {

struct CdclResult {
  bool sat = false;
  // 1-based: model[v] is the value of variable v (index 0 unused).
  // Empty when unsat.
  std::vector<bool> model;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
};

class CdclSolver {
 public:
  // Returns the new variable's index (1-based).
  int new_var();
  int num_vars() const { return num_vars_; }

  // Literals are +v / -v.  Tautologies are dropped; duplicate literals are
  // merged; the empty clause makes the instance trivially unsatisfiable.
  // All clauses must be added before solve() is first called.
  void add_clause(std::vector<int> lits);
  std::uint64_t num_clauses() const { return clauses_.size(); }

  // Throws BudgetExceeded after max_conflicts conflicts.
  CdclResult solve(std::uint64_t max_conflicts = UINT64_MAX);

  // The input clauses (not learned ones) in DIMACS CNF format.
  std::string dimacs() const;

 private:
  struct Clause {
    std::vector<int> lits;
    bool learned = false;
  };

  int value(int lit) const;  // +1 true, -1 false, 0 unassigned
  void enqueue(int lit, int reason_idx);
  int propagate();  // returns conflicting clause index or -1
  void analyze(int confl_idx, std::vector<int>* learnt, int* bt_level);
  void backjump(int target_level);
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  void attach_watches(int clause_idx);

  int num_vars_ = 0;
  bool ok_ = true;  // false once an empty clause is derived at level 0
  std::size_t n_input_clauses_ = 0;
  std::vector<Clause> clauses_;
  // watches_[2*v] = clauses watching literal +v, watches_[2*v+1] = -v.
  std::vector<std::vector<int>> watches_;
  std::vector<signed char> assign_;  // by var; 0 unassigned, +1 true, -1 false
  std::vector<int> level_;           // by var
  std::vector<int> reason_;          // by var; clause index or -1
  std::vector<int> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<int> pending_units_;  // literal of each input unit clause
  std::uint64_t n_props_ = 0;
  bool solved_once_ = false;
};

}  // namespace tipforge
