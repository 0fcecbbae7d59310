#include "tipforge/cdcl.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace tipforge {

namespace {
inline int watch_slot(int lit) {
  return lit > 0 ? 2 * lit : -2 * lit + 1;
}
}  // namespace

int CdclSolver::new_var() {
  ++num_vars_;
  watches_.resize(2 * num_vars_ + 2);
  assign_.push_back(0);
  level_.push_back(0);
  reason_.push_back(-1);
  return num_vars_;
}

int CdclSolver::value(int lit) const {
  const signed char a = assign_[static_cast<std::size_t>(std::abs(lit)) - 1];
  if (a == 0) return 0;
  return (lit > 0) == (a > 0) ? +1 : -1;
}

void CdclSolver::add_clause(std::vector<int> lits) {
  if (solved_once_)
    throw TipError("clauses must be added before the solver runs");
  for (int lit : lits)
    if (lit == 0 || std::abs(lit) > num_vars_)
      throw TipError("literal out of range in clause");
  std::sort(lits.begin(), lits.end(),
            [](int a, int b) {
              const int va = std::abs(a), vb = std::abs(b);
              return va != vb ? va < vb : a < b;
            });
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 0; i + 1 < lits.size(); ++i)
    if (lits[i] == -lits[i + 1]) return;  // tautology
  n_input_clauses_ = clauses_.size() + 1;
  if (lits.empty()) {
    ok_ = false;
    clauses_.push_back({{}, false});
    return;
  }
  if (lits.size() == 1) pending_units_.push_back(lits[0]);
  clauses_.push_back({std::move(lits), false});
  if (clauses_.back().lits.size() >= 2)
    attach_watches(static_cast<int>(clauses_.size()) - 1);
}

void CdclSolver::attach_watches(int clause_idx) {
  const auto& c = clauses_[static_cast<std::size_t>(clause_idx)].lits;
  watches_[static_cast<std::size_t>(watch_slot(-c[0]))].push_back(clause_idx);
  watches_[static_cast<std::size_t>(watch_slot(-c[1]))].push_back(clause_idx);
}

void CdclSolver::enqueue(int lit, int reason_idx) {
  const std::size_t v = static_cast<std::size_t>(std::abs(lit)) - 1;
  assign_[v] = lit > 0 ? +1 : -1;
  level_[v] = decision_level();
  reason_[v] = reason_idx;
  trail_.push_back(lit);
}

int CdclSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const int lit = trail_[qhead_++];
    // Clauses watching ¬lit may have become unit or conflicting.
    std::vector<int>& ws = watches_[static_cast<std::size_t>(watch_slot(lit))];
    std::size_t keep = 0;
    for (std::size_t wi = 0; wi < ws.size(); ++wi) {
      const int ci = ws[wi];
      auto& c = clauses_[static_cast<std::size_t>(ci)].lits;
      // Normalize so the falsified watch sits at position 1.
      if (c[0] == -lit) std::swap(c[0], c[1]);
      if (value(c[0]) == +1) {  // already satisfied
        ws[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != -1) {
          std::swap(c[1], c[k]);
          watches_[static_cast<std::size_t>(watch_slot(-c[1]))].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;  // watcher migrated
      ws[keep++] = ci;
      if (value(c[0]) == -1) {  // conflict: every literal false
        ws.erase(ws.begin() + static_cast<std::ptrdiff_t>(keep),
                 ws.begin() + static_cast<std::ptrdiff_t>(wi) + 1);
        // Literals past wi were not visited; they stay.
        return ci;
      }
      ++n_props_;
      enqueue(c[0], ci);
    }
    ws.resize(keep);
  }
  return -1;
}

void CdclSolver::analyze(int confl_idx, std::vector<int>* learnt,
                         int* bt_level) {
  learnt->clear();
  learnt->push_back(0);  // placeholder for the asserting literal
  std::vector<bool> seen(static_cast<std::size_t>(num_vars_), false);
  int counter = 0;
  int uip = 0;
  std::size_t idx = trail_.size();
  int ci = confl_idx;
  bool first = true;
  do {
    const auto& c = clauses_[static_cast<std::size_t>(ci)].lits;
    // Reason clauses keep their propagated literal at position 0; its
    // variable was already counted, so start at 1 for those.
    for (std::size_t j = first ? 0 : 1; j < c.size(); ++j) {
      const int q = c[j];
      const std::size_t v = static_cast<std::size_t>(std::abs(q)) - 1;
      if (seen[v] || level_[v] == 0) continue;
      seen[v] = true;
      if (level_[v] == decision_level())
        ++counter;
      else
        learnt->push_back(q);
    }
    first = false;
    // Walk the trail backwards to the next marked literal.
    do {
      --idx;
    } while (!seen[static_cast<std::size_t>(std::abs(trail_[idx])) - 1]);
    uip = trail_[idx];
    const std::size_t pv = static_cast<std::size_t>(std::abs(uip)) - 1;
    seen[pv] = false;
    --counter;
    ci = reason_[pv];
  } while (counter > 0);
  (*learnt)[0] = -uip;

  // Backjump to the second-highest level in the clause and put a literal of
  // that level in the other watch position.
  *bt_level = 0;
  for (std::size_t i = 1; i < learnt->size(); ++i) {
    const std::size_t v =
        static_cast<std::size_t>(std::abs((*learnt)[i])) - 1;
    if (level_[v] > *bt_level) {
      *bt_level = level_[v];
      std::swap((*learnt)[1], (*learnt)[i]);
    }
  }
}

void CdclSolver::backjump(int target_level) {
  while (decision_level() > target_level) {
    const std::size_t limit = trail_lim_.back();
    while (trail_.size() > limit) {
      const std::size_t v =
          static_cast<std::size_t>(std::abs(trail_.back())) - 1;
      assign_[v] = 0;
      reason_[v] = -1;
      trail_.pop_back();
    }
    trail_lim_.pop_back();
  }
  qhead_ = trail_.size();
}

CdclResult CdclSolver::solve(std::uint64_t max_conflicts) {
  if (solved_once_)
    throw TipError("the solver is single-shot; build a fresh instance");
  solved_once_ = true;
  CdclResult res;
  if (!ok_) return res;

  for (const int lit : pending_units_) {
    if (value(lit) == -1) return res;  // contradicting units
    if (value(lit) == 0) enqueue(lit, -1);
  }

  std::vector<int> learnt;
  while (true) {
    const int confl = propagate();
    res.propagations = n_props_;
    if (confl >= 0) {
      ++res.conflicts;
      if (decision_level() == 0) return res;  // refuted at the root
      if (res.conflicts > max_conflicts)
        throw BudgetExceeded("SAT conflict budget exhausted (" +
                             std::to_string(max_conflicts) + ")");
      int bt = 0;
      analyze(confl, &learnt, &bt);
      backjump(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        clauses_.push_back({learnt, true});
        attach_watches(static_cast<int>(clauses_.size()) - 1);
        enqueue(learnt[0], static_cast<int>(clauses_.size()) - 1);
      }
      continue;
    }
    if (trail_.size() == static_cast<std::size_t>(num_vars_)) {
      res.sat = true;
      res.model.assign(static_cast<std::size_t>(num_vars_) + 1, false);
      for (int v = 1; v <= num_vars_; ++v)
        res.model[static_cast<std::size_t>(v)] =
            assign_[static_cast<std::size_t>(v) - 1] > 0;
      return res;
    }
    // Decide: lowest-index unassigned variable, false first.
    ++res.decisions;
    int pick = 0;
    for (int v = 1; v <= num_vars_; ++v) {
      if (assign_[static_cast<std::size_t>(v) - 1] == 0) {
        pick = v;
        break;
      }
    }
    trail_lim_.push_back(trail_.size());
    enqueue(-pick, -1);
  }
}

std::string CdclSolver::dimacs() const {
  std::ostringstream out;
  out << "p cnf " << num_vars_ << " " << n_input_clauses_ << "\n";
  for (std::size_t i = 0; i < n_input_clauses_; ++i) {
    for (const int lit : clauses_[i].lits) out << lit << " ";
    out << "0\n";
  }
  return out.str();
}

}  // namespace tipforge
