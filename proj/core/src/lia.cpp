#include "tipforge/lia.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tipforge {

int LiaSystem::add_var(std::string name, std::optional<Int> lower) {
  names_.push_back(std::move(name));
  lowers_.push_back(std::move(lower));
  return static_cast<int>(names_.size()) - 1;
}

namespace {

// Combines duplicates, drops zeros, scales coefficients to integers.
// Returns the scaled rational rhs alongside the integer coefficients.
std::pair<std::vector<std::pair<int, Int>>, Rat> normalize_row(
    const std::vector<std::pair<int, Rat>>& coeffs, const Rat& rhs) {
  std::map<int, Rat> acc;
  for (const auto& [v, c] : coeffs) acc[v] += c;
  Int lcm(1);
  for (auto it = acc.begin(); it != acc.end();) {
    if (it->second == 0) {
      it = acc.erase(it);
    } else {
      Int den = it->second.get_den();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      ++it;
    }
  }
  std::vector<std::pair<int, Int>> out;
  out.reserve(acc.size());
  for (const auto& [v, c] : acc) {
    Rat scaled = c * Rat(lcm);
    out.emplace_back(v, scaled.get_num());
  }
  return {std::move(out), rhs * Rat(lcm)};
}

}  // namespace

void LiaSystem::push_le(const std::vector<std::pair<int, Rat>>& coeffs,
                        const Rat& rhs) {
  auto [row, srhs] = normalize_row(coeffs, rhs);
  Row r;
  r.coeffs = std::move(row);
  r.rhs = floor_rat(srhs);
  // gcd tightening: (c/g) . x <= floor(rhs/g).
  if (!r.coeffs.empty()) {
    Int g(0);
    for (const auto& [v, c] : r.coeffs)
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1) {
      for (auto& [v, c] : r.coeffs) c /= g;
      r.rhs = floor_rat(Rat(r.rhs, g));
    }
  }
  rows_.push_back(std::move(r));
}

void LiaSystem::add_le(std::vector<std::pair<int, Rat>> coeffs, Rat rhs) {
  push_le(coeffs, rhs);
}

void LiaSystem::add_ge(std::vector<std::pair<int, Rat>> coeffs, Rat rhs) {
  for (auto& [v, c] : coeffs) c = -c;
  push_le(coeffs, -rhs);
}

void LiaSystem::add_lt(std::vector<std::pair<int, Rat>> coeffs, Rat rhs) {
  // With integer coefficients,  c.x < b  iff  c.x <= ceil(b) - 1.
  auto [row, srhs] = normalize_row(coeffs, rhs);
  std::vector<std::pair<int, Rat>> back;
  for (const auto& [v, c] : row) back.emplace_back(v, Rat(c));
  push_le(back, Rat(ceil_rat(srhs) - 1));
}

void LiaSystem::add_gt(std::vector<std::pair<int, Rat>> coeffs, Rat rhs) {
  for (auto& [v, c] : coeffs) c = -c;
  add_lt(std::move(coeffs), -rhs);
}

void LiaSystem::add_eq(std::vector<std::pair<int, Rat>> coeffs, Rat rhs) {
  push_le(coeffs, rhs);
  for (auto& [v, c] : coeffs) c = -c;
  push_le(coeffs, -rhs);
}

std::string LiaSystem::str() const {
  std::ostringstream os;
  for (const auto& r : rows_) {
    bool first = true;
    for (const auto& [v, c] : r.coeffs) {
      if (!first) os << " + ";
      os << c.get_str() << "*" << names_.at(v);
      first = false;
    }
    if (first) os << "0";
    os << " <= " << r.rhs.get_str() << "\n";
  }
  return os.str();
}

namespace {

using Row = std::vector<std::pair<int, Int>>;

struct BranchRow {
  std::vector<std::pair<int, Int>> coeffs;
  Int rhs;
};

// Exact phase-I simplex feasibility test. Variables are described by the
// column mapping built from `lowers`: bounded variables are shifted to be
// nonnegative, unbounded ones are split into a difference of nonnegatives.
// Returns values for the original variables, or nullopt when infeasible.
class LpSolver {
 public:
  LpSolver(int nvars, const std::vector<std::optional<Int>>& lowers)
      : nvars_(nvars), lowers_(lowers) {
    col_pos_.resize(nvars);
    col_neg_.assign(nvars, -1);
    int next = 0;
    for (int v = 0; v < nvars; ++v) {
      col_pos_[v] = next++;
      if (!lowers[v]) col_neg_[v] = next++;
    }
    nstruct_ = next;
  }

  std::optional<std::vector<Rat>> solve(
      const std::vector<BranchRow>& rows) {
    const int m = static_cast<int>(rows.size());
    if (m == 0) return default_values();

    // Columns: structural | slacks | artificials; rhs kept separately.
    const int slack0 = nstruct_;
    int ncols = nstruct_ + m;  // artificials appended below
    std::vector<std::vector<Rat>> T(m);
    std::vector<Rat> rhs(m);
    std::vector<int> basis(m, -1);
    std::vector<int> art_rows;

    for (int i = 0; i < m; ++i) {
      T[i].assign(ncols, Rat(0));
      Rat b(rows[i].rhs);
      for (const auto& [v, c] : rows[i].coeffs) {
        Rat cr(c);
        T[i][col_pos_[v]] += cr;
        if (col_neg_[v] >= 0)
          T[i][col_neg_[v]] -= cr;
        else if (*lowers_[v] != 0)
          b -= cr * Rat(*lowers_[v]);
      }
      T[i][slack0 + i] = 1;
      rhs[i] = b;
      if (b < 0) {
        for (auto& x : T[i]) x = -x;
        rhs[i] = -b;
        art_rows.push_back(i);
      } else {
        basis[i] = slack0 + i;
      }
    }
    const int art0 = ncols;
    ncols += static_cast<int>(art_rows.size());
    for (int i = 0; i < m; ++i) T[i].resize(ncols, Rat(0));
    for (size_t k = 0; k < art_rows.size(); ++k) {
      T[art_rows[k]][art0 + static_cast<int>(k)] = 1;
      basis[art_rows[k]] = art0 + static_cast<int>(k);
    }

    // Reduced-cost row for  min (sum of artificials): start with cost 1 on
    // artificial columns, then eliminate the initially-basic artificials.
    std::vector<Rat> red(ncols, Rat(0));
    for (int j = art0; j < ncols; ++j) red[j] = 1;
    for (int i : art_rows)
      for (int j = 0; j < ncols; ++j) red[j] -= T[i][j];

    for (;;) {
      // Bland: entering = smallest non-artificial column with negative
      // reduced cost.
      int enter = -1;
      for (int j = 0; j < art0; ++j) {
        if (red[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) break;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m; ++i) {
        if (T[i][enter] > 0) {
          Rat ratio = rhs[i] / T[i][enter];
          if (leave < 0 || ratio < best ||
              (ratio == best && basis[i] < basis[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0)
        throw TipError("internal: unbounded phase-I objective");
      pivot(T, rhs, red, basis, leave, enter, m, ncols);
    }

    Rat obj(0);
    for (int i = 0; i < m; ++i)
      if (basis[i] >= art0) obj += rhs[i];
    if (obj != 0) return std::nullopt;

    std::vector<Rat> colval(ncols, Rat(0));
    for (int i = 0; i < m; ++i) colval[basis[i]] = rhs[i];
    std::vector<Rat> out(nvars_);
    for (int v = 0; v < nvars_; ++v) {
      out[v] = colval[col_pos_[v]];
      if (col_neg_[v] >= 0)
        out[v] -= colval[col_neg_[v]];
      else
        out[v] += Rat(*lowers_[v]);
    }
    return out;
  }

 private:
  std::vector<Rat> default_values() const {
    std::vector<Rat> out(nvars_);
    for (int v = 0; v < nvars_; ++v)
      out[v] = lowers_[v] ? Rat(*lowers_[v]) : Rat(0);
    return out;
  }

  static void pivot(std::vector<std::vector<Rat>>& T, std::vector<Rat>& rhs,
                    std::vector<Rat>& red, std::vector<int>& basis, int r,
                    int c, int m, int ncols) {
    Rat p = T[r][c];
    for (int j = 0; j < ncols; ++j) T[r][j] /= p;
    rhs[r] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      Rat f = T[i][c];
      if (f == 0) continue;
      for (int j = 0; j < ncols; ++j) T[i][j] -= f * T[r][j];
      rhs[i] -= f * rhs[r];
    }
    Rat f = red[c];
    if (f != 0) {
      for (int j = 0; j < ncols; ++j) red[j] -= f * T[r][j];
    }
    basis[r] = c;
  }

  int nvars_;
  const std::vector<std::optional<Int>>& lowers_;
  std::vector<int> col_pos_, col_neg_;
  int nstruct_ = 0;
};

class BranchAndBound {
 public:
  BranchAndBound(const LiaSystem& sys, std::vector<BranchRow> rows,
                 const std::vector<std::optional<Int>>& lowers, int nvars,
                 long budget)
      : rows_(std::move(rows)),
        lowers_(lowers),
        nvars_(nvars),
        budget_(budget),
        lp_(nvars, lowers) {
    (void)sys;
  }

  LiaResult run() {
    LiaResult res;
    search(res);
    res.nodes_used = used_;
    return res;
  }

 private:
  // Returns true when a model was found (search stops).
  bool search(LiaResult& res) {
    if (++used_ > budget_)
      throw BudgetExceeded("integer feasibility node budget exhausted (" +
                           std::to_string(budget_) + " nodes)");
    auto lp = lp_.solve(rows_);
    if (!lp) return false;
    int frac = -1;
    for (int v = 0; v < nvars_; ++v) {
      if (!is_integral((*lp)[v])) {
        frac = v;
        break;
      }
    }
    if (frac < 0) {
      res.sat = true;
      for (int v = 0; v < nvars_; ++v)
        res.model[v] = (*lp)[v].get_num();
      return true;
    }
    Int down = floor_rat((*lp)[frac]);
    // x <= floor(v)
    rows_.push_back({{{frac, Int(1)}}, down});
    bool found = search(res);
    rows_.pop_back();
    if (found) return true;
    // x >= floor(v) + 1
    rows_.push_back({{{frac, Int(-1)}}, -(down + 1)});
    found = search(res);
    rows_.pop_back();
    return found;
  }

  std::vector<BranchRow> rows_;
  const std::vector<std::optional<Int>>& lowers_;
  int nvars_;
  long budget_;
  long used_ = 0;
  LpSolver lp_;
};

}  // namespace

LiaResult lia_sat(const LiaSystem& sys, long node_budget) {
  std::vector<BranchRow> rows;
  rows.reserve(sys.rows_.size());
  for (const auto& r : sys.rows_) {
    if (r.coeffs.empty() && r.rhs < 0) {
      LiaResult res;
      res.sat = false;
      res.nodes_used = 0;
      return res;
    }
    if (r.coeffs.empty()) continue;
    rows.push_back({r.coeffs, r.rhs});
  }
  std::vector<std::optional<Int>> lowers(sys.lowers_.begin(),
                                         sys.lowers_.end());
  BranchAndBound bb(sys, std::move(rows), lowers, sys.var_count(),
                    node_budget);
  return bb.run();
}

}  // namespace tipforge
