#include "tipforge/qfbapa.hpp"

#include <algorithm>
#include <sstream>

namespace tipforge {

namespace {

constexpr size_t kMaxCubes = 4096;

// Atom of a disjunct: either a pure arithmetic comparison or a cardinality
// comparison. Set inequality has already been rewritten away.
struct Atom {
  bool is_card = false;
  LinTerm lhs;       // arithmetic only: lhs op rhs
  Int mult{1};       // cardinality only: mult*|set| op rhs
  SetExprPtr set;    // cardinality only
  CmpOp op = CmpOp::Le;
  LinTerm rhs;
};

using Cube = std::vector<Atom>;

SetExprPtr symdiff(const SetExprPtr& a, const SetExprPtr& b) {
  return SetExpr::make_union(
      {SetExpr::make_intersect({a, SetExpr::make_complement(b)}),
       SetExpr::make_intersect({b, SetExpr::make_complement(a)})});
}

CmpOp negate_op(CmpOp op) {
  switch (op) {
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Ge: return CmpOp::Lt;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
  }
  return CmpOp::Le;
}

// Produces the disjunctive normal form directly, pushing negation inward
// and splitting "!=" into "<" or ">".
void to_dnf(const GammaPtr& g, bool positive, std::vector<Cube>& out);

std::vector<Cube> cross(const std::vector<Cube>& a,
                        const std::vector<Cube>& b) {
  std::vector<Cube> out;
  if (a.size() * b.size() > kMaxCubes)
    throw BudgetExceeded("disjunctive normal form exceeds cube cap");
  for (const auto& x : a) {
    for (const auto& y : b) {
      Cube c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

void atom_dnf(Atom base, std::vector<Cube>& out) {
  if (base.op == CmpOp::Ne) {
    Atom lt = base, gt = base;
    lt.op = CmpOp::Lt;
    gt.op = CmpOp::Gt;
    out.push_back({std::move(lt)});
    out.push_back({std::move(gt)});
  } else {
    out.push_back({std::move(base)});
  }
}

void to_dnf(const GammaPtr& g, bool positive, std::vector<Cube>& out) {
  switch (g->kind) {
    case GammaKind::And:
    case GammaKind::Or: {
      bool conjunctive = (g->kind == GammaKind::And) == positive;
      if (conjunctive) {
        std::vector<Cube> acc{{}};
        for (const auto& k : g->kids) {
          std::vector<Cube> sub;
          to_dnf(k, positive, sub);
          acc = cross(acc, sub);
        }
        out.insert(out.end(), acc.begin(), acc.end());
      } else {
        for (const auto& k : g->kids) to_dnf(k, positive, out);
        if (out.size() > kMaxCubes)
          throw BudgetExceeded("disjunctive normal form exceeds cube cap");
      }
      break;
    }
    case GammaKind::Not:
      to_dnf(g->kids[0], !positive, out);
      break;
    case GammaKind::LinCmp: {
      Atom a;
      a.is_card = false;
      a.lhs = g->lhs;
      a.rhs = g->rhs;
      a.op = positive ? g->op : negate_op(g->op);
      atom_dnf(std::move(a), out);
      break;
    }
    case GammaKind::CardCmp: {
      Atom a;
      a.is_card = true;
      a.mult = g->multiplier;
      a.set = g->set;
      a.rhs = g->rhs;
      a.op = positive ? g->op : negate_op(g->op);
      atom_dnf(std::move(a), out);
      break;
    }
    case GammaKind::SetEq: {
      // |a ^ b| <= 0 when positive, >= 1 when negated.
      Atom a;
      a.is_card = true;
      a.mult = 1;
      a.set = symdiff(g->set, g->set2);
      if (positive) {
        a.op = CmpOp::Le;
        a.rhs = LinTerm(Rat(0));
      } else {
        a.op = CmpOp::Ge;
        a.rhs = LinTerm(Rat(1));
      }
      out.push_back({std::move(a)});
      break;
    }
  }
}

}  // namespace

Int BapaModel::set_size(const std::string& name) const {
  int b = -1;
  for (size_t i = 0; i < set_names.size(); ++i)
    if (set_names[i] == name) b = static_cast<int>(i);
  if (b < 0) throw TipError("set not in model: " + name);
  Int total(0);
  for (const auto& [mask, count] : regions)
    if (mask & (1ul << b)) total += count;
  return total;
}

std::vector<long> BapaModel::set_elements(const std::string& name) const {
  if (n > 1000000)
    throw TipError("model too large to materialize elements");
  int b = -1;
  for (size_t i = 0; i < set_names.size(); ++i)
    if (set_names[i] == name) b = static_cast<int>(i);
  if (b < 0) throw TipError("set not in model: " + name);
  std::vector<long> out;
  long next = 0;
  for (const auto& [mask, count] : regions) {
    long c = static_cast<long>(count.get_si());
    if (mask & (1ul << b))
      for (long i = 0; i < c; ++i) out.push_back(next + i);
    next += c;
  }
  return out;
}

std::string BapaModel::str() const {
  std::ostringstream os;
  os << "n = " << n.get_str();
  for (const auto& [k, v] : ints)
    if (k != "n") os << ", " << k << " = " << v.get_str();
  for (const auto& s : set_names) {
    os << ", |" << s << "| = " << set_size(s).get_str();
  }
  return os.str();
}

BapaResult qfbapa_sat(const GammaPtr& formula,
                      const std::vector<std::string>& set_names,
                      const std::vector<std::string>& int_names,
                      long lia_budget) {
  VennEncoding venn(set_names);
  std::vector<Cube> cubes;
  to_dnf(formula, true, cubes);

  BapaResult result;
  for (const auto& cube : cubes) {
    LiaSystem sys;
    int var_n = sys.add_var("n", Int(0));
    std::map<std::string, int> int_var;
    int_var["n"] = var_n;
    for (const auto& name : int_names) {
      if (name == "n") continue;
      int_var[name] = sys.add_var(name);
    }
    std::vector<int> region_var(venn.region_count());
    for (unsigned long r = 0; r < venn.region_count(); ++r)
      region_var[r] = sys.add_var("r" + std::to_string(r), Int(0));

    // The regions partition the universe.
    {
      std::vector<std::pair<int, Rat>> row;
      for (unsigned long r = 0; r < venn.region_count(); ++r)
        row.emplace_back(region_var[r], Rat(1));
      row.emplace_back(var_n, Rat(-1));
      sys.add_eq(std::move(row), Rat(0));
    }

    auto lin_coeffs = [&](const LinTerm& t, Rat scale,
                          std::vector<std::pair<int, Rat>>& row) -> Rat {
      for (const auto& [name, c] : t.coeffs()) {
        auto it = int_var.find(name);
        if (it == int_var.end())
          throw TipError("unknown integer parameter: " + name);
        row.emplace_back(it->second, c * scale);
      }
      return t.constant() * scale;
    };

    auto add_atom_rows = [&](const Atom& a) {
      std::vector<std::pair<int, Rat>> row;
      Rat rhs_const(0);
      if (a.is_card) {
        auto mem = venn.denote(a.set);
        for (unsigned long r = 0; r < venn.region_count(); ++r)
          if (mem[r]) row.emplace_back(region_var[r], Rat(a.mult));
      } else {
        rhs_const -= lin_coeffs(a.lhs, Rat(1), row);
      }
      // Move rhs variables to the left: lhs - rhs op 0.
      rhs_const += lin_coeffs(a.rhs, Rat(-1), row) * Rat(-1);
      switch (a.op) {
        case CmpOp::Le: sys.add_le(std::move(row), rhs_const); break;
        case CmpOp::Lt: sys.add_lt(std::move(row), rhs_const); break;
        case CmpOp::Ge: sys.add_ge(std::move(row), rhs_const); break;
        case CmpOp::Gt: sys.add_gt(std::move(row), rhs_const); break;
        case CmpOp::Eq: sys.add_eq(std::move(row), rhs_const); break;
        case CmpOp::Ne: throw TipError("internal: '!=' in a disjunct");
      }
    };

    for (const auto& a : cube) add_atom_rows(a);

    LiaResult lia = lia_sat(sys, lia_budget);
    result.nodes_used += lia.nodes_used;
    if (lia.sat) {
      BapaModel model;
      model.set_names = set_names;
      model.n = lia.model.at(var_n);
      for (const auto& [name, v] : int_var) model.ints[name] = lia.model.at(v);
      for (unsigned long r = 0; r < venn.region_count(); ++r) {
        const Int& c = lia.model.at(region_var[r]);
        if (c != 0) model.regions[r] = c;
      }
      result.sat = true;
      result.model = std::move(model);
      return result;
    }
  }
  result.sat = false;
  return result;
}

namespace {

Rat eval_lin(const LinTerm& t, const BapaModel& m) {
  Rat acc = t.constant();
  for (const auto& [name, c] : t.coeffs()) {
    auto it = m.ints.find(name);
    if (it == m.ints.end())
      throw TipError("unknown integer parameter in evaluation: " + name);
    acc += c * Rat(it->second);
  }
  return acc;
}

bool eval_cmp(const Rat& a, CmpOp op, const Rat& b) {
  switch (op) {
    case CmpOp::Le: return a <= b;
    case CmpOp::Lt: return a < b;
    case CmpOp::Ge: return a >= b;
    case CmpOp::Gt: return a > b;
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
  }
  return false;
}

bool eval_rec(const GammaPtr& g, const BapaModel& m, const VennEncoding& venn) {
  switch (g->kind) {
    case GammaKind::And:
      for (const auto& k : g->kids)
        if (!eval_rec(k, m, venn)) return false;
      return true;
    case GammaKind::Or:
      for (const auto& k : g->kids)
        if (eval_rec(k, m, venn)) return true;
      return false;
    case GammaKind::Not:
      return !eval_rec(g->kids[0], m, venn);
    case GammaKind::LinCmp:
      return eval_cmp(eval_lin(g->lhs, m), g->op, eval_lin(g->rhs, m));
    case GammaKind::CardCmp: {
      auto mem = venn.denote(g->set);
      Int size(0);
      for (const auto& [mask, count] : m.regions)
        if (mem[mask]) size += count;
      return eval_cmp(Rat(g->multiplier) * Rat(size), g->op,
                      eval_lin(g->rhs, m));
    }
    case GammaKind::SetEq: {
      auto a = venn.denote(g->set);
      auto b = venn.denote(g->set2);
      for (const auto& [mask, count] : m.regions)
        if (a[mask] != b[mask] && count != 0) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

bool eval_bapa(const GammaPtr& formula, const BapaModel& model) {
  VennEncoding venn(model.set_names);
  return eval_rec(formula, model, venn);
}

}  // namespace tipforge
