#include "tipforge/gamma_check.hpp"

#include <algorithm>
#include <sstream>

namespace tipforge {

namespace {

// n as a linear term scaled by k.
LinTerm n_times(const Int& k) { return LinTerm::var("n", Rat(k)); }

// divisor * |set| >= numerator
GammaPtr guard_at_least(const Threshold& t, SetExprPtr set) {
  return GammaFormula::make_card_cmp(t.divisor(), std::move(set), CmpOp::Ge,
                                     t.numerator());
}

GammaPtr negated_head(const ProtocolSpec& spec, const AtomicGuard& head,
                      SetExprPtr body) {
  switch (head.kind) {
    case AtomicGuard::Kind::Thresh: {
      const Threshold& t = spec.thresholds.at(head.thresh);
      return GammaFormula::make_card_cmp(t.divisor(), std::move(body),
                                         CmpOp::Lt, t.numerator());
    }
    case AtomicGuard::Kind::One:
      return GammaFormula::make_card_cmp(Int(1), std::move(body), CmpOp::Lt,
                                         LinTerm(Rat(1)));
    case AtomicGuard::Kind::All:
      return GammaFormula::make_card_cmp(Int(1), std::move(body), CmpOp::Lt,
                                         LinTerm::var("n"));
  }
  throw TipError("internal: bad guard");
}

// True when the assumption formula is a conjunction of arithmetic
// comparisons and cardinality comparisons over single set parameters --
// the shape under which the pure-arithmetic shortcut below is exact.
bool gamma_is_independent(const GammaPtr& g) {
  if (!g) return true;
  switch (g->kind) {
    case GammaKind::And:
      for (const auto& k : g->kids)
        if (!gamma_is_independent(k)) return false;
      return true;
    case GammaKind::LinCmp:
      return g->op != CmpOp::Ne;
    case GammaKind::CardCmp:
      return g->op != CmpOp::Ne && g->set->op == SetOp::Param;
    default:
      return false;
  }
}

void collect_card_atoms(const GammaPtr& g,
                        std::vector<const GammaFormula*>& out) {
  if (!g) return;
  if (g->kind == GammaKind::And) {
    for (const auto& k : g->kids) collect_card_atoms(k, out);
  } else if (g->kind == GammaKind::CardCmp) {
    out.push_back(g.get());
  }
}

void collect_lin_atoms(const GammaPtr& g,
                       std::vector<const GammaFormula*>& out) {
  if (!g) return;
  if (g->kind == GammaKind::And) {
    for (const auto& k : g->kids) collect_lin_atoms(k, out);
  } else if (g->kind == GammaKind::LinCmp) {
    out.push_back(g.get());
  }
}

// Pure-arithmetic shortcut for  forall x:g[t1]. h(x): abstract |x| and each
// assumption set's size as bounded integers. Exact because independent
// single-set size constraints are simultaneously realizable over a common
// domain of size n (sets may overlap freely).
bool fast_path_applicable(const ProtocolSpec& spec, const SimpleFormula& f) {
  return f.q() == 1 && f.k() == 0 && gamma_is_independent(spec.gamma);
}

GammaCheckResult fast_path_check(const ProtocolSpec& spec,
                                 const SimpleFormula& f,
                                 const GammaCheckOptions& opts) {
  GammaCheckResult res;
  res.used_fast_path = true;

  LiaSystem sys;
  int var_n = sys.add_var("n", Int(0));
  std::map<std::string, int> vars;
  vars["n"] = var_n;
  for (const auto& p : spec.int_params) vars[p] = sys.add_var(p);
  int var_u = sys.add_var("|x|", Int(0));
  std::map<std::string, int> set_size_var;
  for (const auto& p : spec.set_params) {
    int v = sys.add_var("|" + p + "|", Int(0));
    set_size_var[p] = v;
    sys.add_le({{v, Rat(1)}, {var_n, Rat(-1)}}, Rat(0));  // |p| <= n
  }
  sys.add_le({{var_u, Rat(1)}, {var_n, Rat(-1)}}, Rat(0));  // |x| <= n

  auto lin_row = [&](const LinTerm& t, Rat scale,
                     std::vector<std::pair<int, Rat>>& row) -> Rat {
    for (const auto& [name, c] : t.coeffs()) row.emplace_back(vars.at(name),
                                                              c * scale);
    return t.constant() * scale;
  };
  auto add_cmp = [&](std::vector<std::pair<int, Rat>> row, CmpOp op,
                     Rat rhs) {
    switch (op) {
      case CmpOp::Le: sys.add_le(std::move(row), rhs); break;
      case CmpOp::Lt: sys.add_lt(std::move(row), rhs); break;
      case CmpOp::Ge: sys.add_ge(std::move(row), rhs); break;
      case CmpOp::Gt: sys.add_gt(std::move(row), rhs); break;
      case CmpOp::Eq: sys.add_eq(std::move(row), rhs); break;
      case CmpOp::Ne: throw TipError("internal: '!=' in shortcut");
    }
  };

  std::vector<const GammaFormula*> lins, cards;
  collect_lin_atoms(spec.gamma, lins);
  collect_card_atoms(spec.gamma, cards);
  for (const auto* a : lins) {
    if (a->op == CmpOp::Ne)
      throw TipError("internal: shortcut on '!=' assumption");
    // lhs op rhs  <=>  (lhs - rhs coefficients) op (rhs - lhs constants).
    std::vector<std::pair<int, Rat>> row;
    Rat c = -lin_row(a->lhs, Rat(1), row);
    c -= lin_row(a->rhs, Rat(-1), row);
    add_cmp(std::move(row), a->op, c);
  }
  for (const auto* a : cards) {
    if (a->op == CmpOp::Ne)
      throw TipError("internal: shortcut on '!=' assumption");
    std::vector<std::pair<int, Rat>> row;
    row.emplace_back(set_size_var.at(a->set->param), Rat(a->multiplier));
    Rat c = -lin_row(a->rhs, Rat(-1), row);
    add_cmp(std::move(row), a->op, c);
  }

  // Quantifier guard: div * |x| >= num.
  const Threshold& t1 = spec.thresholds.at(f.quants[0]);
  {
    std::vector<std::pair<int, Rat>> row{{var_u, Rat(t1.divisor())}};
    Rat c = lin_row(t1.numerator(), Rat(-1), row);
    sys.add_ge(std::move(row), -c);
  }
  // Negated conclusion over the same set.
  switch (f.head.kind) {
    case AtomicGuard::Kind::Thresh: {
      const Threshold& t = spec.thresholds.at(f.head.thresh);
      std::vector<std::pair<int, Rat>> row{{var_u, Rat(t.divisor())}};
      Rat c = lin_row(t.numerator(), Rat(-1), row);
      sys.add_lt(std::move(row), -c);
      break;
    }
    case AtomicGuard::Kind::One:
      sys.add_le({{var_u, Rat(1)}}, Rat(0));
      break;
    case AtomicGuard::Kind::All:
      sys.add_lt({{var_u, Rat(1)}, {var_n, Rat(-1)}}, Rat(0));
      break;
  }

  LiaResult lia = lia_sat(sys, opts.lia_budget);
  res.nodes_used = lia.nodes_used;
  res.valid = !lia.sat;
  return res;
}

GammaPtr build_validity_query(const ProtocolSpec& spec,
                              const std::vector<std::pair<std::string, int>>&
                                  binders,  // (var name, threshold index)
                              const GuardRef& head, const SetExprPtr& body) {
  std::vector<GammaPtr> conj;
  if (spec.gamma) conj.push_back(spec.gamma);
  for (const auto& [var, tidx] : binders)
    conj.push_back(guard_at_least(spec.thresholds.at(tidx),
                                  SetExpr::make_param(var)));
  AtomicGuard h;
  switch (head.kind) {
    case GuardRef::Kind::Thresh:
      h = AtomicGuard::make_thresh(spec.threshold_index(head.thresh_name));
      break;
    case GuardRef::Kind::One:
      h = AtomicGuard::make_one();
      break;
    case GuardRef::Kind::All:
      h = AtomicGuard::make_all();
      break;
  }
  conj.push_back(negated_head(spec, h, body));
  return GammaFormula::make_and(std::move(conj));
}

GammaCheckResult venn_path_check(
    const ProtocolSpec& spec,
    const std::vector<std::pair<std::string, int>>& binders,
    const GuardRef& head, const SetExprPtr& body,
    const GammaCheckOptions& opts) {
  GammaCheckResult res;
  std::vector<std::string> set_names = spec.set_params;
  for (const auto& [var, tidx] : binders) set_names.push_back(var);
  GammaPtr query = build_validity_query(spec, binders, head, body);
  BapaResult bapa =
      qfbapa_sat(query, set_names, spec.int_params, opts.lia_budget);
  res.nodes_used = bapa.nodes_used;
  res.valid = !bapa.sat;
  if (!res.valid && opts.want_model) res.countermodel = std::move(bapa.model);
  return res;
}

// Fresh variable names for the quantified sets that cannot collide with
// parameters.
std::vector<std::string> quant_names(const ProtocolSpec& spec, int q) {
  std::vector<std::string> out;
  for (int i = 0; i < q; ++i) {
    std::string name = "x" + std::to_string(i);
    while (spec.has_set_param(name) || spec.has_int_param(name)) name += "_";
    out.push_back(name);
  }
  return out;
}

}  // namespace

GammaCheckResult gamma_valid(const ProtocolSpec& spec, const SimpleFormula& f,
                             const GammaCheckOptions& opts) {
  if (opts.allow_fast_path && fast_path_applicable(spec, f)) {
    GammaCheckResult res = fast_path_check(spec, f, opts);
    if (res.valid || !opts.want_model) return res;
    // Invalid and a witness was requested: rerun the exact region path.
  }
  std::vector<std::string> names = quant_names(spec, f.q());
  std::vector<std::pair<std::string, int>> binders;
  std::vector<SetExprPtr> parts;
  for (int i = 0; i < f.q(); ++i) {
    binders.emplace_back(names[i], f.quants[i]);
    parts.push_back(SetExpr::make_param(names[i]));
  }
  for (const auto& lit : f.literals) {
    SetExprPtr p = SetExpr::make_param(spec.set_params.at(lit.param));
    if (lit.complemented) p = SetExpr::make_complement(p);
    parts.push_back(p);
  }
  GuardRef head;
  switch (f.head.kind) {
    case AtomicGuard::Kind::Thresh:
      head = GuardRef::thresh(spec.thresholds.at(f.head.thresh).name());
      break;
    case AtomicGuard::Kind::One:
      head = GuardRef::one();
      break;
    case AtomicGuard::Kind::All:
      head = GuardRef::all();
      break;
  }
  return venn_path_check(spec, binders, head,
                         SetExpr::make_intersect(std::move(parts)), opts);
}

GammaCheckResult gamma_valid_tip_atom(const ProtocolSpec& spec,
                                      const TipPtr& atom,
                                      const GammaCheckOptions& opts) {
  const TipFormula* a = atom.get();
  std::vector<std::pair<std::string, int>> binders;
  if (atom->kind == TipKind::Forall) {
    for (const auto& b : atom->binders) {
      int idx = spec.threshold_index(b.thresh_name);
      if (idx < 0) throw TipError("unknown threshold: " + b.thresh_name);
      binders.emplace_back(b.var, idx);
    }
    a = atom->body.get();
  }
  if (a->kind != TipKind::Atom)
    throw TipError("not a quantified atom: " + atom->str());
  return venn_path_check(spec, binders, a->guard, a->arg, opts);
}

GammaCheckResult gamma_valid_tip(const ProtocolSpec& spec, const TipPtr& f,
                                 const GammaCheckOptions& opts) {
  GammaCheckResult agg;
  agg.valid = true;
  for (const auto& atom : decompose_to_atoms(f, spec)) {
    GammaCheckResult one = gamma_valid_tip_atom(spec, atom, opts);
    agg.nodes_used += one.nodes_used;
    if (!one.valid) {
      agg.valid = false;
      agg.countermodel = std::move(one.countermodel);
      return agg;
    }
  }
  return agg;
}

// ---------------------------------------------------------------------------
// Gates.

namespace {

bool gamma_sat_with(const ProtocolSpec& spec, std::vector<GammaPtr> extra,
                    long lia_budget) {
  std::vector<GammaPtr> conj;
  if (spec.gamma) conj.push_back(spec.gamma);
  for (auto& e : extra) conj.push_back(std::move(e));
  GammaPtr query = conj.empty()
                       ? GammaFormula::make_lin_cmp(LinTerm(Rat(0)), CmpOp::Le,
                                                    LinTerm(Rat(0)))
                       : GammaFormula::make_and(std::move(conj));
  BapaResult r = qfbapa_sat(query, spec.set_params, spec.int_params,
                            lia_budget);
  return r.sat;
}

// value(t) compared to a linear expression: divisor-cleared comparison.
GammaPtr thresh_cmp(const Threshold& t, CmpOp op, const LinTerm& rhs) {
  // num/div op rhs  <=>  num op div*rhs.
  return GammaFormula::make_lin_cmp(t.numerator(), op,
                                    rhs * Rat(t.divisor()));
}

}  // namespace

bool check_feasible(const ProtocolSpec& spec, std::vector<std::string>* why,
                    long lia_budget) {
  bool ok = true;
  for (const auto& t : spec.thresholds) {
    // Gamma must entail t <= n: check Gamma and t > n unsatisfiable.
    if (gamma_sat_with(spec, {thresh_cmp(t, CmpOp::Gt, LinTerm::var("n"))},
                       lia_budget)) {
      ok = false;
      if (why)
        why->push_back("threshold " + t.name() +
                       " can exceed the domain size");
    }
  }
  return ok;
}

bool check_nondegenerate(const ProtocolSpec& spec,
                         std::vector<std::string>* why, long lia_budget) {
  bool ok = true;
  for (const auto& t : spec.thresholds) {
    // Some permitted instance must make the guard require >= 1 node.
    if (!gamma_sat_with(spec, {thresh_cmp(t, CmpOp::Ge, LinTerm(Rat(1)))},
                        lia_budget)) {
      ok = false;
      if (why)
        why->push_back("threshold " + t.name() +
                       " never requires a single node");
    }
  }
  return ok;
}

bool check_sane(const ProtocolSpec& spec, std::vector<std::string>* why,
                long lia_budget) {
  bool ok = true;
  LinTerm n_minus_1 = LinTerm::var("n") - LinTerm(Rat(1));
  for (const auto& t1 : spec.thresholds) {
    GammaPtr pos = thresh_cmp(t1, CmpOp::Ge, LinTerm(Rat(1)));
    for (const auto& t2 : spec.thresholds) {
      // A guard must not be forced total whenever another is nontrivial.
      if (!gamma_sat_with(spec, {pos, thresh_cmp(t2, CmpOp::Le, n_minus_1)},
                          lia_budget)) {
        ok = false;
        if (why)
          why->push_back("threshold " + t2.name() +
                         " is forced to cover the whole domain whenever " +
                         t1.name() + " is nontrivial");
      }
    }
    for (const auto& p : spec.set_params) {
      for (bool comp : {false, true}) {
        SetExprPtr lit = SetExpr::make_param(p);
        if (comp) lit = SetExpr::make_complement(lit);
        GammaPtr small = GammaFormula::make_card_cmp(Int(1), lit, CmpOp::Le,
                                                     n_minus_1);
        if (!gamma_sat_with(spec, {pos, small}, lia_budget)) {
          ok = false;
          if (why)
            why->push_back(std::string("literal ") + (comp ? "~" : "") + p +
                           " is forced to cover the whole domain whenever " +
                           t1.name() + " is nontrivial");
        }
      }
    }
  }
  return ok;
}

bool check_acyclic(const ProtocolSpec& spec, std::vector<std::string>* why,
                   long lia_budget) {
  bool ok = true;
  for (size_t i = 0; i < spec.thresholds.size(); ++i) {
    for (size_t j = i + 1; j < spec.thresholds.size(); ++j) {
      const Threshold& a = spec.thresholds[i];
      const Threshold& b = spec.thresholds[j];
      // Distinct thresholds must be distinguishable under the assumptions:
      // a != b satisfiable, i.e. div_b*num_a != div_a*num_b.
      GammaPtr ne = GammaFormula::make_lin_cmp(
          a.numerator() * Rat(b.divisor()), CmpOp::Ne,
          b.numerator() * Rat(a.divisor()));
      if (!gamma_sat_with(spec, {ne}, lia_budget)) {
        ok = false;
        if (why)
          why->push_back("thresholds " + a.name() + " and " + b.name() +
                         " are forced equal by the assumptions");
      }
    }
  }
  return ok;
}

GateReport check_gates(const ProtocolSpec& spec, long lia_budget) {
  GateReport rep;
  rep.feasible = check_feasible(spec, &rep.failures, lia_budget);
  rep.nondegenerate = check_nondegenerate(spec, &rep.failures, lia_budget);
  rep.sane = check_sane(spec, &rep.failures, lia_budget);
  rep.acyclic = check_acyclic(spec, &rep.failures, lia_budget);
  return rep;
}

}  // namespace tipforge
