#include "tipforge/simple_formula.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tipforge {

namespace {

// Picks q variable names that do not collide with spec parameters.
std::vector<std::string> pick_var_names(const ProtocolSpec& spec, int q) {
  static const char* kPool[] = {"x", "y", "z", "u", "v", "w"};
  std::vector<std::string> out;
  for (int i = 0; i < q; ++i) {
    std::string name =
        i < 6 ? kPool[i] : "x" + std::to_string(i + 1);
    while (spec.has_set_param(name) || spec.has_int_param(name) ||
           std::find(out.begin(), out.end(), name) != out.end())
      name += "_";
    out.push_back(name);
  }
  return out;
}

void flatten_intersection(const SetExprPtr& e,
                          std::vector<SetExprPtr>& leaves) {
  if (e->op == SetOp::Intersect) {
    for (const auto& k : e->kids) flatten_intersection(k, leaves);
  } else {
    leaves.push_back(e);
  }
}

}  // namespace

std::string SimpleFormula::str(const ProtocolSpec& spec) const {
  return to_tip(spec)->str();
}

TipPtr SimpleFormula::to_tip(const ProtocolSpec& spec) const {
  std::vector<std::string> vars = pick_var_names(spec, q());
  std::vector<TipBinder> binders;
  std::vector<SetExprPtr> parts;
  for (int i = 0; i < q(); ++i) {
    binders.push_back({vars[i], spec.thresholds.at(quants[i]).name()});
    parts.push_back(SetExpr::make_param(vars[i]));
  }
  for (const auto& lit : literals) {
    SetExprPtr p = SetExpr::make_param(spec.set_params.at(lit.param));
    if (lit.complemented) p = SetExpr::make_complement(p);
    parts.push_back(p);
  }
  if (parts.empty()) throw TipError("simple formula with empty body");
  GuardRef g;
  switch (head.kind) {
    case AtomicGuard::Kind::Thresh:
      g = GuardRef::thresh(spec.thresholds.at(head.thresh).name());
      break;
    case AtomicGuard::Kind::One:
      g = GuardRef::one();
      break;
    case AtomicGuard::Kind::All:
      g = GuardRef::all();
      break;
  }
  TipPtr atom = TipFormula::make_atom(
      std::move(g), SetExpr::make_intersect(std::move(parts)));
  return TipFormula::make_forall(std::move(binders), std::move(atom));
}

SimpleFormula classify_simple(const TipPtr& f, const ProtocolSpec& spec) {
  const TipFormula* atom = f.get();
  std::vector<TipBinder> binders;
  if (f->kind == TipKind::Forall) {
    binders = f->binders;
    if (f->body->kind != TipKind::Atom)
      throw TipError("not a quantified atom: " + f->str());
    atom = f->body.get();
  } else if (f->kind != TipKind::Atom) {
    throw TipError("not a quantified atom: " + f->str());
  }

  SimpleFormula out;
  for (const auto& b : binders) {
    int idx = spec.threshold_index(b.thresh_name);
    if (idx < 0) throw TipError("unknown threshold: " + b.thresh_name);
    out.quants.push_back(idx);
  }
  std::sort(out.quants.begin(), out.quants.end());

  switch (atom->guard.kind) {
    case GuardRef::Kind::Thresh: {
      int idx = spec.threshold_index(atom->guard.thresh_name);
      if (idx < 0)
        throw TipError("unknown threshold: " + atom->guard.thresh_name);
      out.head = AtomicGuard::make_thresh(idx);
      break;
    }
    case GuardRef::Kind::One:
      out.head = AtomicGuard::make_one();
      break;
    case GuardRef::Kind::All:
      out.head = AtomicGuard::make_all();
      break;
  }

  std::vector<SetExprPtr> leaves;
  flatten_intersection(atom->arg, leaves);
  std::set<std::string> seen_vars;
  auto is_binder = [&](const std::string& name) {
    for (const auto& b : binders)
      if (b.var == name) return true;
    return false;
  };
  for (const auto& leaf : leaves) {
    if (leaf->op == SetOp::Param) {
      if (is_binder(leaf->param)) {
        seen_vars.insert(leaf->param);
        continue;
      }
      int idx = -1;
      for (size_t i = 0; i < spec.set_params.size(); ++i)
        if (spec.set_params[i] == leaf->param) idx = static_cast<int>(i);
      if (idx < 0) throw TipError("unknown set: " + leaf->param);
      out.literals.push_back({idx, false});
    } else if (leaf->op == SetOp::Complement &&
               leaf->kids[0]->op == SetOp::Param) {
      const std::string& name = leaf->kids[0]->param;
      if (is_binder(name))
        throw TipError("complemented quantified variable in " + f->str());
      int idx = -1;
      for (size_t i = 0; i < spec.set_params.size(); ++i)
        if (spec.set_params[i] == name) idx = static_cast<int>(i);
      if (idx < 0) throw TipError("unknown set: " + name);
      out.literals.push_back({idx, true});
    } else {
      throw TipError("body is not an intersection of variables and literals: " +
                     f->str());
    }
  }
  for (const auto& b : binders)
    if (!seen_vars.count(b.var))
      throw TipError("quantified variable '" + b.var + "' unused in body");

  std::sort(out.literals.begin(), out.literals.end());
  out.literals.erase(std::unique(out.literals.begin(), out.literals.end()),
                     out.literals.end());
  if (out.quants.empty() && out.literals.empty())
    throw TipError("simple formula must constrain at least one set");
  return out;
}

std::vector<SimpleFormula> parse_simple(const std::string& text,
                                        const ProtocolSpec& spec) {
  TipPtr f = parse_tip(text, spec);
  std::vector<SimpleFormula> out;
  for (const auto& atom : decompose_to_atoms(f, spec))
    out.push_back(classify_simple(atom, spec));
  return out;
}

}  // namespace tipforge
