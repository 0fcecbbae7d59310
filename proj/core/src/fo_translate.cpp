// Guard-formula to first-order translation, cyclic-formula removal, and
// subsumption fact generation.
#include "tipforge/fo_translate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tipforge/gamma_check.hpp"
#include "tipforge/qa_graph.hpp"

namespace tipforge {

std::string threshold_sort_name(const std::string& threshold_name) {
  return "Q_" + threshold_name;
}

std::string member_relation_name(const std::string& name) {
  return "member_" + name;
}

FoVocabulary fo_vocab(const ProtocolSpec& spec) {
  FoVocabulary v;
  v.add_sort("node");
  for (const auto& t : spec.thresholds) {
    const std::string qs = threshold_sort_name(t.name());
    v.add_sort(qs);
    v.add_relation(member_relation_name(t.name()), {"node", qs});
  }
  for (const auto& p : spec.set_params)
    v.add_relation(member_relation_name(p), {"node"});
  return v;
}

namespace {

// Deterministic fresh-name supply that avoids a set of reserved names.
class NamePool {
 public:
  explicit NamePool(std::set<std::string> used) : used_(std::move(used)) {}

  // Set-variable style names: x, y, z, u, v, w, x1, y1, ...
  std::string fresh_set_name() {
    static const char* base[] = {"x", "y", "z", "u", "v", "w"};
    for (int round = 0;; ++round) {
      for (const char* b : base) {
        std::string cand = round == 0 ? std::string(b)
                                      : std::string(b) + std::to_string(round);
        if (claim(cand)) return cand;
      }
    }
  }

  // Node-variable style names: m, m2, m3, ...
  std::string fresh_node_name() {
    if (claim("m")) return "m";
    for (int i = 2;; ++i) {
      std::string cand = "m" + std::to_string(i);
      if (claim(cand)) return cand;
    }
  }

 private:
  bool claim(const std::string& name) {
    if (used_.count(name)) return false;
    used_.insert(name);
    return true;
  }
  std::set<std::string> used_;
};

void collect_binder_names(const TipPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case TipKind::Conj:
      for (const auto& k : f->kids) collect_binder_names(k, out);
      return;
    case TipKind::Forall:
      for (const auto& b : f->binders) out.insert(b.var);
      collect_binder_names(f->body, out);
      return;
    case TipKind::Atom:
      return;
  }
}

struct Translator {
  const ProtocolSpec& spec;
  NamePool pool;
  // Bound set variables: name -> threshold name of the guard.
  std::map<std::string, std::string> env;

  // node_term belongs to the denoted set.
  FoPtr membership(const FoTerm& node_term, const SetExprPtr& e) {
    switch (e->op) {
      case SetOp::Param: {
        auto bound = env.find(e->param);
        if (bound != env.end()) {
          const std::string sort = threshold_sort_name(bound->second);
          return fo_atom(member_relation_name(bound->second),
                         {node_term, FoTerm::var(e->param, sort)});
        }
        return fo_atom(member_relation_name(e->param), {node_term});
      }
      case SetOp::Complement:
        return fo_not(membership(node_term, e->kids[0]));
      case SetOp::Intersect: {
        std::vector<FoPtr> kids;
        for (const auto& k : e->kids) kids.push_back(membership(node_term, k));
        return fo_and(std::move(kids));
      }
      case SetOp::Union: {
        std::vector<FoPtr> kids;
        for (const auto& k : e->kids) kids.push_back(membership(node_term, k));
        return fo_or(std::move(kids));
      }
      case SetOp::Empty:
        return fo_false();
      case SetOp::Universe:
        return fo_true();
    }
    throw TipError("unreachable set operator");
  }

  FoPtr atom(const GuardRef& guard, const SetExprPtr& arg) {
    switch (guard.kind) {
      case GuardRef::Kind::Thresh: {
        if (spec.threshold_index(guard.thresh_name) < 0)
          throw TipError("unknown guard sort for threshold '" +
                         guard.thresh_name + "'");
        const std::string w = pool.fresh_set_name();
        const std::string m = pool.fresh_node_name();
        const std::string sort = threshold_sort_name(guard.thresh_name);
        const FoTerm mt = FoTerm::var(m, "node");
        FoPtr inner = fo_implies(
            fo_atom(member_relation_name(guard.thresh_name),
                    {mt, FoTerm::var(w, sort)}),
            membership(mt, arg));
        return fo_exists(w, sort, fo_forall(m, "node", std::move(inner)));
      }
      case GuardRef::Kind::One: {
        const std::string m = pool.fresh_node_name();
        return fo_exists(m, "node", membership(FoTerm::var(m, "node"), arg));
      }
      case GuardRef::Kind::All: {
        const std::string m = pool.fresh_node_name();
        return fo_forall(m, "node", membership(FoTerm::var(m, "node"), arg));
      }
    }
    throw TipError("unreachable guard kind");
  }

  FoPtr translate(const TipPtr& f) {
    switch (f->kind) {
      case TipKind::Conj: {
        std::vector<FoPtr> kids;
        for (const auto& k : f->kids) kids.push_back(translate(k));
        return fo_and(std::move(kids));
      }
      case TipKind::Forall: {
        for (const auto& b : f->binders) env[b.var] = b.thresh_name;
        FoPtr body = translate(f->body);
        for (auto it = f->binders.rbegin(); it != f->binders.rend(); ++it) {
          body = fo_forall(it->var, threshold_sort_name(it->thresh_name),
                           std::move(body));
          env.erase(it->var);
        }
        return body;
      }
      case TipKind::Atom:
        return atom(f->guard, f->arg);
    }
    throw TipError("unreachable formula kind");
  }
};

}  // namespace

FoPtr fo_translate(const TipPtr& f, const ProtocolSpec& spec) {
  std::set<std::string> used;
  collect_binder_names(f, used);
  for (const auto& p : spec.set_params) used.insert(p);
  Translator tr{spec, NamePool(std::move(used)), {}};
  return tr.translate(f);
}

FoPtr fo_translate(const SimpleFormula& f, const ProtocolSpec& spec) {
  return fo_translate(f.to_tip(spec), spec);
}

std::vector<SimpleFormula> drop_cyclic(const std::vector<SimpleFormula>& delta,
                                       const ProtocolSpec& spec,
                                       long lia_budget) {
  std::vector<std::string> why;
  if (!check_feasible(spec, &why, lia_budget))
    throw TipError("cyclic-formula removal requires the feasibility gate: " +
                   (why.empty() ? std::string("failed") : why.front()));
  why.clear();
  if (!check_acyclic(spec, &why, lia_budget))
    throw TipError(
        "cyclic-formula removal requires the threshold-order gate: " +
        (why.empty() ? std::string("failed") : why.front()));
  why.clear();
  if (!check_sane(spec, &why, lia_budget))
    throw TipError("cyclic-formula removal requires the guard-sanity gate: " +
                   (why.empty() ? std::string("failed") : why.front()));

  std::vector<SimpleFormula> kept;
  kept.reserve(delta.size());
  for (const auto& f : delta) {
    const bool cyclic =
        f.head.kind == AtomicGuard::Kind::Thresh &&
        std::find(f.quants.begin(), f.quants.end(), f.head.thresh) !=
            f.quants.end();
    if (!cyclic) kept.push_back(f);
  }

  std::vector<FoPtr> translated;
  translated.reserve(kept.size());
  for (const auto& f : kept) translated.push_back(fo_translate(f, spec));
  QaGraph graph = qa_graph(translated, fo_vocab(spec));
  if (!graph.acyclic())
    throw TipError(
        "internal error: surviving axioms still induce an alternation cycle");
  return kept;
}

std::vector<SimpleFormula> subsumption_fact_formulas(const ProtocolSpec& spec,
                                                     long lia_budget) {
  GammaCheckOptions opts;
  opts.lia_budget = lia_budget;
  std::vector<SimpleFormula> out;
  auto consider = [&](SimpleFormula f) {
    if (gamma_valid(spec, f, opts).valid) out.push_back(std::move(f));
  };

  const int nt = static_cast<int>(spec.thresholds.size());
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < nt; ++j) {
      if (i == j) continue;  // a self-inclusion would be a cyclic axiom
      SimpleFormula f;
      f.quants = {i};
      f.head = AtomicGuard::make_thresh(j);
      consider(std::move(f));
    }
  }
  for (int i = 0; i < nt; ++i) {
    SimpleFormula one;
    one.quants = {i};
    one.head = AtomicGuard::make_one();
    consider(std::move(one));
    SimpleFormula all;
    all.quants = {i};
    all.head = AtomicGuard::make_all();
    consider(std::move(all));
  }
  const int np = static_cast<int>(spec.set_params.size());
  for (int p = 0; p < np; ++p) {
    for (int comp = 0; comp < 2; ++comp) {
      SimpleLiteral lit{p, comp == 1};
      for (int j = 0; j < nt; ++j) {
        SimpleFormula f;
        f.literals = {lit};
        f.head = AtomicGuard::make_thresh(j);
        consider(std::move(f));
      }
      SimpleFormula one;
      one.literals = {lit};
      one.head = AtomicGuard::make_one();
      consider(std::move(one));
      SimpleFormula all;
      all.literals = {lit};
      all.head = AtomicGuard::make_all();
      consider(std::move(all));
    }
  }
  return out;
}

}  // namespace tipforge
