#include "tipforge/epr.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tipforge/cdcl.hpp"

namespace tipforge {

namespace {

// ---------------------------------------------------------------------------
// Rectification: give every bound variable a unique name so that later
// substitutions can never capture.  Also rejects open formulas.
// ---------------------------------------------------------------------------

class Rectifier {
 public:
  FoPtr run(const FoPtr& f) {
    std::map<std::string, std::string> env;
    return walk(f, env);
  }

 private:
  int counter_ = 0;

  FoTerm term(const FoTerm& t, const std::map<std::string, std::string>& env) {
    switch (t.kind) {
      case FoTermKind::Var: {
        auto it = env.find(t.name);
        if (it == env.end())
          throw TipError("formula is not closed: free variable " + t.name);
        return FoTerm::var(it->second, t.sort);
      }
      case FoTermKind::Const:
        return t;
      case FoTermKind::App: {
        std::vector<FoTerm> args;
        args.reserve(t.args.size());
        for (const auto& a : t.args) args.push_back(term(a, env));
        return FoTerm::app(t.name, t.sort, std::move(args));
      }
    }
    throw TipError("unreachable term kind");
  }

  FoPtr walk(const FoPtr& f, std::map<std::string, std::string>& env) {
    switch (f->kind) {
      case FoKind::True:
      case FoKind::False:
        return f;
      case FoKind::Atom: {
        std::vector<FoTerm> ts;
        ts.reserve(f->terms.size());
        for (const auto& t : f->terms) ts.push_back(term(t, env));
        return fo_atom(f->rel, std::move(ts));
      }
      case FoKind::Eq:
        return fo_eq(term(f->terms[0], env), term(f->terms[1], env));
      case FoKind::Not:
        return fo_not(walk(f->kids[0], env));
      case FoKind::And:
      case FoKind::Or: {
        std::vector<FoPtr> kids;
        kids.reserve(f->kids.size());
        for (const auto& k : f->kids) kids.push_back(walk(k, env));
        return f->kind == FoKind::And ? fo_and(std::move(kids))
                                      : fo_or(std::move(kids));
      }
      case FoKind::Implies:
        return fo_implies(walk(f->kids[0], env), walk(f->kids[1], env));
      case FoKind::Forall:
      case FoKind::Exists: {
        const std::string fresh = "v!" + std::to_string(counter_++);
        auto old = env.find(f->var);
        const bool had = old != env.end();
        const std::string saved = had ? old->second : std::string();
        env[f->var] = fresh;
        FoPtr body = walk(f->kids[0], env);
        if (had)
          env[f->var] = saved;
        else
          env.erase(f->var);
        return f->kind == FoKind::Forall
                   ? fo_forall(fresh, f->var_sort, std::move(body))
                   : fo_exists(fresh, f->var_sort, std::move(body));
      }
    }
    throw TipError("unreachable formula kind");
  }
};

// ---------------------------------------------------------------------------
// Skolemization of an NNF, rectified formula: existentials become fresh
// constants, or functions of the enclosing universals.
// ---------------------------------------------------------------------------

class Skolemizer {
 public:
  Skolemizer(FoVocabulary* vocab, GroundingPlan* plan, int* counter)
      : vocab_(vocab), plan_(plan), counter_(counter) {}

  FoPtr run(const FoPtr& f) {
    prefix_.clear();
    return walk(f);
  }

 private:
  FoVocabulary* vocab_;
  GroundingPlan* plan_;
  int* counter_;
  std::vector<std::pair<std::string, std::string>> prefix_;  // (var, sort)

  FoPtr walk(const FoPtr& f) {
    switch (f->kind) {
      case FoKind::True:
      case FoKind::False:
      case FoKind::Atom:
      case FoKind::Eq:
      case FoKind::Not:  // NNF: negation sits directly on an atom
        return f;
      case FoKind::And:
      case FoKind::Or: {
        std::vector<FoPtr> kids;
        kids.reserve(f->kids.size());
        for (const auto& k : f->kids) kids.push_back(walk(k));
        return f->kind == FoKind::And ? fo_and(std::move(kids))
                                      : fo_or(std::move(kids));
      }
      case FoKind::Forall: {
        prefix_.emplace_back(f->var, f->var_sort);
        FoPtr body = walk(f->kids[0]);
        prefix_.pop_back();
        return fo_forall(f->var, f->var_sort, std::move(body));
      }
      case FoKind::Exists: {
        const std::string name = "sk!" + std::to_string((*counter_)++);
        FoTerm witness;
        std::vector<std::string> arg_sorts;
        if (prefix_.empty()) {
          vocab_->add_constant(name, f->var_sort);
          witness = FoTerm::constant(name, f->var_sort);
        } else {
          std::vector<FoTerm> args;
          for (const auto& [v, s] : prefix_) {
            arg_sorts.push_back(s);
            args.push_back(FoTerm::var(v, s));
          }
          vocab_->add_function(name, arg_sorts, f->var_sort);
          witness = FoTerm::app(name, f->var_sort, std::move(args));
        }
        plan_->skolems[name] = {arg_sorts, f->var_sort};
        return walk(substitute_var(f->kids[0], f->var, witness));
      }
      case FoKind::Implies:
        throw TipError("internal error: implication survived NNF");
    }
    throw TipError("unreachable formula kind");
  }
};

// ---------------------------------------------------------------------------
// Ground formula trees (post-expansion propositional structure).
// ---------------------------------------------------------------------------

struct GNode {
  enum class K { True, False, Lit, And, Or } k = K::True;
  int lit = 0;  // K::Lit only; ±propositional variable
  std::vector<GNode*> kids;
};

// ---------------------------------------------------------------------------
// The grounding engine.
// ---------------------------------------------------------------------------

class Grounder {
 public:
  Grounder(const std::vector<FoPtr>& formulas, const FoVocabulary& vocab,
           const EprOptions& opts)
      : inputs_(formulas), vocab_(vocab), opts_(opts) {}

  EprResult run() {
    for (const auto& f : inputs_) check_well_sorted(f, vocab_);

    // Rectify, normalize, and check the alternation graph on the exact query.
    Rectifier rect;
    std::vector<FoPtr> prepared;
    prepared.reserve(inputs_.size());
    for (const auto& f : inputs_) prepared.push_back(nnf(rect.run(f)));
    const QaGraph graph = qa_graph(prepared, vocab_);
    auto topo = graph.topo_order();
    if (!topo) {
      std::ostringstream msg;
      msg << "quantifier alternation graph is cyclic; offending edges:";
      for (const auto& e : graph.cycle_edges())
        msg << " " << e.from << "->" << e.to << " (" << e.provenance << ")";
      throw EprCyclicError(msg.str(), graph.cycle_edges());
    }
    result_.plan.sort_order = *topo;

    // Skolemize (extends the working vocabulary).
    int sk_counter = 0;
    Skolemizer sk(&vocab_, &result_.plan, &sk_counter);
    std::vector<FoPtr> ground_ready;
    ground_ready.reserve(prepared.size());
    for (const auto& f : prepared) ground_ready.push_back(sk.run(f));

    collect_occurring(ground_ready);
    build_domains();
    collect_eq_active(ground_ready);
    materialize_eq_vars();

    // Expand universals into ground trees.
    std::vector<GNode*> roots;
    roots.reserve(ground_ready.size());
    for (const auto& f : ground_ready) {
      std::vector<std::pair<std::string, int>> env;
      roots.push_back(ground(f, &env));
    }

    emit_equality_theory();
    for (GNode* r : roots) assert_root(r);

    result_.stats.vars = static_cast<std::size_t>(solver_.num_vars());
    result_.stats.clauses = n_clauses_;

    if (!opts_.dump_cnf_path.empty()) {
      std::ofstream out(opts_.dump_cnf_path);
      if (!out)
        throw TipError("cannot write CNF dump to " + opts_.dump_cnf_path);
      out << solver_.dimacs();
    }

    CdclResult sat = solver_.solve(opts_.max_conflicts);
    result_.stats.conflicts = sat.conflicts;
    result_.stats.decisions = sat.decisions;
    result_.stats.propagations = sat.propagations;
    result_.sat = sat.sat;
    if (sat.sat) {
      result_.model = extract(sat.model);
      for (const auto& f : inputs_)
        if (!eval_on_structure(f, *result_.model))
          throw TipError(
              "internal error: extracted structure fails an input formula");
    }
    return std::move(result_);
  }

 private:
  struct Elem {
    std::string name;
    std::string fn;         // empty for constants
    std::vector<int> args;  // function-image provenance
  };

  const std::vector<FoPtr>& inputs_;
  FoVocabulary vocab_;  // working copy, grows skolems and seeds
  EprOptions opts_;
  EprResult result_;

  std::map<std::string, std::vector<Elem>> domains_;
  std::map<std::string, int> const_elem_;  // constant name -> index in its sort
  std::map<std::pair<std::string, std::vector<int>>, int> fn_images_;
  std::set<std::string> occ_fns_, occ_rels_;
  std::set<std::string> eq_active_;
  std::set<std::string> materialized_rels_;  // full-product relations

  CdclSolver solver_;
  std::size_t n_clauses_ = 0;
  std::map<std::pair<std::string, std::vector<int>>, int> atom_var_;
  std::map<std::tuple<std::string, int, int>, int> eq_var_;
  std::deque<GNode> arena_;
  std::size_t n_gnodes_ = 0;

  // ---- symbol occurrence --------------------------------------------------

  void collect_occurring_term(const FoTerm& t) {
    if (t.kind == FoTermKind::App) {
      occ_fns_.insert(t.name);
      for (const auto& a : t.args) collect_occurring_term(a);
    }
  }

  void collect_occurring(const std::vector<FoPtr>& fs) {
    std::vector<const FoFormula*> stack;
    for (const auto& f : fs) stack.push_back(f.get());
    while (!stack.empty()) {
      const FoFormula* f = stack.back();
      stack.pop_back();
      if (f->kind == FoKind::Atom) occ_rels_.insert(f->rel);
      for (const auto& t : f->terms) collect_occurring_term(t);
      for (const auto& k : f->kids) stack.push_back(k.get());
    }
  }

  // ---- Herbrand domains ---------------------------------------------------

  void add_elem(const std::string& sort, Elem e) {
    auto& dom = domains_[sort];
    if (dom.size() >= opts_.max_domain)
      throw BudgetExceeded("Herbrand domain for sort " + sort +
                           " exceeds the budget (" +
                           std::to_string(opts_.max_domain) + ")");
    dom.push_back(std::move(e));
  }

  void build_domains() {
    for (const auto& sort : result_.plan.sort_order) domains_[sort];
    // Constants first (name order via the vocabulary map), then function
    // images in topological sort order.
    for (const auto& [name, sort] : vocab_.constants) {
      const_elem_[name] = static_cast<int>(domains_[sort].size());
      add_elem(sort, Elem{name, "", {}});
    }
    for (const auto& sort : result_.plan.sort_order) {
      for (const auto& [fname, sig] : vocab_.functions) {
        if (sig.second != sort || !occ_fns_.count(fname)) continue;
        // Argument sorts are strictly earlier in the order (the graph has
        // an edge from each of them into `sort`), so their domains are
        // final here.
        std::vector<int> idx(sig.first.size(), 0);
        while (true) {
          fn_images_[{fname, idx}] = static_cast<int>(domains_[sort].size());
          std::string nm = fname + "(";
          for (std::size_t i = 0; i < idx.size(); ++i)
            nm += (i ? "," : "") +
                  domains_[sig.first[i]][static_cast<std::size_t>(idx[i])]
                      .name;
          nm += ")";
          add_elem(sort, Elem{std::move(nm), fname, idx});
          // Advance the mixed-radix counter.
          std::size_t p = idx.size();
          while (p > 0) {
            --p;
            if (++idx[p] <
                static_cast<int>(domains_[sig.first[p]].size()))
              break;
            idx[p] = 0;
            if (p == 0) goto done_fn;
          }
          if (idx.empty()) break;  // zero-ary: single image
        }
      done_fn:;
      }
      if (domains_[sort].empty()) {
        // Nonempty-domain semantics: seed a fresh element.
        const std::string name = "seed!" + sort;
        vocab_.add_constant(name, sort);
        const_elem_[name] = 0;
        add_elem(sort, Elem{name, "", {}});
      }
      result_.plan.domain_sizes[sort] = domains_[sort].size();
    }
  }

  // ---- equality-active sorts ----------------------------------------------

  void collect_eq_active(const std::vector<FoPtr>& fs) {
    std::vector<const FoFormula*> stack;
    for (const auto& f : fs) stack.push_back(f.get());
    while (!stack.empty()) {
      const FoFormula* f = stack.back();
      stack.pop_back();
      if (f->kind == FoKind::Eq) eq_active_.insert(f->terms[0].sort);
      for (const auto& k : f->kids) stack.push_back(k.get());
    }
    // Functions transport equality constraints onto their result sorts.
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [fname, sig] : vocab_.functions) {
        if (!occ_fns_.count(fname) || eq_active_.count(sig.second)) continue;
        for (const auto& a : sig.first) {
          if (eq_active_.count(a)) {
            eq_active_.insert(sig.second);
            changed = true;
            break;
          }
        }
      }
    }
    // Relations touching an equality-active sort need full atom tables so
    // congruence can be stated.
    for (const auto& [rname, args] : vocab_.relations) {
      if (!occ_rels_.count(rname)) continue;
      for (const auto& a : args) {
        if (eq_active_.count(a)) {
          materialized_rels_.insert(rname);
          break;
        }
      }
    }
  }

  // ---- propositional variables ---------------------------------------------

  int atom_variable(const std::string& rel, const std::vector<int>& tuple) {
    auto it = atom_var_.find({rel, tuple});
    if (it != atom_var_.end()) return it->second;
    const int v = solver_.new_var();
    atom_var_[{rel, tuple}] = v;
    return v;
  }

  // Canonical key: i < j.  i == j is handled by callers (true).
  int eq_variable(const std::string& sort, int i, int j) {
    if (i > j) std::swap(i, j);
    auto it = eq_var_.find({sort, i, j});
    if (it != eq_var_.end()) return it->second;
    const int v = solver_.new_var();
    eq_var_[{sort, i, j}] = v;
    return v;
  }

  void materialize_eq_vars() {
    for (const auto& sort : eq_active_) {
      const int n = static_cast<int>(domains_.at(sort).size());
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) eq_variable(sort, i, j);
    }
    for (const auto& rel : materialized_rels_) {
      const auto& args = vocab_.relations.at(rel);
      std::vector<int> idx(args.size(), 0);
      if (args.empty()) {
        atom_variable(rel, idx);
        continue;
      }
      while (true) {
        atom_variable(rel, idx);
        std::size_t p = idx.size();
        bool done = false;
        while (p > 0) {
          --p;
          if (++idx[p] < static_cast<int>(domains_.at(args[p]).size()))
            break;
          idx[p] = 0;
          if (p == 0) done = true;
        }
        if (done) break;
      }
    }
  }

  // ---- clauses --------------------------------------------------------------

  void add_clause(std::vector<int> lits) {
    if (++n_clauses_ > opts_.max_clauses)
      throw BudgetExceeded("ground clause budget exceeded (" +
                           std::to_string(opts_.max_clauses) + ")");
    solver_.add_clause(std::move(lits));
  }

  void emit_equality_theory() {
    // Transitivity (reflexivity is baked into term identity; symmetry into
    // the canonical key).
    for (const auto& sort : eq_active_) {
      const int n = static_cast<int>(domains_.at(sort).size());
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int k = j + 1; k < n; ++k) {
            const int ij = eq_variable(sort, i, j);
            const int jk = eq_variable(sort, j, k);
            const int ik = eq_variable(sort, i, k);
            add_clause({-ij, -jk, ik});
            add_clause({-ij, -ik, jk});
            add_clause({-ik, -jk, ij});
          }
    }
    // Relation congruence, one position step at a time.
    for (const auto& rel : materialized_rels_) {
      const auto& args = vocab_.relations.at(rel);
      std::vector<int> idx(args.size(), 0);
      while (true) {
        const int here = atom_variable(rel, idx);
        for (std::size_t p = 0; p < args.size(); ++p) {
          if (!eq_active_.count(args[p])) continue;
          const int n = static_cast<int>(domains_.at(args[p]).size());
          for (int v = 0; v < n; ++v) {
            if (v == idx[p]) continue;
            std::vector<int> other = idx;
            other[p] = v;
            add_clause({-here, -eq_variable(args[p], idx[p], v),
                        atom_variable(rel, other)});
          }
        }
        std::size_t p = idx.size();
        bool done = idx.empty();
        while (p > 0) {
          --p;
          if (++idx[p] < static_cast<int>(domains_.at(args[p]).size()))
            break;
          idx[p] = 0;
          if (p == 0) done = true;
        }
        if (done) break;
      }
    }
    // Function congruence: equal arguments force equal images.
    for (const auto& [fname, sig] : vocab_.functions) {
      if (!occ_fns_.count(fname)) continue;
      bool touches = false;
      for (const auto& a : sig.first)
        if (eq_active_.count(a)) touches = true;
      if (!touches) continue;
      const std::string& res_sort = sig.second;
      std::vector<int> idx(sig.first.size(), 0);
      while (true) {
        const int img = fn_images_.at({fname, idx});
        for (std::size_t p = 0; p < sig.first.size(); ++p) {
          if (!eq_active_.count(sig.first[p])) continue;
          const int n = static_cast<int>(domains_.at(sig.first[p]).size());
          for (int v = 0; v < n; ++v) {
            if (v == idx[p]) continue;
            std::vector<int> other = idx;
            other[p] = v;
            const int img2 = fn_images_.at({fname, other});
            if (img == img2) continue;
            add_clause({-eq_variable(sig.first[p], idx[p], v),
                        eq_variable(res_sort, img, img2)});
          }
        }
        std::size_t p = idx.size();
        bool done = idx.empty();
        while (p > 0) {
          --p;
          if (++idx[p] < static_cast<int>(domains_.at(sig.first[p]).size()))
            break;
          idx[p] = 0;
          if (p == 0) done = true;
        }
        if (done) break;
      }
    }
  }

  // ---- grounding -------------------------------------------------------------

  GNode* node(GNode n) {
    if (++n_gnodes_ > opts_.max_clauses)
      throw BudgetExceeded("ground expansion budget exceeded (" +
                           std::to_string(opts_.max_clauses) + ")");
    arena_.push_back(std::move(n));
    return &arena_.back();
  }

  int eval_term(const FoTerm& t,
                const std::vector<std::pair<std::string, int>>& env) {
    switch (t.kind) {
      case FoTermKind::Var:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t.name) return it->second;
        throw TipError("internal error: unbound variable " + t.name);
      case FoTermKind::Const:
        return const_elem_.at(t.name);
      case FoTermKind::App: {
        std::vector<int> args;
        args.reserve(t.args.size());
        for (const auto& a : t.args) args.push_back(eval_term(a, env));
        return fn_images_.at({t.name, args});
      }
    }
    throw TipError("unreachable term kind");
  }

  GNode* lit_node(int lit) { return node(GNode{GNode::K::Lit, lit, {}}); }

  GNode* bool_node(bool b) {
    return node(GNode{b ? GNode::K::True : GNode::K::False, 0, {}});
  }

  // Builds And/Or with short-circuit simplification.
  GNode* gate(GNode::K k, std::vector<GNode*> kids) {
    const bool is_and = k == GNode::K::And;
    std::vector<GNode*> kept;
    for (GNode* kid : kids) {
      if (kid->k == GNode::K::True) {
        if (!is_and) return kid;  // Or with true
        continue;
      }
      if (kid->k == GNode::K::False) {
        if (is_and) return kid;
        continue;
      }
      kept.push_back(kid);
    }
    if (kept.empty()) return bool_node(is_and);
    if (kept.size() == 1) return kept[0];
    return node(GNode{k, 0, std::move(kept)});
  }

  GNode* ground_atom(const FoPtr& f, bool positive,
                     const std::vector<std::pair<std::string, int>>& env) {
    if (f->kind == FoKind::Eq) {
      const int a = eval_term(f->terms[0], env);
      const int b = eval_term(f->terms[1], env);
      if (a == b) return bool_node(positive);
      const int v = eq_variable(f->terms[0].sort, a, b);
      return lit_node(positive ? v : -v);
    }
    std::vector<int> tuple;
    tuple.reserve(f->terms.size());
    for (const auto& t : f->terms) tuple.push_back(eval_term(t, env));
    const int v = atom_variable(f->rel, tuple);
    return lit_node(positive ? v : -v);
  }

  GNode* ground(const FoPtr& f,
                std::vector<std::pair<std::string, int>>* env) {
    switch (f->kind) {
      case FoKind::True:
        return bool_node(true);
      case FoKind::False:
        return bool_node(false);
      case FoKind::Atom:
      case FoKind::Eq:
        return ground_atom(f, true, *env);
      case FoKind::Not:
        return ground_atom(f->kids[0], false, *env);
      case FoKind::And:
      case FoKind::Or: {
        std::vector<GNode*> kids;
        kids.reserve(f->kids.size());
        const bool is_and = f->kind == FoKind::And;
        for (const auto& k : f->kids) {
          GNode* g = ground(k, env);
          if (g->k == GNode::K::False && is_and) return g;
          if (g->k == GNode::K::True && !is_and) return g;
          kids.push_back(g);
        }
        return gate(is_and ? GNode::K::And : GNode::K::Or, std::move(kids));
      }
      case FoKind::Forall: {
        const auto& dom = domains_.at(f->var_sort);
        std::vector<GNode*> kids;
        kids.reserve(dom.size());
        for (int i = 0; i < static_cast<int>(dom.size()); ++i) {
          env->emplace_back(f->var, i);
          GNode* g = ground(f->kids[0], env);
          env->pop_back();
          if (g->k == GNode::K::False) return g;
          kids.push_back(g);
        }
        return gate(GNode::K::And, std::move(kids));
      }
      case FoKind::Exists:
        throw TipError("internal error: existential survived Skolemization");
      case FoKind::Implies:
        throw TipError("internal error: implication survived NNF");
    }
    throw TipError("unreachable formula kind");
  }

  // ---- CNF (Plaisted–Greenbaum, positive polarity over NNF trees) -----------

  int tseitin(GNode* n) {
    switch (n->k) {
      case GNode::K::Lit:
        return n->lit;
      case GNode::K::And: {
        const int v = solver_.new_var();
        for (GNode* k : n->kids) add_clause({-v, tseitin(k)});
        return v;
      }
      case GNode::K::Or: {
        const int v = solver_.new_var();
        std::vector<int> cl{-v};
        for (GNode* k : n->kids) cl.push_back(tseitin(k));
        add_clause(std::move(cl));
        return v;
      }
      case GNode::K::True:
      case GNode::K::False:
        throw TipError("internal error: constant inside simplified tree");
    }
    throw TipError("unreachable ground node kind");
  }

  void assert_root(GNode* r) {
    if (r->k == GNode::K::True) return;
    if (r->k == GNode::K::False) {
      add_clause({});
      return;
    }
    add_clause({tseitin(r)});
  }

  // ---- model extraction ------------------------------------------------------

  FiniteStructure extract(const std::vector<bool>& model) {
    // Union-find per equality-active sort (representative = least index).
    std::map<std::string, std::vector<int>> rep;
    for (const auto& [sort, dom] : domains_) {
      auto& r = rep[sort];
      r.resize(dom.size());
      for (std::size_t i = 0; i < dom.size(); ++i)
        r[i] = static_cast<int>(i);
    }
    std::function<int(std::vector<int>&, int)> find =
        [&](std::vector<int>& r, int x) {
          while (r[static_cast<std::size_t>(x)] != x)
            x = r[static_cast<std::size_t>(x)] =
                r[static_cast<std::size_t>(r[static_cast<std::size_t>(x)])];
          return x;
        };
    for (const auto& [key, var] : eq_var_) {
      if (!model[static_cast<std::size_t>(var)]) continue;
      const auto& [sort, i, j] = key;
      auto& r = rep.at(sort);
      const int ri = find(r, i), rj = find(r, j);
      const int lo = std::min(ri, rj), hi = std::max(ri, rj);
      r[static_cast<std::size_t>(hi)] = lo;
    }

    // Old index -> new index maps and quotient domains.
    FiniteStructure out;
    std::map<std::string, std::vector<int>> remap;
    for (const auto& [sort, dom] : domains_) {
      auto& r = rep.at(sort);
      auto& m = remap[sort];
      m.assign(dom.size(), -1);
      auto& newdom = out.domains[sort];
      for (std::size_t i = 0; i < dom.size(); ++i) {
        if (find(r, static_cast<int>(i)) == static_cast<int>(i)) {
          m[i] = static_cast<int>(newdom.size());
          newdom.push_back(dom[i].name);
        }
      }
      for (std::size_t i = 0; i < dom.size(); ++i)
        m[i] = m[static_cast<std::size_t>(find(r, static_cast<int>(i)))];
    }

    // Relations: every vocabulary relation gets an interpretation.
    for (const auto& [rname, args] : vocab_.relations)
      out.relations[rname];
    for (const auto& [key, var] : atom_var_) {
      if (!model[static_cast<std::size_t>(var)]) continue;
      const auto& [rname, tuple] = key;
      const auto& args = vocab_.relations.at(rname);
      std::vector<int> t;
      t.reserve(tuple.size());
      for (std::size_t i = 0; i < tuple.size(); ++i)
        t.push_back(
            remap.at(args[i])[static_cast<std::size_t>(tuple[i])]);
      out.relations[rname].insert(std::move(t));
    }

    // Constants.
    for (const auto& [name, sort] : vocab_.constants)
      out.constants[name] = {
          sort,
          remap.at(sort)[static_cast<std::size_t>(const_elem_.at(name))]};

    // Functions: total tables over the quotient domains.
    for (const auto& [fname, sig] : vocab_.functions) {
      auto& table = out.functions[fname];
      if (!occ_fns_.count(fname)) {
        // Unconstrained: map everything to element 0 of the result sort.
        std::vector<int> sizes;
        for (const auto& a : sig.first)
          sizes.push_back(static_cast<int>(out.domains.at(a).size()));
        std::vector<int> idx(sizes.size(), 0);
        while (true) {
          table[idx] = 0;
          std::size_t p = idx.size();
          bool done = idx.empty();
          while (p > 0) {
            --p;
            if (++idx[p] < sizes[p]) break;
            idx[p] = 0;
            if (p == 0) done = true;
          }
          if (done) break;
        }
        continue;
      }
      for (const auto& [key, img] : fn_images_) {
        if (key.first != fname) continue;
        std::vector<int> t;
        for (std::size_t i = 0; i < key.second.size(); ++i)
          t.push_back(remap.at(sig.first[i])[
              static_cast<std::size_t>(key.second[i])]);
        const int new_img =
            remap.at(sig.second)[static_cast<std::size_t>(img)];
        auto it = table.find(t);
        if (it != table.end() && it->second != new_img)
          throw TipError(
              "internal error: function congruence violated in extraction");
        table[t] = new_img;
      }
    }
    return out;
  }
};

}  // namespace

EprResult epr_sat(const std::vector<FoPtr>& formulas,
                  const FoVocabulary& vocab, const EprOptions& opts) {
  Grounder g(formulas, vocab, opts);
  return g.run();
}

bool entails(const std::vector<FoPtr>& axioms, const FoPtr& goal,
             const FoVocabulary& vocab, const EprOptions& opts) {
  std::vector<FoPtr> query = axioms;
  query.push_back(fo_not(goal));
  return !epr_sat(query, vocab, opts).sat;
}

}  // namespace tipforge
