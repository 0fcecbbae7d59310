// First-order term/formula constructors and syntactic transforms.
#include "tipforge/fol.hpp"

#include <algorithm>
#include <sstream>

namespace tipforge {

bool FoVocabulary::has_sort(const std::string& name) const {
  return std::find(sorts.begin(), sorts.end(), name) != sorts.end();
}

void FoVocabulary::add_sort(const std::string& name) {
  if (!has_sort(name)) sorts.push_back(name);
}

void FoVocabulary::add_relation(const std::string& name,
                                std::vector<std::string> args) {
  relations[name] = std::move(args);
}

void FoVocabulary::add_constant(const std::string& name,
                                const std::string& sort) {
  constants[name] = sort;
}

void FoVocabulary::add_function(const std::string& name,
                                std::vector<std::string> args,
                                const std::string& result) {
  functions[name] = {std::move(args), result};
}

FoTerm FoTerm::var(std::string name, std::string sort) {
  FoTerm t;
  t.kind = FoTermKind::Var;
  t.name = std::move(name);
  t.sort = std::move(sort);
  return t;
}

FoTerm FoTerm::constant(std::string name, std::string sort) {
  FoTerm t;
  t.kind = FoTermKind::Const;
  t.name = std::move(name);
  t.sort = std::move(sort);
  return t;
}

FoTerm FoTerm::app(std::string name, std::string result_sort,
                   std::vector<FoTerm> args) {
  FoTerm t;
  t.kind = FoTermKind::App;
  t.name = std::move(name);
  t.sort = std::move(result_sort);
  t.args = std::move(args);
  return t;
}

bool FoTerm::operator==(const FoTerm& o) const {
  return kind == o.kind && name == o.name && sort == o.sort && args == o.args;
}

bool FoTerm::operator<(const FoTerm& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (name != o.name) return name < o.name;
  if (sort != o.sort) return sort < o.sort;
  return args < o.args;
}

std::string FoTerm::str() const {
  if (kind != FoTermKind::App) return name;
  std::string out = name + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i].str();
  }
  return out + ")";
}

namespace {

FoPtr make(FoFormula f) { return std::make_shared<const FoFormula>(std::move(f)); }

}  // namespace

FoPtr fo_true() {
  static const FoPtr t = make(FoFormula{});
  return t;
}

FoPtr fo_false() {
  FoFormula f;
  f.kind = FoKind::False;
  static const FoPtr fp = make(std::move(f));
  return fp;
}

FoPtr fo_atom(std::string rel, std::vector<FoTerm> terms) {
  FoFormula f;
  f.kind = FoKind::Atom;
  f.rel = std::move(rel);
  f.terms = std::move(terms);
  return make(std::move(f));
}

FoPtr fo_eq(FoTerm a, FoTerm b) {
  FoFormula f;
  f.kind = FoKind::Eq;
  f.terms = {std::move(a), std::move(b)};
  return make(std::move(f));
}

FoPtr fo_not(FoPtr k) {
  FoFormula f;
  f.kind = FoKind::Not;
  f.kids = {std::move(k)};
  return make(std::move(f));
}

FoPtr fo_and(std::vector<FoPtr> kids) {
  if (kids.empty()) return fo_true();
  if (kids.size() == 1) return kids[0];
  FoFormula f;
  f.kind = FoKind::And;
  f.kids = std::move(kids);
  return make(std::move(f));
}

FoPtr fo_or(std::vector<FoPtr> kids) {
  if (kids.empty()) return fo_false();
  if (kids.size() == 1) return kids[0];
  FoFormula f;
  f.kind = FoKind::Or;
  f.kids = std::move(kids);
  return make(std::move(f));
}

FoPtr fo_implies(FoPtr a, FoPtr b) {
  FoFormula f;
  f.kind = FoKind::Implies;
  f.kids = {std::move(a), std::move(b)};
  return make(std::move(f));
}

FoPtr fo_forall(std::string var, std::string sort, FoPtr body) {
  FoFormula f;
  f.kind = FoKind::Forall;
  f.var = std::move(var);
  f.var_sort = std::move(sort);
  f.kids = {std::move(body)};
  return make(std::move(f));
}

FoPtr fo_exists(std::string var, std::string sort, FoPtr body) {
  FoFormula f;
  f.kind = FoKind::Exists;
  f.var = std::move(var);
  f.var_sort = std::move(sort);
  f.kids = {std::move(body)};
  return make(std::move(f));
}

std::string FoFormula::str() const {
  std::ostringstream out;
  switch (kind) {
    case FoKind::True:
      out << "true";
      break;
    case FoKind::False:
      out << "false";
      break;
    case FoKind::Atom: {
      out << rel << "(";
      for (size_t i = 0; i < terms.size(); ++i) {
        if (i) out << ", ";
        out << terms[i].str();
      }
      out << ")";
      break;
    }
    case FoKind::Eq:
      out << terms[0].str() << " = " << terms[1].str();
      break;
    case FoKind::Not:
      out << "!(" << kids[0]->str() << ")";
      break;
    case FoKind::And:
    case FoKind::Or: {
      const char* op = kind == FoKind::And ? " & " : " | ";
      out << "(";
      for (size_t i = 0; i < kids.size(); ++i) {
        if (i) out << op;
        out << kids[i]->str();
      }
      out << ")";
      break;
    }
    case FoKind::Implies:
      out << "(" << kids[0]->str() << " -> " << kids[1]->str() << ")";
      break;
    case FoKind::Forall:
    case FoKind::Exists:
      out << (kind == FoKind::Forall ? "forall " : "exists ") << var << ":"
          << var_sort << ". " << kids[0]->str();
      break;
  }
  return out.str();
}

namespace {

FoPtr nnf_impl(const FoPtr& f, bool negate) {
  switch (f->kind) {
    case FoKind::True:
      return negate ? fo_false() : fo_true();
    case FoKind::False:
      return negate ? fo_true() : fo_false();
    case FoKind::Atom:
    case FoKind::Eq:
      return negate ? fo_not(f) : f;
    case FoKind::Not:
      return nnf_impl(f->kids[0], !negate);
    case FoKind::And:
    case FoKind::Or: {
      const bool flip = (f->kind == FoKind::And) == negate;
      std::vector<FoPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(nnf_impl(k, negate));
      return flip ? fo_or(std::move(kids)) : fo_and(std::move(kids));
    }
    case FoKind::Implies: {
      // a -> b  ==  !a | b ; negated:  a & !b
      FoPtr a = nnf_impl(f->kids[0], !negate);
      FoPtr b = nnf_impl(f->kids[1], negate);
      if (negate) return fo_and({nnf_impl(f->kids[0], false), b});
      return fo_or({a, b});
    }
    case FoKind::Forall:
    case FoKind::Exists: {
      const bool forall = (f->kind == FoKind::Forall) != negate;
      FoPtr body = nnf_impl(f->kids[0], negate);
      return forall ? fo_forall(f->var, f->var_sort, std::move(body))
                    : fo_exists(f->var, f->var_sort, std::move(body));
    }
  }
  throw TipError("unreachable formula kind");
}

}  // namespace

FoPtr nnf(FoPtr f) { return nnf_impl(f, false); }

FoPtr rename_relations(FoPtr f, const std::map<std::string, std::string>& map) {
  switch (f->kind) {
    case FoKind::True:
    case FoKind::False:
    case FoKind::Eq:
      return f;
    case FoKind::Atom: {
      auto it = map.find(f->rel);
      if (it == map.end()) return f;
      return fo_atom(it->second, f->terms);
    }
    default: {
      FoFormula out = *f;
      for (auto& k : out.kids) k = rename_relations(k, map);
      return std::make_shared<const FoFormula>(std::move(out));
    }
  }
}

namespace {

void term_vars(const FoTerm& t, std::set<std::string>& out) {
  if (t.kind == FoTermKind::Var) out.insert(t.name);
  for (const auto& a : t.args) term_vars(a, out);
}

FoTerm subst_term(const FoTerm& t, const std::string& var, const FoTerm& rep) {
  if (t.kind == FoTermKind::Var) return t.name == var ? rep : t;
  if (t.kind == FoTermKind::Const) return t;
  FoTerm out = t;
  for (auto& a : out.args) a = subst_term(a, var, rep);
  return out;
}

FoPtr subst_impl(const FoPtr& f, const std::string& var, const FoTerm& rep,
                 const std::set<std::string>& rep_vars, int& fresh_counter) {
  switch (f->kind) {
    case FoKind::True:
    case FoKind::False:
      return f;
    case FoKind::Atom:
    case FoKind::Eq: {
      FoFormula out = *f;
      for (auto& t : out.terms) t = subst_term(t, var, rep);
      return std::make_shared<const FoFormula>(std::move(out));
    }
    case FoKind::Not:
    case FoKind::And:
    case FoKind::Or:
    case FoKind::Implies: {
      FoFormula out = *f;
      for (auto& k : out.kids)
        k = subst_impl(k, var, rep, rep_vars, fresh_counter);
      return std::make_shared<const FoFormula>(std::move(out));
    }
    case FoKind::Forall:
    case FoKind::Exists: {
      if (f->var == var) return f;  // shadowed; nothing free below
      if (rep_vars.count(f->var)) {
        // The binder would capture a variable of the replacement: rename it.
        std::string fresh;
        do {
          fresh = f->var + "_r" + std::to_string(fresh_counter++);
        } while (rep_vars.count(fresh) || fresh == var);
        FoPtr body = substitute_var(f->kids[0], f->var,
                                    FoTerm::var(fresh, f->var_sort));
        body = subst_impl(body, var, rep, rep_vars, fresh_counter);
        return f->kind == FoKind::Forall
                   ? fo_forall(fresh, f->var_sort, std::move(body))
                   : fo_exists(fresh, f->var_sort, std::move(body));
      }
      FoPtr body = subst_impl(f->kids[0], var, rep, rep_vars, fresh_counter);
      return f->kind == FoKind::Forall
                 ? fo_forall(f->var, f->var_sort, std::move(body))
                 : fo_exists(f->var, f->var_sort, std::move(body));
    }
  }
  throw TipError("unreachable formula kind");
}

}  // namespace

FoPtr substitute_var(FoPtr f, const std::string& var, const FoTerm& rep) {
  std::set<std::string> rep_vars;
  term_vars(rep, rep_vars);
  int fresh_counter = 0;
  return subst_impl(f, var, rep, rep_vars, fresh_counter);
}

namespace {

void free_vars_impl(const FoPtr& f, std::set<std::string>& bound,
                    std::set<std::string>& out) {
  switch (f->kind) {
    case FoKind::True:
    case FoKind::False:
      return;
    case FoKind::Atom:
    case FoKind::Eq: {
      std::set<std::string> vars;
      for (const auto& t : f->terms) term_vars(t, vars);
      for (const auto& v : vars)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case FoKind::Forall:
    case FoKind::Exists: {
      const bool inserted = bound.insert(f->var).second;
      free_vars_impl(f->kids[0], bound, out);
      if (inserted) bound.erase(f->var);
      return;
    }
    default:
      for (const auto& k : f->kids) free_vars_impl(k, bound, out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(FoPtr f) {
  std::set<std::string> bound, out;
  free_vars_impl(f, bound, out);
  return out;
}

std::set<std::string> relation_symbols(FoPtr f) {
  std::set<std::string> out;
  if (f->kind == FoKind::Atom) out.insert(f->rel);
  for (const auto& k : f->kids) {
    auto sub = relation_symbols(k);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

namespace {

void check_term(const FoTerm& t, const FoVocabulary& vocab,
                const std::map<std::string, std::string>& env) {
  switch (t.kind) {
    case FoTermKind::Var: {
      auto it = env.find(t.name);
      if (it == env.end())
        throw TipError("unbound variable '" + t.name + "'");
      if (it->second != t.sort)
        throw TipError("variable '" + t.name + "' used at sort " + t.sort +
                       " but bound at sort " + it->second);
      return;
    }
    case FoTermKind::Const: {
      auto it = vocab.constants.find(t.name);
      if (it == vocab.constants.end())
        throw TipError("unknown constant '" + t.name + "'");
      if (it->second != t.sort)
        throw TipError("constant '" + t.name + "' has sort " + it->second +
                       ", not " + t.sort);
      return;
    }
    case FoTermKind::App: {
      auto it = vocab.functions.find(t.name);
      if (it == vocab.functions.end())
        throw TipError("unknown function '" + t.name + "'");
      if (it->second.second != t.sort)
        throw TipError("function '" + t.name + "' returns " +
                       it->second.second + ", not " + t.sort);
      if (it->second.first.size() != t.args.size())
        throw TipError("function '" + t.name + "' expects " +
                       std::to_string(it->second.first.size()) + " arguments");
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (t.args[i].sort != it->second.first[i])
          throw TipError("argument " + std::to_string(i + 1) + " of '" +
                         t.name + "' must have sort " + it->second.first[i]);
        check_term(t.args[i], vocab, env);
      }
      return;
    }
  }
}

void check_impl(const FoPtr& f, const FoVocabulary& vocab,
                std::map<std::string, std::string>& env) {
  switch (f->kind) {
    case FoKind::True:
    case FoKind::False:
      return;
    case FoKind::Atom: {
      auto it = vocab.relations.find(f->rel);
      if (it == vocab.relations.end())
        throw TipError("unknown relation '" + f->rel + "'");
      if (it->second.size() != f->terms.size())
        throw TipError("relation '" + f->rel + "' expects " +
                       std::to_string(it->second.size()) + " arguments, got " +
                       std::to_string(f->terms.size()));
      for (size_t i = 0; i < f->terms.size(); ++i) {
        if (f->terms[i].sort != it->second[i])
          throw TipError("argument " + std::to_string(i + 1) + " of '" +
                         f->rel + "' must have sort " + it->second[i] +
                         ", got " + f->terms[i].sort);
        check_term(f->terms[i], vocab, env);
      }
      return;
    }
    case FoKind::Eq: {
      if (f->terms[0].sort != f->terms[1].sort)
        throw TipError("equality compares sort " + f->terms[0].sort +
                       " with sort " + f->terms[1].sort);
      check_term(f->terms[0], vocab, env);
      check_term(f->terms[1], vocab, env);
      return;
    }
    case FoKind::Forall:
    case FoKind::Exists: {
      if (!vocab.has_sort(f->var_sort))
        throw TipError("unknown sort '" + f->var_sort + "'");
      auto saved = env.find(f->var);
      std::string old;
      bool had = false;
      if (saved != env.end()) {
        had = true;
        old = saved->second;
      }
      env[f->var] = f->var_sort;
      check_impl(f->kids[0], vocab, env);
      if (had)
        env[f->var] = old;
      else
        env.erase(f->var);
      return;
    }
    default:
      for (const auto& k : f->kids) check_impl(k, vocab, env);
      return;
  }
}

}  // namespace

void check_well_sorted(FoPtr f, const FoVocabulary& vocab) {
  std::map<std::string, std::string> env;
  check_impl(f, vocab, env);
}

}  // namespace tipforge
