#include "tipforge/structure.hpp"

#include <map>
#include <sstream>
#include <string>

#include "tipforge/numeric.hpp"

namespace tipforge {

int FiniteStructure::domain_size(const std::string& sort) const {
  auto it = domains.find(sort);
  return it == domains.end() ? 0 : static_cast<int>(it->second.size());
}

std::string FiniteStructure::str() const {
  std::ostringstream out;
  for (const auto& [sort, elems] : domains) {
    out << "sort " << sort << " = {";
    for (std::size_t i = 0; i < elems.size(); ++i)
      out << (i ? ", " : "") << elems[i];
    out << "}\n";
  }
  for (const auto& [name, ci] : constants)
    out << "const " << name << " = " << domains.at(ci.first).at(
               static_cast<std::size_t>(ci.second))
        << "\n";
  for (const auto& [name, table] : functions) {
    for (const auto& [args, res] : table) {
      out << name << "(";
      for (std::size_t i = 0; i < args.size(); ++i)
        out << (i ? ", " : "") << args[i];
      out << ") = " << res << "\n";
    }
  }
  for (const auto& [name, tuples] : relations) {
    out << name << " = {";
    bool first = true;
    for (const auto& t : tuples) {
      out << (first ? "" : ", ") << "(";
      for (std::size_t i = 0; i < t.size(); ++i)
        out << (i ? "," : "") << t[i];
      out << ")";
      first = false;
    }
    out << "}\n";
  }
  return out.str();
}

namespace {

using Env = std::map<std::string, int>;

int eval_term(const FoTerm& t, const FiniteStructure& s, const Env& env) {
  switch (t.kind) {
    case FoTermKind::Var: {
      auto it = env.find(t.name);
      if (it == env.end())
        throw TipError("free variable in structure evaluation: " + t.name);
      return it->second;
    }
    case FoTermKind::Const: {
      auto it = s.constants.find(t.name);
      if (it == s.constants.end())
        throw TipError("structure does not interpret constant " + t.name);
      return it->second.second;
    }
    case FoTermKind::App: {
      auto it = s.functions.find(t.name);
      if (it == s.functions.end())
        throw TipError("structure does not interpret function " + t.name);
      std::vector<int> args;
      args.reserve(t.args.size());
      for (const auto& a : t.args) args.push_back(eval_term(a, s, env));
      auto row = it->second.find(args);
      if (row == it->second.end())
        throw TipError("function " + t.name +
                       " has no value at the given tuple");
      return row->second;
    }
  }
  throw TipError("unreachable term kind");
}

bool eval(const FoPtr& f, const FiniteStructure& s, Env& env) {
  switch (f->kind) {
    case FoKind::True:
      return true;
    case FoKind::False:
      return false;
    case FoKind::Atom: {
      auto it = s.relations.find(f->rel);
      if (it == s.relations.end())
        throw TipError("structure does not interpret relation " + f->rel);
      std::vector<int> tuple;
      tuple.reserve(f->terms.size());
      for (const auto& t : f->terms) tuple.push_back(eval_term(t, s, env));
      return it->second.count(tuple) > 0;
    }
    case FoKind::Eq:
      return eval_term(f->terms[0], s, env) == eval_term(f->terms[1], s, env);
    case FoKind::Not:
      return !eval(f->kids[0], s, env);
    case FoKind::And:
      for (const auto& k : f->kids)
        if (!eval(k, s, env)) return false;
      return true;
    case FoKind::Or:
      for (const auto& k : f->kids)
        if (eval(k, s, env)) return true;
      return false;
    case FoKind::Implies:
      return !eval(f->kids[0], s, env) || eval(f->kids[1], s, env);
    case FoKind::Forall:
    case FoKind::Exists: {
      auto dom = s.domains.find(f->var_sort);
      if (dom == s.domains.end())
        throw TipError("structure has no domain for sort " + f->var_sort);
      const bool want = f->kind == FoKind::Exists;
      const int n = static_cast<int>(dom->second.size());
      auto saved = env.find(f->var);
      const bool had = saved != env.end();
      const int old = had ? saved->second : 0;
      bool result = !want;
      for (int i = 0; i < n; ++i) {
        env[f->var] = i;
        if (eval(f->kids[0], s, env) == want) {
          result = want;
          break;
        }
      }
      if (had)
        env[f->var] = old;
      else
        env.erase(f->var);
      return result;
    }
  }
  throw TipError("unreachable formula kind");
}

bool is_primed(const std::string& name) {
  return !name.empty() && name.back() == '\'';
}

}  // namespace

bool eval_on_structure(const FoPtr& f, const FiniteStructure& s) {
  Env env;
  return eval(f, s, env);
}

FiniteStructure pre_state_reduct(const FiniteStructure& s,
                                 const std::set<std::string>& mutables) {
  (void)mutables;  // the pre-state is simply everything unprimed
  FiniteStructure out = s;
  for (auto it = out.relations.begin(); it != out.relations.end();) {
    if (is_primed(it->first))
      it = out.relations.erase(it);
    else
      ++it;
  }
  return out;
}

FiniteStructure post_state_reduct(const FiniteStructure& s,
                                  const std::set<std::string>& mutables) {
  FiniteStructure out = s;
  for (const auto& r : mutables) {
    auto primed = s.relations.find(r + "'");
    if (primed == s.relations.end())
      throw TipError("post-state reduct: structure lacks primed copy of " + r);
    out.relations[r] = primed->second;
  }
  for (auto it = out.relations.begin(); it != out.relations.end();) {
    if (is_primed(it->first))
      it = out.relations.erase(it);
    else
      ++it;
  }
  return out;
}

FiniteStructure make_node_core(int n) {
  if (n <= 0) throw TipError("node domain must be nonempty");
  FiniteStructure s;
  auto& dom = s.domains["node"];
  dom.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) dom.push_back("n" + std::to_string(i));
  return s;
}

}  // namespace tipforge
