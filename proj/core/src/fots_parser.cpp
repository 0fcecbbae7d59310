#include "tipforge/fots.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "tipforge/fo_translate.hpp"
#include "tipforge/numeric.hpp"

namespace tipforge {

std::string primed_name(const std::string& base) { return base + "'"; }

bool is_primed_name(const std::string& name) {
  return !name.empty() && name.back() == '\'';
}

std::string unprimed_name(const std::string& name) {
  return is_primed_name(name) ? name.substr(0, name.size() - 1) : name;
}

namespace {

struct SExpr {
  bool is_atom = true;
  std::string atom;
  std::vector<SExpr> kids;
  int line = 0, col = 0;
};

[[noreturn]] void fail(const std::string& origin, int line, int col,
                       const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ":" << col << ": " << msg;
  throw TipError(os.str());
}

[[noreturn]] void fail_at(const std::string& origin, const SExpr& e,
                          const std::string& msg) {
  fail(origin, e.line, e.col, msg);
}

class Reader {
 public:
  Reader(const std::string& text, std::string origin)
      : text_(text), origin_(std::move(origin)) {}

  // Reads the whole input as a sequence of top-level s-expressions.
  std::vector<SExpr> read_all() {
    std::vector<SExpr> forms;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) break;
      forms.push_back(read_expr());
    }
    return forms;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') {
          ++line_;
          col_ = 1;
        } else {
          ++col_;
        }
        ++pos_;
      } else {
        break;
      }
    }
  }

  void advance() {
    ++pos_;
    ++col_;
  }

  SExpr read_expr() {
    skip_space();
    if (pos_ >= text_.size())
      fail(origin_, line_, col_, "unexpected end of input");
    char c = text_[pos_];
    if (c == ')') fail(origin_, line_, col_, "unmatched ')'");
    if (c == '(') {
      SExpr e;
      e.is_atom = false;
      e.line = line_;
      e.col = col_;
      advance();
      for (;;) {
        skip_space();
        if (pos_ >= text_.size())
          fail(origin_, e.line, e.col, "unterminated '('");
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.kids.push_back(read_expr());
      }
    }
    SExpr e;
    e.is_atom = true;
    e.line = line_;
    e.col = col_;
    std::string token;
    while (pos_ < text_.size()) {
      char t = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(t)) || t == '(' ||
          t == ')' || t == ';')
        break;
      token.push_back(t);
      advance();
    }
    e.atom = token;
    return e;
  }

  const std::string& text_;
  std::string origin_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

// Parses declarations and formulas in document order against the vocabulary
// built so far, then runs the whole-system checks.
class FotsBuilder {
 public:
  FotsBuilder(const ProtocolSpec& spec, std::string origin)
      : origin_(std::move(origin)) {
    ts_.vocab = fo_vocab(spec);
    ts_.origin = origin_;
    ts_.spec_name = spec.name;
    for (const auto& [name, args] : ts_.vocab.relations) {
      (void)args;
      imported_relations_.insert(name);
    }
  }

  TransitionSystem build(const std::vector<SExpr>& forms) {
    for (const SExpr& form : forms) dispatch(form);
    finish();
    return std::move(ts_);
  }

 private:
  void dispatch(const SExpr& form) {
    if (form.is_atom || form.kids.empty() || !form.kids[0].is_atom)
      fail_at(origin_, form, "expected a (keyword ...) form");
    const std::string& head = form.kids[0].atom;
    if (head == "sort") return decl_sort(form);
    if (head == "relation") return decl_relation(form);
    if (head == "constant") return decl_constant(form);
    if (head == "function") return decl_function(form);
    if (head == "axiom") return add_formula(form, Section::Axiom);
    if (head == "init") return add_formula(form, Section::Init);
    if (head == "transition") return add_transition(form);
    if (head == "invariant") return add_formula(form, Section::Invariant);
    if (head == "safety") return add_formula(form, Section::Safety);
    fail_at(origin_, form.kids[0], "unknown form '" + head + "'");
  }

  // ---- declarations ----

  std::string decl_name(const SExpr& e, const char* what) {
    if (!e.is_atom) fail_at(origin_, e, std::string("expected a ") + what);
    if (is_primed_name(e.atom))
      fail_at(origin_, e, "declared names may not be primed");
    return e.atom;
  }

  void check_fresh(const SExpr& at, const std::string& name) {
    if (ts_.vocab.has_sort(name) || ts_.vocab.relations.count(name) ||
        ts_.vocab.constants.count(name) || ts_.vocab.functions.count(name))
      fail_at(origin_, at, "name '" + name + "' is already defined");
  }

  std::string sort_ref(const SExpr& e) {
    if (!e.is_atom) fail_at(origin_, e, "expected a sort name");
    if (!ts_.vocab.has_sort(e.atom))
      fail_at(origin_, e, "unknown sort '" + e.atom + "'");
    return e.atom;
  }

  std::vector<std::string> sort_list(const SExpr& e) {
    if (e.is_atom) fail_at(origin_, e, "expected a (sort ...) list");
    std::vector<std::string> sorts;
    for (const SExpr& k : e.kids) sorts.push_back(sort_ref(k));
    return sorts;
  }

  void decl_sort(const SExpr& form) {
    if (form.kids.size() != 2)
      fail_at(origin_, form, "expected (sort NAME)");
    std::string name = decl_name(form.kids[1], "sort name");
    check_fresh(form.kids[1], name);
    ts_.vocab.add_sort(name);
  }

  void decl_relation(const SExpr& form) {
    if (form.kids.size() != 3)
      fail_at(origin_, form, "expected (relation NAME (SORT ...))");
    std::string name = decl_name(form.kids[1], "relation name");
    check_fresh(form.kids[1], name);
    ts_.vocab.add_relation(name, sort_list(form.kids[2]));
  }

  void decl_constant(const SExpr& form) {
    if (form.kids.size() != 3)
      fail_at(origin_, form, "expected (constant NAME SORT)");
    std::string name = decl_name(form.kids[1], "constant name");
    check_fresh(form.kids[1], name);
    ts_.vocab.add_constant(name, sort_ref(form.kids[2]));
  }

  void decl_function(const SExpr& form) {
    if (form.kids.size() != 4)
      fail_at(origin_, form, "expected (function NAME (SORT ...) SORT)");
    std::string name = decl_name(form.kids[1], "function name");
    check_fresh(form.kids[1], name);
    auto args = sort_list(form.kids[2]);
    if (args.empty())
      fail_at(origin_, form.kids[2],
              "functions take at least one argument; use a constant");
    ts_.vocab.add_function(name, std::move(args), sort_ref(form.kids[3]));
  }

  // ---- formulas ----

  enum class Section { Axiom, Init, Transition, Invariant, Safety };

  static const char* section_name(Section s) {
    switch (s) {
      case Section::Axiom: return "axiom";
      case Section::Init: return "init";
      case Section::Transition: return "transition";
      case Section::Invariant: return "invariant";
      case Section::Safety: return "safety";
    }
    return "?";
  }

  void add_formula(const SExpr& form, Section section) {
    if (form.kids.size() != 2)
      fail_at(origin_, form,
              std::string("expected (") + section_name(section) + " FORMULA)");
    std::map<std::string, std::string> bound;
    FoPtr f = parse_formula(form.kids[1], bound, section);
    switch (section) {
      case Section::Axiom: ts_.theta.push_back(f); break;
      case Section::Init: init_conjuncts_.push_back(f); break;
      case Section::Invariant: ts_.invariant.push_back(f); break;
      case Section::Safety: safety_conjuncts_.push_back(f); break;
      case Section::Transition: break;  // handled by add_transition
    }
  }

  void add_transition(const SExpr& form) {
    if (form.kids.size() != 3 || !form.kids[1].is_atom)
      fail_at(origin_, form, "expected (transition NAME FORMULA)");
    const std::string& name = form.kids[1].atom;
    for (const Transition& t : ts_.transitions)
      if (t.name == name)
        fail_at(origin_, form.kids[1],
                "duplicate transition name '" + name + "'");
    std::map<std::string, std::string> bound;
    FoPtr f = parse_formula(form.kids[2], bound, Section::Transition);
    ts_.transitions.push_back(Transition{name, f});
  }

  FoTerm parse_term(const SExpr& e,
                    const std::map<std::string, std::string>& bound) {
    if (e.is_atom) {
      if (is_primed_name(e.atom))
        fail_at(origin_, e, "only relation symbols may be primed");
      auto b = bound.find(e.atom);
      if (b != bound.end()) return FoTerm::var(e.atom, b->second);
      auto c = ts_.vocab.constants.find(e.atom);
      if (c != ts_.vocab.constants.end())
        return FoTerm::constant(e.atom, c->second);
      fail_at(origin_, e, "unknown variable or constant '" + e.atom + "'");
    }
    if (e.kids.empty() || !e.kids[0].is_atom)
      fail_at(origin_, e, "expected a function application");
    const std::string& fname = e.kids[0].atom;
    if (is_primed_name(fname))
      fail_at(origin_, e.kids[0], "only relation symbols may be primed");
    auto it = ts_.vocab.functions.find(fname);
    if (it == ts_.vocab.functions.end())
      fail_at(origin_, e.kids[0], "unknown function '" + fname + "'");
    const auto& [arg_sorts, result] = it->second;
    if (e.kids.size() - 1 != arg_sorts.size())
      fail_at(origin_, e,
              "function '" + fname + "' expects " +
                  std::to_string(arg_sorts.size()) + " argument(s)");
    std::vector<FoTerm> args;
    for (std::size_t i = 0; i + 1 < e.kids.size(); ++i) {
      FoTerm t = parse_term(e.kids[i + 1], bound);
      if (t.sort != arg_sorts[i])
        fail_at(origin_, e.kids[i + 1],
                "argument " + std::to_string(i + 1) + " of '" + fname +
                    "' has sort " + t.sort + ", expected " + arg_sorts[i]);
      args.push_back(std::move(t));
    }
    return FoTerm::app(fname, result, std::move(args));
  }

  FoPtr parse_atom(const SExpr& e,
                   const std::map<std::string, std::string>& bound,
                   Section section, const std::string& rel_name,
                   std::size_t first_arg) {
    const SExpr& at = e.is_atom ? e : e.kids[0];
    std::string base = unprimed_name(rel_name);
    if (is_primed_name(rel_name)) {
      if (section != Section::Transition)
        fail_at(origin_, at,
                "primed symbol '" + rel_name +
                    "' may appear only in a transition formula");
      if (imported_relations_.count(base))
        fail_at(origin_, at, "membership relation '" + base +
                                 "' is rigid and may not be primed");
      if (base.empty() || is_primed_name(base))
        fail_at(origin_, at, "malformed primed name '" + rel_name + "'");
    }
    auto it = ts_.vocab.relations.find(base);
    if (it == ts_.vocab.relations.end())
      fail_at(origin_, at, "unknown relation '" + base + "'");
    const auto& arg_sorts = it->second;
    std::size_t given = e.is_atom ? 0 : e.kids.size() - first_arg;
    if (given != arg_sorts.size())
      fail_at(origin_, e,
              "relation '" + base + "' expects " +
                  std::to_string(arg_sorts.size()) + " argument(s)");
    std::vector<FoTerm> terms;
    for (std::size_t i = 0; i < given; ++i) {
      FoTerm t = parse_term(e.kids[first_arg + i], bound);
      if (t.sort != arg_sorts[i])
        fail_at(origin_, e.kids[first_arg + i],
                "argument " + std::to_string(i + 1) + " of '" + base +
                    "' has sort " + t.sort + ", expected " + arg_sorts[i]);
      terms.push_back(std::move(t));
    }
    if (is_primed_name(rel_name)) all_primed_.insert(base);
    return fo_atom(rel_name, std::move(terms));
  }

  FoPtr parse_formula(const SExpr& e,
                      std::map<std::string, std::string>& bound,
                      Section section) {
    if (e.is_atom) {
      if (e.atom == "true") return fo_true();
      if (e.atom == "false") return fo_false();
      // Nullary relation written without parentheses.
      return parse_atom(e, bound, section, e.atom, 0);
    }
    if (e.kids.empty() || !e.kids[0].is_atom)
      fail_at(origin_, e, "expected a formula");
    const std::string& head = e.kids[0].atom;

    if (head == "forall" || head == "exists") {
      if (e.kids.size() != 3 || e.kids[1].is_atom)
        fail_at(origin_, e,
                "expected (" + head + " ((VAR SORT) ...) FORMULA)");
      std::vector<std::pair<std::string, std::string>> binders;
      for (const SExpr& b : e.kids[1].kids) {
        if (b.is_atom || b.kids.size() != 2 || !b.kids[0].is_atom ||
            !b.kids[1].is_atom)
          fail_at(origin_, b, "expected a (VAR SORT) binder");
        if (is_primed_name(b.kids[0].atom))
          fail_at(origin_, b.kids[0], "variable names may not be primed");
        binders.emplace_back(b.kids[0].atom, sort_ref(b.kids[1]));
      }
      if (binders.empty())
        fail_at(origin_, e.kids[1], "quantifier needs at least one binder");
      // Bind left to right; inner binders shadow outer ones on the way out.
      std::vector<std::pair<bool, std::string>> saved;  // (had_old, old sort)
      for (const auto& [v, s] : binders) {
        auto old = bound.find(v);
        saved.emplace_back(old != bound.end(),
                           old != bound.end() ? old->second : "");
        bound[v] = s;
      }
      FoPtr body = parse_formula(e.kids[2], bound, section);
      for (std::size_t i = binders.size(); i-- > 0;) {
        const auto& [v, s] = binders[i];
        if (saved[i].first)
          bound[v] = saved[i].second;
        else
          bound.erase(v);
        body = head == "forall" ? fo_forall(v, s, body)
                                : fo_exists(v, s, body);
      }
      return body;
    }
    if (head == "and" || head == "or") {
      std::vector<FoPtr> kids;
      for (std::size_t i = 1; i < e.kids.size(); ++i)
        kids.push_back(parse_formula(e.kids[i], bound, section));
      return head == "and" ? fo_and(std::move(kids)) : fo_or(std::move(kids));
    }
    if (head == "not") {
      if (e.kids.size() != 2)
        fail_at(origin_, e, "expected (not FORMULA)");
      return fo_not(parse_formula(e.kids[1], bound, section));
    }
    if (head == "=>") {
      if (e.kids.size() != 3)
        fail_at(origin_, e, "expected (=> FORMULA FORMULA)");
      return fo_implies(parse_formula(e.kids[1], bound, section),
                        parse_formula(e.kids[2], bound, section));
    }
    if (head == "=") {
      if (e.kids.size() != 3)
        fail_at(origin_, e, "expected (= TERM TERM)");
      FoTerm a = parse_term(e.kids[1], bound);
      FoTerm b = parse_term(e.kids[2], bound);
      if (a.sort != b.sort)
        fail_at(origin_, e,
                "equality between sorts " + a.sort + " and " + b.sort);
      return fo_eq(std::move(a), std::move(b));
    }
    return parse_atom(e, bound, section, head, 1);
  }

  // ---- whole-system checks ----

  void finish() {
    ts_.init = fo_and(init_conjuncts_);
    ts_.safety = fo_and(safety_conjuncts_);
    ts_.mutable_relations = all_primed_;

    // Background-axiom symbols are rigid: a transition that primes one is
    // modifying state the axioms constrain.
    std::set<std::string> theta_syms;
    for (const FoPtr& f : ts_.theta)
      for (const std::string& r : relation_symbols(f))
        theta_syms.insert(unprimed_name(r));
    for (const std::string& m : ts_.mutable_relations)
      if (theta_syms.count(m))
        throw TipError(origin_ + ": transition modifies relation '" + m +
                       "', which is constrained by a background axiom");

    for (const std::string& m : ts_.mutable_relations)
      ts_.vocab.add_relation(primed_name(m), ts_.vocab.relations.at(m));

    for (const FoPtr& f : ts_.theta) check_well_sorted(f, ts_.vocab);
    check_well_sorted(ts_.init, ts_.vocab);
    for (const Transition& t : ts_.transitions)
      check_well_sorted(t.formula, ts_.vocab);
    for (const FoPtr& f : ts_.invariant) check_well_sorted(f, ts_.vocab);
    check_well_sorted(ts_.safety, ts_.vocab);
  }

  std::set<std::string> all_primed_;  // base names seen primed
  std::string origin_;
  TransitionSystem ts_;
  std::set<std::string> imported_relations_;
  std::vector<FoPtr> init_conjuncts_;
  std::vector<FoPtr> safety_conjuncts_;
};

}  // namespace

TransitionSystem parse_fots(const std::string& text, const ProtocolSpec& spec,
                            const std::string& origin) {
  Reader reader(text, origin);
  FotsBuilder builder(spec, origin);
  return builder.build(reader.read_all());
}

TransitionSystem load_fots(const std::string& path, const ProtocolSpec& spec) {
  std::ifstream in(path);
  if (!in) throw TipError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fots(buf.str(), spec, path);
}

}  // namespace tipforge
