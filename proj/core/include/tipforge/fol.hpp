// Many-sorted first-order layer: vocabularies, terms, formulas, and the
// syntactic transforms (negation normal form, substitution, symbol renaming)
// used by the axiom translator, the grounding engine, and the
// transition-system checker.
#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tipforge/numeric.hpp"

namespace tipforge {

// Symbol table for a many-sorted relational language. Functions and constants
// are kept separate from relations; all lookups are by name.
struct FoVocabulary {
  std::vector<std::string> sorts;  // declaration order; deterministic
  std::map<std::string, std::vector<std::string>> relations;  // name -> arg sorts
  std::map<std::string, std::string> constants;               // name -> sort
  std::map<std::string, std::pair<std::vector<std::string>, std::string>>
      functions;  // name -> (arg sorts, result sort)

  bool has_sort(const std::string& name) const;
  // Appends the sort if it is not already present.
  void add_sort(const std::string& name);
  void add_relation(const std::string& name, std::vector<std::string> args);
  void add_constant(const std::string& name, const std::string& sort);
  void add_function(const std::string& name, std::vector<std::string> args,
                    const std::string& result);
};

enum class FoTermKind { Var, Const, App };

// A term together with its sort. Application terms carry the result sort of
// their function symbol.
struct FoTerm {
  FoTermKind kind = FoTermKind::Var;
  std::string name;
  std::string sort;
  std::vector<FoTerm> args;  // App only

  static FoTerm var(std::string name, std::string sort);
  static FoTerm constant(std::string name, std::string sort);
  static FoTerm app(std::string name, std::string result_sort,
                    std::vector<FoTerm> args);

  bool operator==(const FoTerm& o) const;
  bool operator<(const FoTerm& o) const;
  std::string str() const;
};

enum class FoKind {
  True,
  False,
  Atom,     // rel + terms
  Eq,       // terms[0] == terms[1]
  Not,      // kids[0]
  And,      // kids
  Or,       // kids
  Implies,  // kids[0] -> kids[1]
  Forall,   // var:var_sort . kids[0]
  Exists,
};

struct FoFormula;
using FoPtr = std::shared_ptr<const FoFormula>;

struct FoFormula {
  FoKind kind = FoKind::True;
  std::string rel;              // Atom
  std::vector<FoTerm> terms;    // Atom arguments; Eq has exactly two
  std::vector<FoPtr> kids;
  std::string var, var_sort;    // quantifiers

  std::string str() const;
};

FoPtr fo_true();
FoPtr fo_false();
FoPtr fo_atom(std::string rel, std::vector<FoTerm> terms);
FoPtr fo_eq(FoTerm a, FoTerm b);
FoPtr fo_not(FoPtr k);
// Empty conjunction is true, empty disjunction is false, and singletons
// collapse to their only member.
FoPtr fo_and(std::vector<FoPtr> kids);
FoPtr fo_or(std::vector<FoPtr> kids);
FoPtr fo_implies(FoPtr a, FoPtr b);
FoPtr fo_forall(std::string var, std::string sort, FoPtr body);
FoPtr fo_exists(std::string var, std::string sort, FoPtr body);

// Negation normal form: implications are expanded and negations pushed onto
// atoms; the result uses only And/Or/Forall/Exists over (possibly negated)
// atoms and equalities.
FoPtr nnf(FoPtr f);

// Renames relation symbols in atoms (used to build primed next-state copies).
// Terms are untouched; constants and functions are never renamed.
FoPtr rename_relations(FoPtr f, const std::map<std::string, std::string>& map);

// Capture-avoiding substitution of a free variable by a term.
FoPtr substitute_var(FoPtr f, const std::string& var, const FoTerm& replacement);

// Free variable names of the formula.
std::set<std::string> free_vars(FoPtr f);

// Relation names appearing in atoms of the formula.
std::set<std::string> relation_symbols(FoPtr f);

// Throws TipError when a symbol is unknown to the vocabulary or applied at
// the wrong sorts. Bound variables carry their own sorts.
void check_well_sorted(FoPtr f, const FoVocabulary& vocab);

}  // namespace tipforge
