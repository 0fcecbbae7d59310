// Threshold-guard formulas: the language of quantified guard assertions
// over intersections of quantified set variables and set-parameter
// literals. Concrete syntax:
//
//   g[t1](~f)
//   forall x:g[t1]. g[t2](x)
//   forall x:g[t1], y:g[t1], z:g[t2]. g[t3](x & y & z)
//   forall x:g[t1], y:g[t2]. nonempty(x & y & ~f)
//   (g[t1](~f)) && (forall x:g[t1]. universal(x + f))
//
// Quantified variables range over subsets of the node domain whose size
// meets the named threshold. `nonempty(B)` asserts |B| >= 1 and
// `universal(B)` asserts B is the whole domain.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tipforge/spec.hpp"

namespace tipforge {

// Guard applied by an atom: a named threshold, "at least one", or "all".
struct GuardRef {
  enum class Kind { Thresh, One, All } kind = Kind::Thresh;
  std::string thresh_name;  // Kind::Thresh only

  static GuardRef thresh(std::string name) {
    return GuardRef{Kind::Thresh, std::move(name)};
  }
  static GuardRef one() { return GuardRef{Kind::One, {}}; }
  static GuardRef all() { return GuardRef{Kind::All, {}}; }

  bool operator==(const GuardRef& o) const {
    return kind == o.kind && thresh_name == o.thresh_name;
  }
  std::string str() const;
};

struct TipFormula;
using TipPtr = std::shared_ptr<const TipFormula>;

enum class TipKind { Conj, Forall, Atom };

struct TipBinder {
  std::string var;
  std::string thresh_name;  // quantifier guards are always named thresholds
};

struct TipFormula {
  TipKind kind;

  std::vector<TipPtr> kids;  // Conj (>= 2)

  std::vector<TipBinder> binders;  // Forall
  TipPtr body;                     // Forall

  GuardRef guard;  // Atom
  SetExprPtr arg;  // Atom: intersection of variables and parameter literals

  static TipPtr make_conj(std::vector<TipPtr> kids);
  static TipPtr make_forall(std::vector<TipBinder> binders, TipPtr body);
  static TipPtr make_atom(GuardRef guard, SetExprPtr arg);

  std::string str() const;
};

// Parses the concrete syntax above, resolving threshold and parameter
// names against `spec` (quantified variables shadow nothing; name clashes
// with parameters are rejected). Throws ParseError/TipError on bad input.
TipPtr parse_tip(const std::string& text, const ProtocolSpec& spec);

// Flattens a formula into quantified atoms: conjunctions are split,
// quantifiers are distributed over the conjuncts they scope, and binders
// whose variable does not occur in an atom's body are removed (sound here
// because guard feasibility is a standing well-formedness gate: every
// guarded sort is inhabited). The result contains only Forall-over-Atom or
// bare Atom formulas.
std::vector<TipPtr> decompose_to_atoms(const TipPtr& f,
                                       const ProtocolSpec& spec);

}  // namespace tipforge
