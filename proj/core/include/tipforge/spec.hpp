// Protocol specification model: set parameters, set expressions, the
// assumption formula over parameters (resilience condition), named
// thresholds, and the container tying them together.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tipforge/threshold.hpp"

namespace tipforge {

// ---------------------------------------------------------------------------
// Set expressions over the finite node domain.

enum class SetOp { Param, Complement, Intersect, Union, Empty, Universe };

struct SetExpr;
using SetExprPtr = std::shared_ptr<const SetExpr>;

struct SetExpr {
  SetOp op;
  std::string param;            // Param only
  std::vector<SetExprPtr> kids; // Complement: 1; Intersect/Union: >= 2

  static SetExprPtr make_param(std::string name);
  static SetExprPtr make_complement(SetExprPtr e);
  static SetExprPtr make_intersect(std::vector<SetExprPtr> es);
  static SetExprPtr make_union(std::vector<SetExprPtr> es);
  static SetExprPtr make_empty();
  static SetExprPtr make_universe();

  std::string str() const;
};

// ---------------------------------------------------------------------------
// Assumption formulas (conjunctions, disjunctions, negations over
// arithmetic comparisons, cardinality comparisons, and set equalities).

enum class CmpOp { Le, Lt, Ge, Gt, Eq, Ne };

struct GammaFormula;
using GammaPtr = std::shared_ptr<const GammaFormula>;

enum class GammaKind { And, Or, Not, LinCmp, CardCmp, SetEq };

struct GammaFormula {
  GammaKind kind;

  std::vector<GammaPtr> kids;  // And / Or (>=1), Not (1)

  // LinCmp: lhs op rhs over integer parameters.
  LinTerm lhs, rhs;
  CmpOp op{CmpOp::Le};

  // CardCmp: multiplier * |set| op rhs.
  Int multiplier{1};
  SetExprPtr set;

  // SetEq: set == set2 (as sets).
  SetExprPtr set2;

  static GammaPtr make_and(std::vector<GammaPtr> kids);
  static GammaPtr make_or(std::vector<GammaPtr> kids);
  static GammaPtr make_not(GammaPtr k);
  static GammaPtr make_lin_cmp(LinTerm lhs, CmpOp op, LinTerm rhs);
  static GammaPtr make_card_cmp(Int mult, SetExprPtr set, CmpOp op,
                                LinTerm rhs);
  static GammaPtr make_set_eq(SetExprPtr a, SetExprPtr b);

  std::string str() const;
};

// ---------------------------------------------------------------------------
// Protocol specification.

struct ProtocolSpec {
  std::string name;
  // Integer parameters other than the reserved domain size "n".
  std::vector<std::string> int_params;
  // Named set parameters, in declaration order.
  std::vector<std::string> set_params;
  // Assumption (conjunction); may be null for "true".
  GammaPtr gamma;
  // Named thresholds, in declaration order. Names are unique and canonical
  // values are pairwise distinct (checked by the parser/validator).
  std::vector<Threshold> thresholds;

  bool has_set_param(const std::string& s) const;
  bool has_int_param(const std::string& s) const;
  const Threshold& threshold_by_name(const std::string& s) const;
  int threshold_index(const std::string& s) const;  // -1 if absent

  // Stable content digest (FNV-1a over a canonical rendering), hex string.
  std::string digest() const;

  // Validates basic well-formedness; throws TipError on violation.
  void validate() const;
};

}  // namespace tipforge
