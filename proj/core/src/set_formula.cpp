#include <sstream>

#include "tipforge/spec.hpp"

namespace tipforge {

SetExprPtr SetExpr::make_param(std::string name) {
  auto e = std::make_shared<SetExpr>();
  e->op = SetOp::Param;
  e->param = std::move(name);
  return e;
}

SetExprPtr SetExpr::make_complement(SetExprPtr k) {
  auto e = std::make_shared<SetExpr>();
  e->op = SetOp::Complement;
  e->kids.push_back(std::move(k));
  return e;
}

SetExprPtr SetExpr::make_intersect(std::vector<SetExprPtr> es) {
  if (es.size() == 1) return es.front();
  auto e = std::make_shared<SetExpr>();
  e->op = SetOp::Intersect;
  e->kids = std::move(es);
  return e;
}

SetExprPtr SetExpr::make_union(std::vector<SetExprPtr> es) {
  if (es.size() == 1) return es.front();
  auto e = std::make_shared<SetExpr>();
  e->op = SetOp::Union;
  e->kids = std::move(es);
  return e;
}

SetExprPtr SetExpr::make_empty() {
  auto e = std::make_shared<SetExpr>();
  e->op = SetOp::Empty;
  return e;
}

SetExprPtr SetExpr::make_universe() {
  auto e = std::make_shared<SetExpr>();
  e->op = SetOp::Universe;
  return e;
}

std::string SetExpr::str() const {
  switch (op) {
    case SetOp::Param:
      return param;
    case SetOp::Complement:
      return kids[0]->str() + "^c";
    case SetOp::Empty:
      return "empty";
    case SetOp::Universe:
      return "universe";
    case SetOp::Intersect:
    case SetOp::Union: {
      std::ostringstream os;
      os << "(";
      for (size_t i = 0; i < kids.size(); ++i) {
        if (i) os << (op == SetOp::Intersect ? " & " : " | ");
        os << kids[i]->str();
      }
      os << ")";
      return os.str();
    }
  }
  return "?";
}

GammaPtr GammaFormula::make_and(std::vector<GammaPtr> kids) {
  if (kids.size() == 1) return kids.front();
  auto g = std::make_shared<GammaFormula>();
  g->kind = GammaKind::And;
  g->kids = std::move(kids);
  return g;
}

GammaPtr GammaFormula::make_or(std::vector<GammaPtr> kids) {
  if (kids.size() == 1) return kids.front();
  auto g = std::make_shared<GammaFormula>();
  g->kind = GammaKind::Or;
  g->kids = std::move(kids);
  return g;
}

GammaPtr GammaFormula::make_not(GammaPtr k) {
  auto g = std::make_shared<GammaFormula>();
  g->kind = GammaKind::Not;
  g->kids.push_back(std::move(k));
  return g;
}

GammaPtr GammaFormula::make_lin_cmp(LinTerm lhs, CmpOp op, LinTerm rhs) {
  auto g = std::make_shared<GammaFormula>();
  g->kind = GammaKind::LinCmp;
  g->lhs = std::move(lhs);
  g->rhs = std::move(rhs);
  g->op = op;
  return g;
}

GammaPtr GammaFormula::make_card_cmp(Int mult, SetExprPtr set, CmpOp op,
                                     LinTerm rhs) {
  auto g = std::make_shared<GammaFormula>();
  g->kind = GammaKind::CardCmp;
  g->multiplier = std::move(mult);
  g->set = std::move(set);
  g->op = op;
  g->rhs = std::move(rhs);
  return g;
}

GammaPtr GammaFormula::make_set_eq(SetExprPtr a, SetExprPtr b) {
  auto g = std::make_shared<GammaFormula>();
  g->kind = GammaKind::SetEq;
  g->set = std::move(a);
  g->set2 = std::move(b);
  return g;
}

static const char* cmp_str(CmpOp op) {
  switch (op) {
    case CmpOp::Le: return "<=";
    case CmpOp::Lt: return "<";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

std::string GammaFormula::str() const {
  std::ostringstream os;
  switch (kind) {
    case GammaKind::And:
    case GammaKind::Or: {
      os << "(";
      for (size_t i = 0; i < kids.size(); ++i) {
        if (i) os << (kind == GammaKind::And ? " and " : " or ");
        os << kids[i]->str();
      }
      os << ")";
      break;
    }
    case GammaKind::Not:
      os << "not " << kids[0]->str();
      break;
    case GammaKind::LinCmp:
      os << lhs.str() << " " << cmp_str(op) << " " << rhs.str();
      break;
    case GammaKind::CardCmp:
      if (multiplier != 1) os << multiplier.get_str() << "*";
      os << "|" << set->str() << "| " << cmp_str(op) << " " << rhs.str();
      break;
    case GammaKind::SetEq:
      os << set->str() << " == " << set2->str();
      break;
  }
  return os.str();
}

}  // namespace tipforge
