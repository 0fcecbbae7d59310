#include "tipforge/tipspec_parser.hpp"

#include <fstream>
#include <sstream>

#include "lexer_internal.hpp"
#include "tipforge/guard_norm.hpp"

namespace tipforge {

ParseError::ParseError(const std::string& msg, int line, int col)
    : TipError(msg + " (line " + std::to_string(line) + ", column " +
               std::to_string(col) + ")"),
      line_(line),
      col_(col) {}

namespace {

using internal::Tok;
using internal::Token;
using internal::TokenCursor;

class Parser : public TokenCursor {
 public:
  using TokenCursor::TokenCursor;

  ProtocolSpec run() {
    ProtocolSpec spec;
    std::vector<GammaPtr> assumptions;
    skip_newlines();
    while (!at(Tok::End)) {
      const Token head = expect(Tok::Ident, "directive");
      if (head.text == "spec") {
        spec.name = expect(Tok::Ident, "spec name").text;
      } else if (head.text == "int") {
        do {
          spec.int_params.push_back(expect(Tok::Ident, "parameter name").text);
        } while (!at_statement_end());
      } else if (head.text == "set") {
        do {
          spec.set_params.push_back(expect(Tok::Ident, "parameter name").text);
        } while (!at_statement_end());
      } else if (head.text == "assume") {
        assumptions.push_back(parse_formula());
      } else if (head.text == "threshold") {
        std::string name = expect(Tok::Ident, "threshold name").text;
        bool strict;
        if (try_eat(Tok::Eq) || try_eat(Tok::Ge)) {
          strict = false;
        } else if (try_eat(Tok::Gt)) {
          strict = true;
        } else {
          fail("expected '=', '>=' or '>' after threshold name");
        }
        LinTerm value = parse_lin_expr();
        NormalizedGuard g = normalize_cardinality_guard(
            strict ? CmpOp::Gt : CmpOp::Ge, value, Int(1));
        spec.thresholds.emplace_back(name, g.numerator, g.divisor);
      } else {
        fail("unknown directive '" + head.text + "'");
      }
      end_statement();
    }
    if (!assumptions.empty())
      spec.gamma = GammaFormula::make_and(std::move(assumptions));
    try {
      spec.validate();
    } catch (const TipError& e) {
      throw ParseError(std::string(e.what()) + " in " + origin_, 1, 1);
    }
    return spec;
  }

 private:
  bool at_statement_end() const { return at(Tok::Newline) || at(Tok::End); }
  void end_statement() {
    if (!at_statement_end()) fail("expected end of line");
    skip_newlines();
  }

  // --- linear expressions -------------------------------------------------
  LinTerm parse_lin_expr() {
    bool negate = try_eat(Tok::Minus);
    LinTerm acc = parse_lin_factor();
    if (negate) acc *= Rat(-1);
    for (;;) {
      if (try_eat(Tok::Plus)) acc += parse_lin_factor();
      else if (try_eat(Tok::Minus)) acc -= parse_lin_factor();
      else break;
    }
    return acc;
  }

  LinTerm parse_lin_factor() {
    LinTerm t;
    if (at(Tok::Number)) {
      Rat k(advance().text);
      if (try_eat(Tok::Star)) {
        t = LinTerm::var(expect(Tok::Ident, "parameter name").text, k);
      } else if (at(Tok::Ident)) {
        // Coefficient juxtaposition: 3t.
        t = LinTerm::var(advance().text, k);
      } else {
        t = LinTerm(k);
      }
    } else if (at(Tok::Ident)) {
      t = LinTerm::var(advance().text);
    } else if (try_eat(Tok::LParen)) {
      t = parse_lin_expr();
      expect(Tok::RParen, "')'");
    } else {
      fail("expected a linear expression");
    }
    while (try_eat(Tok::Slash)) {
      Int d(expect(Tok::Number, "integer divisor").text);
      if (d == 0) fail("division by zero");
      t *= Rat(Int(1), d);
    }
    return t;
  }

  // --- set expressions ------------------------------------------------------
  SetExprPtr parse_set_expr() { return parse_set_union(); }

  SetExprPtr parse_set_union() {
    std::vector<SetExprPtr> parts{parse_set_intersect()};
    while (try_eat(Tok::Plus)) parts.push_back(parse_set_intersect());
    return SetExpr::make_union(std::move(parts));
  }

  SetExprPtr parse_set_intersect() {
    std::vector<SetExprPtr> parts{parse_set_primary()};
    while (try_eat(Tok::Amp)) parts.push_back(parse_set_primary());
    return SetExpr::make_intersect(std::move(parts));
  }

  SetExprPtr parse_set_primary() {
    SetExprPtr e;
    if (try_eat(Tok::Tilde)) {
      e = SetExpr::make_complement(parse_set_primary());
    } else if (try_eat(Tok::LParen)) {
      e = parse_set_expr();
      expect(Tok::RParen, "')'");
    } else if (at(Tok::Ident)) {
      const std::string& id = cur().text;
      if (id == "empty") { advance(); e = SetExpr::make_empty(); }
      else if (id == "universe") { advance(); e = SetExpr::make_universe(); }
      else e = SetExpr::make_param(advance().text);
    } else {
      fail("expected a set expression");
    }
    while (at(Tok::Caret)) {
      advance();
      const Token c = expect(Tok::Ident, "'c' after '^'");
      if (c.text != "c") fail("expected 'c' after '^'");
      e = SetExpr::make_complement(e);
    }
    return e;
  }

  // --- assumption formulas ----------------------------------------------------
  GammaPtr parse_formula() { return parse_or(); }

  GammaPtr parse_or() {
    std::vector<GammaPtr> parts{parse_and()};
    while (at(Tok::Ident) && cur().text == "or") {
      advance();
      parts.push_back(parse_and());
    }
    return GammaFormula::make_or(std::move(parts));
  }

  GammaPtr parse_and() {
    std::vector<GammaPtr> parts{parse_unary()};
    while (at(Tok::Ident) && cur().text == "and") {
      advance();
      parts.push_back(parse_unary());
    }
    return GammaFormula::make_and(std::move(parts));
  }

  GammaPtr parse_unary() {
    if (at(Tok::Ident) && cur().text == "not") {
      advance();
      return GammaFormula::make_not(parse_unary());
    }
    return parse_atom();
  }

  CmpOp parse_cmp() {
    if (try_eat(Tok::Le)) return CmpOp::Le;
    if (try_eat(Tok::Lt)) return CmpOp::Lt;
    if (try_eat(Tok::Ge)) return CmpOp::Ge;
    if (try_eat(Tok::Gt)) return CmpOp::Gt;
    if (try_eat(Tok::Eq)) return CmpOp::Eq;
    if (try_eat(Tok::Ne)) return CmpOp::Ne;
    fail("expected a comparison operator");
  }

  GammaPtr parse_atom() {
    if (at(Tok::Ident) && cur().text == "disjoint") {
      advance();
      expect(Tok::LParen, "'('");
      std::vector<SetExprPtr> sets{parse_set_expr()};
      while (try_eat(Tok::Comma)) sets.push_back(parse_set_expr());
      expect(Tok::RParen, "')'");
      if (sets.size() < 2) fail("disjoint() needs at least two sets");
      std::vector<GammaPtr> pairs;
      for (size_t i = 0; i < sets.size(); ++i)
        for (size_t j = i + 1; j < sets.size(); ++j)
          pairs.push_back(GammaFormula::make_set_eq(
              SetExpr::make_intersect({sets[i], sets[j]}),
              SetExpr::make_empty()));
      return GammaFormula::make_and(std::move(pairs));
    }

    // Attempt a set equality first (setexpr == setexpr); backtrack when the
    // left side is not followed by '=='.
    {
      size_t mark = save();
      try {
        SetExprPtr a = parse_set_expr();
        if (try_eat(Tok::EqEq)) {
          SetExprPtr b = parse_set_expr();
          return GammaFormula::make_set_eq(std::move(a), std::move(b));
        }
      } catch (const ParseError&) {
      }
      restore(mark);
    }

    {
      size_t mark = save();
      try {
        return parse_comparison();
      } catch (const ParseError&) {
        restore(mark);
      }
    }

    if (try_eat(Tok::LParen)) {
      GammaPtr inner = parse_formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail("expected an assumption atom");
  }

  GammaPtr parse_comparison() {
    // Optional multiplier before a cardinality atom.
    Int mult(1);
    size_t mark = save();
    if (at(Tok::Number)) {
      Token num = advance();
      if (try_eat(Tok::Star) &&
          (at(Tok::Bar) || (at(Tok::Ident) && cur().text == "card"))) {
        mult = Int(num.text);
      } else {
        restore(mark);
      }
    }
    if (at(Tok::Bar) || (at(Tok::Ident) && cur().text == "card")) {
      SetExprPtr s;
      if (try_eat(Tok::Bar)) {
        s = parse_set_expr();
        expect(Tok::Bar, "closing '|'");
      } else {
        advance();  // card
        expect(Tok::LParen, "'('");
        s = parse_set_expr();
        expect(Tok::RParen, "')'");
      }
      CmpOp op = parse_cmp();
      LinTerm rhs = parse_lin_expr();
      return GammaFormula::make_card_cmp(mult, std::move(s), op,
                                         std::move(rhs));
    }
    LinTerm lhs = parse_lin_expr();
    CmpOp op = parse_cmp();
    LinTerm rhs = parse_lin_expr();
    return GammaFormula::make_lin_cmp(std::move(lhs), op, std::move(rhs));
  }
};

std::string render_lin(const LinTerm& t) {
  LinTerm copy = t;
  Int scale = copy.clear_denominators();
  if (scale == 1) return t.str();
  return "(" + copy.str() + ") / " + scale.get_str();
}

std::string render_set(const SetExprPtr& e) {
  switch (e->op) {
    case SetOp::Param:
      return e->param;
    case SetOp::Empty:
      return "empty";
    case SetOp::Universe:
      return "universe";
    case SetOp::Complement:
      return "~" + ((e->kids[0]->op == SetOp::Param ||
                     e->kids[0]->op == SetOp::Empty ||
                     e->kids[0]->op == SetOp::Universe)
                        ? render_set(e->kids[0])
                        : "(" + render_set(e->kids[0]) + ")");
    case SetOp::Intersect:
    case SetOp::Union: {
      std::string sep = e->op == SetOp::Intersect ? " & " : " + ";
      std::string out = "(";
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) out += sep;
        out += render_set(e->kids[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

std::string render_cmp_op(CmpOp op) {
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

std::string render_assume(const GammaPtr& g) {
  switch (g->kind) {
    case GammaKind::And:
    case GammaKind::Or: {
      std::string sep = g->kind == GammaKind::And ? " and " : " or ";
      std::string out;
      for (size_t i = 0; i < g->kids.size(); ++i) {
        if (i) out += sep;
        bool paren = g->kids[i]->kind == GammaKind::And ||
                     g->kids[i]->kind == GammaKind::Or;
        out += paren ? "(" + render_assume(g->kids[i]) + ")"
                     : render_assume(g->kids[i]);
      }
      return out;
    }
    case GammaKind::Not:
      return "not (" + render_assume(g->kids[0]) + ")";
    case GammaKind::LinCmp:
      return render_lin(g->lhs) + " " + render_cmp_op(g->op) + " " +
             render_lin(g->rhs);
    case GammaKind::CardCmp: {
      std::string out;
      if (g->multiplier != 1) out += g->multiplier.get_str() + "*";
      out += "|" + render_set(g->set) + "| " + render_cmp_op(g->op) + " " +
             render_lin(g->rhs);
      return out;
    }
    case GammaKind::SetEq:
      return render_set(g->set) + " == " + render_set(g->set2);
  }
  return "?";
}

}  // namespace

ProtocolSpec parse_tipspec(const std::string& text,
                           const std::string& origin) {
  internal::Lexer lex(text, origin);
  Parser parser(lex.run(), origin);
  return parser.run();
}

ProtocolSpec load_tipspec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TipError("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tipspec(buf.str(), path);
}

std::string render_tipspec(const ProtocolSpec& spec) {
  std::ostringstream os;
  os << "spec " << spec.name << "\n";
  if (!spec.int_params.empty()) {
    os << "int";
    for (const auto& p : spec.int_params) os << " " << p;
    os << "\n";
  }
  if (!spec.set_params.empty()) {
    os << "set";
    for (const auto& p : spec.set_params) os << " " << p;
    os << "\n";
  }
  std::vector<GammaPtr> conjuncts;
  if (spec.gamma) {
    if (spec.gamma->kind == GammaKind::And)
      conjuncts = spec.gamma->kids;
    else
      conjuncts = {spec.gamma};
  }
  for (const auto& g : conjuncts) os << "assume " << render_assume(g) << "\n";
  for (const auto& t : spec.thresholds) {
    os << "threshold " << t.name() << " = ";
    if (t.divisor() == 1)
      os << render_lin(t.numerator());
    else
      os << "(" << t.numerator().str() << ") / " << t.divisor().get_str();
    os << "\n";
  }
  return os.str();
}

}  // namespace tipforge
