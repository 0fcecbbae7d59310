#include <algorithm>
#include <set>
#include <sstream>

#include "lexer_internal.hpp"
#include "tipforge/tip.hpp"

namespace tipforge {

std::string GuardRef::str() const {
  switch (kind) {
    case Kind::Thresh: return "g[" + thresh_name + "]";
    case Kind::One: return "nonempty";
    case Kind::All: return "universal";
  }
  return "?";
}

TipPtr TipFormula::make_conj(std::vector<TipPtr> kids) {
  if (kids.size() == 1) return kids.front();
  auto f = std::make_shared<TipFormula>();
  f->kind = TipKind::Conj;
  f->kids = std::move(kids);
  return f;
}

TipPtr TipFormula::make_forall(std::vector<TipBinder> binders, TipPtr body) {
  if (binders.empty()) return body;
  auto f = std::make_shared<TipFormula>();
  f->kind = TipKind::Forall;
  f->binders = std::move(binders);
  f->body = std::move(body);
  return f;
}

TipPtr TipFormula::make_atom(GuardRef guard, SetExprPtr arg) {
  auto f = std::make_shared<TipFormula>();
  f->kind = TipKind::Atom;
  f->guard = std::move(guard);
  f->arg = std::move(arg);
  return f;
}

namespace {

std::string render_body_set(const SetExprPtr& e) {
  switch (e->op) {
    case SetOp::Param:
      return e->param;
    case SetOp::Empty:
      return "empty";
    case SetOp::Universe:
      return "universe";
    case SetOp::Complement: {
      const auto& k = e->kids[0];
      bool simple = k->op == SetOp::Param || k->op == SetOp::Empty ||
                    k->op == SetOp::Universe;
      return "~" + (simple ? render_body_set(k)
                           : "(" + render_body_set(k) + ")");
    }
    case SetOp::Intersect:
    case SetOp::Union: {
      std::string sep = e->op == SetOp::Intersect ? " & " : " + ";
      std::string out;
      for (size_t i = 0; i < e->kids.size(); ++i) {
        if (i) out += sep;
        const auto& k = e->kids[i];
        bool nested = k->op == SetOp::Intersect || k->op == SetOp::Union;
        out += nested ? "(" + render_body_set(k) + ")" : render_body_set(k);
      }
      return out;
    }
  }
  return "?";
}

}  // namespace

std::string TipFormula::str() const {
  switch (kind) {
    case TipKind::Conj: {
      std::string out;
      for (size_t i = 0; i < kids.size(); ++i) {
        if (i) out += " && ";
        out += "(" + kids[i]->str() + ")";
      }
      return out;
    }
    case TipKind::Forall: {
      std::string out = "forall ";
      for (size_t i = 0; i < binders.size(); ++i) {
        if (i) out += ", ";
        out += binders[i].var + ":g[" + binders[i].thresh_name + "]";
      }
      out += ". ";
      if (body->kind == TipKind::Conj)
        out += "(" + body->str() + ")";
      else
        out += body->str();
      return out;
    }
    case TipKind::Atom:
      return guard.str() + "(" + render_body_set(arg) + ")";
  }
  return "?";
}

namespace {

using internal::Tok;
using internal::Token;
using internal::TokenCursor;

class TipParser : public TokenCursor {
 public:
  TipParser(std::vector<Token> toks, const ProtocolSpec& spec)
      : TokenCursor(std::move(toks), "<formula>"), spec_(spec) {}

  TipPtr run() {
    TipPtr f = parse_formula();
    if (!at(Tok::End)) fail("unexpected trailing input");
    return f;
  }

 private:
  TipPtr parse_formula() {
    std::vector<TipPtr> parts{parse_unit()};
    while (try_eat(Tok::AmpAmp)) parts.push_back(parse_unit());
    return TipFormula::make_conj(std::move(parts));
  }

  TipPtr parse_unit() {
    if (at(Tok::Ident) && cur().text == "forall") {
      advance();
      std::vector<TipBinder> binders;
      do {
        std::string var = expect(Tok::Ident, "variable name").text;
        if (spec_.has_set_param(var) || spec_.has_int_param(var))
          fail("variable '" + var + "' shadows a parameter");
        for (const auto& b : bound_)
          if (b == var) fail("variable '" + var + "' bound twice");
        for (const auto& b : binders)
          if (b.var == var) fail("variable '" + var + "' bound twice");
        expect(Tok::Colon, "':'");
        GuardRef g = parse_guard_ref();
        if (g.kind != GuardRef::Kind::Thresh)
          fail("quantifier guards must be named thresholds");
        binders.push_back({var, g.thresh_name});
      } while (try_eat(Tok::Comma));
      expect(Tok::Dot, "'.'");
      for (const auto& b : binders) bound_.push_back(b.var);
      TipPtr body = parse_unit();
      bound_.resize(bound_.size() - binders.size());
      return TipFormula::make_forall(std::move(binders), std::move(body));
    }
    if (try_eat(Tok::LParen)) {
      TipPtr f = parse_formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    GuardRef g = parse_guard_ref();
    expect(Tok::LParen, "'('");
    SetExprPtr arg = parse_set_expr();
    expect(Tok::RParen, "')'");
    return TipFormula::make_atom(std::move(g), std::move(arg));
  }

  GuardRef parse_guard_ref() {
    const Token& id = expect(Tok::Ident, "a guard");
    if (id.text == "nonempty") return GuardRef::one();
    if (id.text == "universal") return GuardRef::all();
    if (id.text == "g") {
      expect(Tok::LBracket, "'['");
      std::string name = expect(Tok::Ident, "threshold name").text;
      if (spec_.threshold_index(name) < 0)
        fail("unknown threshold '" + name + "'");
      expect(Tok::RBracket, "']'");
      return GuardRef::thresh(std::move(name));
    }
    fail("expected g[...], nonempty, or universal");
  }

  SetExprPtr parse_set_expr() {
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
      if (id == "empty") {
        advance();
        e = SetExpr::make_empty();
      } else if (id == "universe") {
        advance();
        e = SetExpr::make_universe();
      } else {
        bool is_bound =
            std::find(bound_.begin(), bound_.end(), id) != bound_.end();
        if (!is_bound && !spec_.has_set_param(id))
          fail("unknown set '" + id + "'");
        e = SetExpr::make_param(advance().text);
      }
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

  const ProtocolSpec& spec_;
  std::vector<std::string> bound_;
};

void collect_used_names(const SetExprPtr& e, std::set<std::string>& out) {
  if (e->op == SetOp::Param) {
    out.insert(e->param);
    return;
  }
  for (const auto& k : e->kids) collect_used_names(k, out);
}

void decompose_rec(const TipPtr& f, std::vector<TipBinder>& prefix,
                   std::vector<TipPtr>& out) {
  switch (f->kind) {
    case TipKind::Conj:
      for (const auto& k : f->kids) decompose_rec(k, prefix, out);
      break;
    case TipKind::Forall: {
      for (const auto& b : f->binders) prefix.push_back(b);
      decompose_rec(f->body, prefix, out);
      prefix.resize(prefix.size() - f->binders.size());
      break;
    }
    case TipKind::Atom: {
      std::set<std::string> used;
      collect_used_names(f->arg, used);
      std::vector<TipBinder> kept;
      for (const auto& b : prefix)
        if (used.count(b.var)) kept.push_back(b);
      out.push_back(TipFormula::make_forall(std::move(kept), f));
      break;
    }
  }
}

}  // namespace

TipPtr parse_tip(const std::string& text, const ProtocolSpec& spec) {
  internal::Lexer lex(text, "<formula>");
  std::vector<Token> toks;
  for (auto& t : lex.run())
    if (t.kind != Tok::Newline) toks.push_back(std::move(t));
  TipParser parser(std::move(toks), spec);
  return parser.run();
}

std::vector<TipPtr> decompose_to_atoms(const TipPtr& f,
                                       const ProtocolSpec& spec) {
  (void)spec;
  std::vector<TipPtr> out;
  std::vector<TipBinder> prefix;
  decompose_rec(f, prefix, out);
  return out;
}

}  // namespace tipforge
