#include "tipforge/emit.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tipforge/fo_translate.hpp"
#include "tipforge/fol.hpp"
#include "tipforge/numeric.hpp"

namespace tipforge {

namespace {

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

// Collects the sorts and relation symbols that actually occur in `formulas`.
struct UsedSymbols {
  std::set<std::string> sorts;
  std::set<std::string> relations;
};

void collect_used(const FoPtr& f, const FoVocabulary& vocab, UsedSymbols* out) {
  switch (f->kind) {
    case FoKind::True:
    case FoKind::False:
      return;
    case FoKind::Atom: {
      out->relations.insert(f->rel);
      auto it = vocab.relations.find(f->rel);
      if (it != vocab.relations.end())
        for (const auto& s : it->second) out->sorts.insert(s);
      return;
    }
    case FoKind::Eq:
      for (const auto& t : f->terms) out->sorts.insert(t.sort);
      return;
    case FoKind::Forall:
    case FoKind::Exists:
      out->sorts.insert(f->var_sort);
      collect_used(f->kids[0], vocab, out);
      return;
    default:
      for (const auto& k : f->kids) collect_used(k, vocab, out);
      return;
  }
}

// Declaration order: the node sort first, then threshold sorts in spec
// declaration order; membership relations for thresholds first (spec order),
// then for set parameters (spec order).  Only symbols in `used` survive.
struct Declarations {
  std::vector<std::string> sorts;
  std::vector<std::string> relations;  // names; signatures via vocab
};

Declarations plan_declarations(const ProtocolSpec& spec,
                               const UsedSymbols& used) {
  Declarations d;
  d.sorts.push_back("node");
  for (const auto& t : spec.thresholds) {
    const std::string qs = threshold_sort_name(t.name());
    if (used.sorts.count(qs)) d.sorts.push_back(qs);
  }
  for (const auto& t : spec.thresholds) {
    const std::string rel = member_relation_name(t.name());
    if (used.relations.count(rel)) d.relations.push_back(rel);
  }
  for (const auto& p : spec.set_params) {
    const std::string rel = member_relation_name(p);
    if (used.relations.count(rel)) d.relations.push_back(rel);
  }
  // Defensive: any used symbol outside the plan would silently vanish from
  // the declarations, so surface it instead.
  for (const auto& s : used.sorts)
    if (std::find(d.sorts.begin(), d.sorts.end(), s) == d.sorts.end())
      throw TipError("cannot emit axioms: unknown sort " + s);
  for (const auto& r : used.relations)
    if (std::find(d.relations.begin(), d.relations.end(), r) ==
        d.relations.end())
      throw TipError("cannot emit axioms: unknown relation " + r);
  return d;
}

void check_syntactically_acyclic(const std::vector<SimpleFormula>& delta) {
  for (const auto& f : delta) {
    if (f.head.kind != AtomicGuard::Kind::Thresh) continue;
    if (std::find(f.quants.begin(), f.quants.end(), f.head.thresh) !=
        f.quants.end())
      throw TipError(
          "cannot emit axioms: formula's head guard names one of its own "
          "quantifier guards (run the cyclic-formula filter first)");
  }
}

// ---------------------------------------------------------------------------
// SMT-LIB2
// ---------------------------------------------------------------------------

std::string smt_term(const FoTerm& t) {
  if (t.kind != FoTermKind::App) return t.name;
  std::string out = "(" + t.name;
  for (const auto& a : t.args) out += " " + smt_term(a);
  return out + ")";
}

std::string smt_formula(const FoPtr& f) {
  switch (f->kind) {
    case FoKind::True:
      return "true";
    case FoKind::False:
      return "false";
    case FoKind::Atom: {
      if (f->terms.empty()) return f->rel;
      std::string out = "(" + f->rel;
      for (const auto& t : f->terms) out += " " + smt_term(t);
      return out + ")";
    }
    case FoKind::Eq:
      return "(= " + smt_term(f->terms[0]) + " " + smt_term(f->terms[1]) + ")";
    case FoKind::Not:
      return "(not " + smt_formula(f->kids[0]) + ")";
    case FoKind::And:
    case FoKind::Or: {
      std::string out = f->kind == FoKind::And ? "(and" : "(or";
      for (const auto& k : f->kids) out += " " + smt_formula(k);
      return out + ")";
    }
    case FoKind::Implies:
      return "(=> " + smt_formula(f->kids[0]) + " " + smt_formula(f->kids[1]) +
             ")";
    case FoKind::Forall:
    case FoKind::Exists: {
      // Collapse a run of same-kind quantifiers into one binder list.
      const FoKind kind = f->kind;
      std::string binders;
      const FoFormula* cur = f.get();
      FoPtr body;
      while (true) {
        binders += "(" + cur->var + " " + cur->var_sort + ")";
        body = cur->kids[0];
        if (body->kind != kind) break;
        binders += " ";
        cur = body.get();
      }
      return std::string(kind == FoKind::Forall ? "(forall (" : "(exists (") +
             binders + ") " + smt_formula(body) + ")";
    }
  }
  throw TipError("unreachable formula kind");
}

std::string emit_smtlib2(const std::vector<FoPtr>& axioms, size_t main_count,
                         const Declarations& d, const FoVocabulary& vocab) {
  std::ostringstream out;
  out << "(set-logic UF)\n";
  for (const auto& s : d.sorts) out << "(declare-sort " << s << " 0)\n";
  for (const auto& r : d.relations) {
    out << "(declare-fun " << r << " (";
    const auto& args = vocab.relations.at(r);
    for (size_t i = 0; i < args.size(); ++i)
      out << (i ? " " : "") << args[i];
    out << ") Bool)\n";
  }
  for (size_t i = 0; i < axioms.size(); ++i) {
    if (i == main_count) out << "; guard inclusion facts\n";
    out << "(assert " << smt_formula(axioms[i]) << ")\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Ivy-style
// ---------------------------------------------------------------------------

std::string ivy_sort(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string ivy_var(const std::string& v) {
  std::string out = v;
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(out[0]));
  return out;
}

std::string ivy_term(const FoTerm& t) {
  switch (t.kind) {
    case FoTermKind::Var:
      return ivy_var(t.name);
    case FoTermKind::Const:
      return t.name;
    case FoTermKind::App: {
      std::string out = t.name + "(";
      for (size_t i = 0; i < t.args.size(); ++i)
        out += (i ? ", " : "") + ivy_term(t.args[i]);
      return out + ")";
    }
  }
  throw TipError("unreachable term kind");
}

bool ivy_atomic(const FoPtr& f) {
  return f->kind == FoKind::True || f->kind == FoKind::False ||
         f->kind == FoKind::Atom || f->kind == FoKind::Eq ||
         f->kind == FoKind::Not;
}

std::string ivy_formula(const FoPtr& f) {
  switch (f->kind) {
    case FoKind::True:
      return "true";
    case FoKind::False:
      return "false";
    case FoKind::Atom: {
      if (f->terms.empty()) return f->rel;
      std::string out = f->rel + "(";
      for (size_t i = 0; i < f->terms.size(); ++i)
        out += (i ? ", " : "") + ivy_term(f->terms[i]);
      return out + ")";
    }
    case FoKind::Eq:
      return ivy_term(f->terms[0]) + " = " + ivy_term(f->terms[1]);
    case FoKind::Not: {
      const FoPtr& k = f->kids[0];
      if (k->kind == FoKind::Eq)
        return ivy_term(k->terms[0]) + " ~= " + ivy_term(k->terms[1]);
      return ivy_atomic(k) ? "~" + ivy_formula(k)
                           : "~(" + ivy_formula(k) + ")";
    }
    case FoKind::And:
    case FoKind::Or: {
      const char* op = f->kind == FoKind::And ? " & " : " | ";
      std::string out;
      for (size_t i = 0; i < f->kids.size(); ++i) {
        const FoPtr& k = f->kids[i];
        std::string part =
            ivy_atomic(k) ? ivy_formula(k) : "(" + ivy_formula(k) + ")";
        out += (i ? op : "") + part;
      }
      return out;
    }
    case FoKind::Implies: {
      const FoPtr& a = f->kids[0];
      const FoPtr& b = f->kids[1];
      std::string lhs =
          ivy_atomic(a) ? ivy_formula(a) : "(" + ivy_formula(a) + ")";
      std::string rhs =
          ivy_atomic(b) ? ivy_formula(b) : "(" + ivy_formula(b) + ")";
      return lhs + " -> " + rhs;
    }
    case FoKind::Forall:
    case FoKind::Exists: {
      const FoKind kind = f->kind;
      std::string binders;
      const FoFormula* cur = f.get();
      FoPtr body;
      while (true) {
        if (!binders.empty()) binders += ", ";
        binders += ivy_var(cur->var) + ":" + ivy_sort(cur->var_sort);
        body = cur->kids[0];
        if (body->kind != kind) break;
        cur = body.get();
      }
      return std::string(kind == FoKind::Forall ? "forall " : "exists ") +
             binders + ". " + ivy_formula(body);
    }
  }
  throw TipError("unreachable formula kind");
}

std::string emit_ivy(const std::vector<FoPtr>& axioms, size_t main_count,
                     const Declarations& d, const FoVocabulary& vocab) {
  std::ostringstream out;
  out << "# threshold axioms (" << main_count << " main";
  if (axioms.size() > main_count)
    out << " + " << axioms.size() - main_count << " guard inclusion facts";
  out << ")\n";
  for (const auto& s : d.sorts) out << "type " << ivy_sort(s) << "\n";
  for (const auto& r : d.relations) {
    const auto& args = vocab.relations.at(r);
    out << "relation " << r << "(";
    for (size_t i = 0; i < args.size(); ++i) {
      out << (i ? ", " : "") << "X" << i << ":" << ivy_sort(args[i]);
    }
    out << ")\n";
  }
  for (size_t i = 0; i < axioms.size(); ++i) {
    if (i == main_count) out << "# guard inclusion facts\n";
    out << "axiom " << ivy_formula(axioms[i]) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Plain text
// ---------------------------------------------------------------------------

std::string emit_text(const std::vector<SimpleFormula>& all, size_t main_count,
                      const ProtocolSpec& spec) {
  std::ostringstream out;
  out << all.size() << " axiom" << (all.size() == 1 ? "" : "s") << " for "
      << spec.name << "\n";
  for (size_t i = 0; i < all.size(); ++i) {
    if (i == main_count) out << "-- guard inclusion facts --\n";
    const SimpleFormula& f = all[i];
    out << (i + 1) << ". " << f.str(spec);
    if (f.q() > 0) {
      // Annotate each binder with the sort it quantifies over.
      TipPtr tip = f.to_tip(spec);
      out << "   # ";
      for (size_t b = 0; b < tip->binders.size(); ++b) {
        if (b) out << ", ";
        out << tip->binders[b].var << ": "
            << threshold_sort_name(tip->binders[b].thresh_name);
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

AxiomFormat parse_axiom_format(const std::string& token) {
  if (token == "smtlib2") return AxiomFormat::Smtlib2;
  if (token == "ivy" || token == "ivy-style") return AxiomFormat::IvyStyle;
  if (token == "text") return AxiomFormat::Text;
  throw TipError("unsupported axiom format: " + token +
                 " (expected smtlib2, ivy, or text)");
}

std::string axiom_format_name(AxiomFormat format) {
  switch (format) {
    case AxiomFormat::Smtlib2:
      return "smtlib2";
    case AxiomFormat::IvyStyle:
      return "ivy";
    case AxiomFormat::Text:
      return "text";
  }
  throw TipError("unreachable axiom format");
}

std::string emit_axioms(const std::vector<SimpleFormula>& delta,
                        const ProtocolSpec& spec, AxiomFormat format,
                        bool with_subsumption_facts, bool allow_cyclic) {
  if (!allow_cyclic) check_syntactically_acyclic(delta);
  std::vector<SimpleFormula> all = delta;
  const size_t main_count = delta.size();
  if (with_subsumption_facts) {
    for (auto& fact : subsumption_fact_formulas(spec)) all.push_back(fact);
  }
  if (format == AxiomFormat::Text) return emit_text(all, main_count, spec);

  const FoVocabulary vocab = fo_vocab(spec);
  std::vector<FoPtr> axioms;
  UsedSymbols used;
  for (const auto& f : all) {
    FoPtr fo = fo_translate(f, spec);
    collect_used(fo, vocab, &used);
    axioms.push_back(std::move(fo));
  }
  const Declarations d = plan_declarations(spec, used);
  return format == AxiomFormat::Smtlib2
             ? emit_smtlib2(axioms, main_count, d, vocab)
             : emit_ivy(axioms, main_count, d, vocab);
}

}  // namespace tipforge
