#include "random_gen.hpp"

#include <algorithm>

#include "tipforge/tip.hpp"

namespace tipforge::testing {

SimpleFormula random_simple(Rng& rng, const ProtocolSpec& spec, int max_q) {
  const int n_thresh = static_cast<int>(spec.thresholds.size());
  const int q = pick(rng, 0, max_q);
  static const char* kVars[] = {"x", "y", "z", "u", "v", "w"};

  std::string text;
  std::vector<std::string> body;  // variables and literals
  if (q > 0) {
    text += "forall ";
    for (int i = 0; i < q; ++i) {
      const Threshold& t = spec.thresholds[pick(rng, 0, n_thresh - 1)];
      if (i) text += ", ";
      text += std::string(kVars[i]) + ":g[" + t.name() + "]";
      body.push_back(kVars[i]);
    }
    text += ". ";
  }
  for (const std::string& p : spec.set_params) {
    int r = pick(rng, 0, 9);
    if (r < 3)
      body.push_back(p);
    else if (r < 6)
      body.push_back("~" + p);
  }
  if (body.empty()) {
    // Force a nonempty intersection body.
    const std::string& p = spec.set_params[pick(
        rng, 0, static_cast<int>(spec.set_params.size()) - 1)];
    body.push_back(chance(rng, 0.5) ? p : "~" + p);
  }
  std::string arg;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) arg += " & ";
    arg += body[i];
  }

  int head = pick(rng, 0, 9);
  if (head < 5) {
    const Threshold& t = spec.thresholds[pick(rng, 0, n_thresh - 1)];
    text += "g[" + t.name() + "](" + arg + ")";
  } else if (head < 8) {
    text += "nonempty(" + arg + ")";
  } else {
    text += "universal(" + arg + ")";
  }
  return classify_simple(parse_tip(text, spec), spec);
}

namespace {

SetExprPtr random_set(Rng& rng, const std::vector<std::string>& sets,
                      int depth) {
  int r = pick(rng, 0, depth > 0 ? 9 : 5);
  if (r <= 3)
    return SetExpr::make_param(sets[pick(
        rng, 0, static_cast<int>(sets.size()) - 1)]);
  if (r == 4) return SetExpr::make_empty();
  if (r == 5) return SetExpr::make_universe();
  if (r == 6) return SetExpr::make_complement(random_set(rng, sets, depth - 1));
  std::vector<SetExprPtr> kids;
  int k = pick(rng, 2, 3);
  for (int i = 0; i < k; ++i) kids.push_back(random_set(rng, sets, depth - 1));
  return r <= 8 ? SetExpr::make_intersect(std::move(kids))
                : SetExpr::make_union(std::move(kids));
}

LinTerm random_lin(Rng& rng, const std::vector<std::string>& ints) {
  LinTerm t(Rat(pick(rng, -4, 4)));
  for (const std::string& name : ints)
    if (chance(rng, 0.6)) t = t + LinTerm::var(name) * Rat(pick(rng, -3, 3));
  if (chance(rng, 0.4)) t = t + LinTerm::var("n") * Rat(pick(rng, -1, 1));
  return t;
}

CmpOp random_cmp(Rng& rng) {
  static const CmpOp ops[] = {CmpOp::Le, CmpOp::Lt, CmpOp::Ge,
                              CmpOp::Gt, CmpOp::Eq, CmpOp::Ne};
  return ops[pick(rng, 0, 5)];
}

GammaPtr random_gamma_rec(Rng& rng, const std::vector<std::string>& sets,
                          const std::vector<std::string>& ints, int depth) {
  int r = pick(rng, 0, depth > 0 ? 9 : 5);
  if (r <= 2)
    return GammaFormula::make_card_cmp(Int(pick(rng, 1, 2)),
                                       random_set(rng, sets, 2), random_cmp(rng),
                                       random_lin(rng, ints));
  if (r <= 4)
    return GammaFormula::make_lin_cmp(random_lin(rng, ints), random_cmp(rng),
                                      random_lin(rng, ints));
  if (r == 5)
    return GammaFormula::make_set_eq(random_set(rng, sets, 1),
                                     random_set(rng, sets, 1));
  if (r == 6)
    return GammaFormula::make_not(random_gamma_rec(rng, sets, ints, depth - 1));
  std::vector<GammaPtr> kids;
  int k = pick(rng, 2, 3);
  for (int i = 0; i < k; ++i)
    kids.push_back(random_gamma_rec(rng, sets, ints, depth - 1));
  return r <= 8 ? GammaFormula::make_and(std::move(kids))
                : GammaFormula::make_or(std::move(kids));
}

}  // namespace

GammaPtr random_gamma(Rng& rng, const std::vector<std::string>& sets,
                      const std::vector<std::string>& ints) {
  return random_gamma_rec(rng, sets, ints, 2);
}

FoVocabulary two_sorted_vocab() {
  FoVocabulary v;
  v.add_sort("s");
  v.add_sort("t");
  v.add_relation("P", {"s"});
  v.add_relation("R", {"s", "t"});
  v.add_relation("Q", {"t"});
  v.add_constant("c", "s");
  v.add_constant("d", "t");
  return v;
}

namespace {

struct FoGen {
  Rng& rng;
  int quants_left;
  int var_counter = 0;
  // In-scope variables per sort.
  std::vector<std::string> vars_s, vars_t;

  FoTerm term_of_sort(const std::string& sort) {
    const auto& vars = sort == "s" ? vars_s : vars_t;
    if (!vars.empty() && chance(rng, 0.75))
      return FoTerm::var(vars[static_cast<std::size_t>(
                             pick(rng, 0, static_cast<int>(vars.size()) - 1))],
                         sort);
    return FoTerm::constant(sort == "s" ? "c" : "d", sort);
  }

  FoPtr atom() {
    switch (pick(rng, 0, 3)) {
      case 0: return fo_atom("P", {term_of_sort("s")});
      case 1: return fo_atom("Q", {term_of_sort("t")});
      case 2: return fo_atom("R", {term_of_sort("s"), term_of_sort("t")});
      default: {
        std::string sort = chance(rng, 0.5) ? "s" : "t";
        return fo_eq(term_of_sort(sort), term_of_sort(sort));
      }
    }
  }

  FoPtr gen(int depth) {
    if (depth == 0) return atom();
    int r = pick(rng, 0, 9);
    if (r <= 2 && quants_left > 0) {
      --quants_left;
      std::string sort = chance(rng, 0.5) ? "s" : "t";
      std::string var = "v" + std::to_string(var_counter++);
      auto& vars = sort == "s" ? vars_s : vars_t;
      vars.push_back(var);
      FoPtr body = gen(depth - 1);
      vars.pop_back();
      return chance(rng, 0.5) ? fo_forall(var, sort, body)
                              : fo_exists(var, sort, body);
    }
    if (r <= 4) return fo_not(gen(depth - 1));
    if (r <= 6) {
      std::vector<FoPtr> kids;
      int k = pick(rng, 2, 3);
      for (int i = 0; i < k; ++i) kids.push_back(gen(depth - 1));
      return chance(rng, 0.5) ? fo_and(std::move(kids))
                              : fo_or(std::move(kids));
    }
    if (r == 7) return fo_implies(gen(depth - 1), gen(depth - 1));
    return atom();
  }
};

}  // namespace

FoPtr random_fo(Rng& rng, int max_quants) {
  FoGen gen{rng, max_quants};
  return gen.gen(3);
}

FiniteStructure random_two_sorted_structure(Rng& rng, int max_elems) {
  FiniteStructure st;
  int ns = pick(rng, 1, max_elems);
  int nt = pick(rng, 1, max_elems);
  for (int i = 0; i < ns; ++i)
    st.domains["s"].push_back("s" + std::to_string(i));
  for (int i = 0; i < nt; ++i)
    st.domains["t"].push_back("t" + std::to_string(i));
  auto& P = st.relations["P"];
  auto& R = st.relations["R"];
  auto& Q = st.relations["Q"];
  for (int i = 0; i < ns; ++i) {
    if (chance(rng, 0.5)) P.insert({i});
    for (int j = 0; j < nt; ++j)
      if (chance(rng, 0.5)) R.insert({i, j});
  }
  for (int j = 0; j < nt; ++j)
    if (chance(rng, 0.5)) Q.insert({j});
  st.constants["c"] = {"s", pick(rng, 0, ns - 1)};
  st.constants["d"] = {"t", pick(rng, 0, nt - 1)};
  return st;
}

}  // namespace tipforge::testing
