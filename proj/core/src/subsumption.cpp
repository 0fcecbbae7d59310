#include "tipforge/subsumption.hpp"

namespace tipforge {

namespace {

// Satisfiability of the assumptions plus extra conjuncts.
bool sat_with(const ProtocolSpec& spec, GammaPtr extra, long lia_budget) {
  std::vector<GammaPtr> conj;
  if (spec.gamma) conj.push_back(spec.gamma);
  conj.push_back(std::move(extra));
  BapaResult r = qfbapa_sat(GammaFormula::make_and(std::move(conj)),
                            spec.set_params, spec.int_params, lia_budget);
  return r.sat;
}

// Conclusion-guard value as a scaled linear term: value = num/div.
std::pair<LinTerm, Int> head_value(const ProtocolSpec& spec,
                                   const AtomicGuard& h) {
  switch (h.kind) {
    case AtomicGuard::Kind::Thresh: {
      const Threshold& t = spec.thresholds.at(h.thresh);
      return {t.numerator(), t.divisor()};
    }
    case AtomicGuard::Kind::One:
      return {LinTerm(Rat(1)), Int(1)};
    case AtomicGuard::Kind::All:
      return {LinTerm::var("n"), Int(1)};
  }
  throw TipError("internal: bad guard");
}

}  // namespace

SubsumptionCache::SubsumptionCache(const ProtocolSpec& spec, long lia_budget)
    : spec_(spec), nt_(static_cast<int>(spec.thresholds.size())) {
  const int np = static_cast<int>(spec.set_params.size());
  thresh_ge_.assign(static_cast<size_t>(nt_) * nt_, false);
  lit_ge_.assign(static_cast<size_t>(2 * np) * nt_, false);
  head_ge_.assign(static_cast<size_t>(nt_ + 2) * (nt_ + 2), false);

  // head_ge covers thresh_ge, so compute it once and project.
  for (int i = 0; i < nt_ + 2; ++i) {
    AtomicGuard h1 = i < nt_ ? AtomicGuard::make_thresh(i)
                   : i == nt_ ? AtomicGuard::make_one()
                              : AtomicGuard::make_all();
    auto [num1, div1] = head_value(spec, h1);
    for (int j = 0; j < nt_ + 2; ++j) {
      AtomicGuard h2 = j < nt_ ? AtomicGuard::make_thresh(j)
                     : j == nt_ ? AtomicGuard::make_one()
                                : AtomicGuard::make_all();
      auto [num2, div2] = head_value(spec, h2);
      // value1 >= value2 entailed  <=>  div2*num1 < div1*num2 unsatisfiable.
      GammaPtr lt = GammaFormula::make_lin_cmp(num1 * Rat(div2), CmpOp::Lt,
                                               num2 * Rat(div1));
      bool ge = !sat_with(spec, std::move(lt), lia_budget);
      head_ge_[static_cast<size_t>(i) * (nt_ + 2) + j] = ge;
      if (i < nt_ && j < nt_)
        thresh_ge_[static_cast<size_t>(i) * nt_ + j] = ge;
    }
  }

  for (int p = 0; p < np; ++p) {
    for (int comp = 0; comp < 2; ++comp) {
      SetExprPtr lit = SetExpr::make_param(spec.set_params[p]);
      if (comp) lit = SetExpr::make_complement(lit);
      for (int j = 0; j < nt_; ++j) {
        const Threshold& t = spec.thresholds[j];
        // |lit| >= num/div entailed  <=>  div*|lit| < num unsatisfiable.
        GammaPtr lt = GammaFormula::make_card_cmp(t.divisor(), lit, CmpOp::Lt,
                                                  t.numerator());
        lit_ge_[static_cast<size_t>(2 * p + comp) * nt_ + j] =
            !sat_with(spec, std::move(lt), lia_budget);
      }
    }
  }
}

bool SubsumptionCache::thresh_ge(int i, int j) const {
  return thresh_ge_[static_cast<size_t>(i) * nt_ + j];
}

bool SubsumptionCache::lit_ge_thresh(const SimpleLiteral& lit, int j) const {
  return lit_ge_[static_cast<size_t>(2 * lit.param + (lit.complemented ? 1 : 0)) *
                     nt_ +
                 j];
}

int SubsumptionCache::head_id(const AtomicGuard& h) const {
  switch (h.kind) {
    case AtomicGuard::Kind::Thresh: return h.thresh;
    case AtomicGuard::Kind::One: return nt_;
    case AtomicGuard::Kind::All: return nt_ + 1;
  }
  throw TipError("internal: bad guard");
}

bool SubsumptionCache::head_ge(const AtomicGuard& h1,
                               const AtomicGuard& h2) const {
  return head_ge_[static_cast<size_t>(head_id(h1)) * (nt_ + 2) + head_id(h2)];
}

namespace {

// Backtracking search for an injective assignment of beta's entries to
// alpha's entries. Entries are indexed: beta quantifiers, then beta
// literals; alpha quantifiers, then alpha literals.
struct Matcher {
  const SimpleFormula& alpha;
  const SimpleFormula& beta;
  const SubsumptionCache& cache;
  std::vector<bool> used;  // over alpha entries

  bool admissible(int bi, int ai) const {
    const int bq = beta.q(), aq = alpha.q();
    if (bi < bq) {
      // beta quantifier: only to an alpha quantifier with a weaker-or-equal
      // demand.
      if (ai >= aq) return false;
      return cache.thresh_ge(beta.quants[bi], alpha.quants[ai]);
    }
    const SimpleLiteral& lit = beta.literals[bi - bq];
    if (ai < aq) {
      // beta literal standing in for an alpha quantifier.
      return cache.lit_ge_thresh(lit, alpha.quants[ai]);
    }
    return lit == alpha.literals[ai - aq];
  }

  bool assign(int bi) {
    const int bn = beta.q() + beta.k();
    if (bi == bn) return true;
    const int an = alpha.q() + alpha.k();
    for (int ai = 0; ai < an; ++ai) {
      if (used[ai] || !admissible(bi, ai)) continue;
      used[ai] = true;
      if (assign(bi + 1)) return true;
      used[ai] = false;
    }
    return false;
  }
};

}  // namespace

bool subsumes_simple(const SimpleFormula& alpha, const SimpleFormula& beta,
                     const SubsumptionCache& cache) {
  if (!cache.head_ge(alpha.head, beta.head)) return false;
  if (beta.q() + beta.k() > alpha.q() + alpha.k()) return false;
  Matcher m{alpha, beta, cache, {}};
  m.used.assign(alpha.q() + alpha.k(), false);
  return m.assign(0);
}

}  // namespace tipforge
