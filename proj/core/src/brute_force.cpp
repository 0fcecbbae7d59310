#include "tipforge/brute_force.hpp"

#include <bit>

namespace tipforge {

SetMask eval_set_mask(const SetExprPtr& e,
                      const std::map<std::string, SetMask>& env,
                      SetMask universe) {
  switch (e->op) {
    case SetOp::Param: {
      auto it = env.find(e->param);
      if (it == env.end()) throw TipError("unbound set: " + e->param);
      return it->second & universe;
    }
    case SetOp::Complement:
      return universe & ~eval_set_mask(e->kids[0], env, universe);
    case SetOp::Intersect: {
      SetMask m = universe;
      for (const auto& k : e->kids) m &= eval_set_mask(k, env, universe);
      return m;
    }
    case SetOp::Union: {
      SetMask m = 0;
      for (const auto& k : e->kids) m |= eval_set_mask(k, env, universe);
      return m;
    }
    case SetOp::Empty:
      return 0;
    case SetOp::Universe:
      return universe;
  }
  return 0;
}

namespace {

Rat eval_lin_concrete(const LinTerm& t, const ConcreteInstance& inst) {
  Rat acc = t.constant();
  for (const auto& [name, c] : t.coeffs()) {
    if (name == "n") {
      acc += c * Rat(Int(inst.n));
    } else {
      auto it = inst.ints.find(name);
      if (it == inst.ints.end())
        throw TipError("unbound integer parameter: " + name);
      acc += c * Rat(Int(it->second));
    }
  }
  return acc;
}

bool eval_cmp_rat(const Rat& a, CmpOp op, const Rat& b) {
  switch (op) {
    case CmpOp::Le: return a <= b;
    case CmpOp::Lt: return a < b;
    case CmpOp::Ge: return a >= b;
    case CmpOp::Gt: return a > b;
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
  }
  return false;
}

SetMask universe_mask(long n) {
  return n >= 64 ? ~0ul : ((1ul << n) - 1);
}

}  // namespace

bool eval_gamma_concrete(const GammaPtr& g, const ConcreteInstance& inst) {
  if (inst.n < 0 || inst.n > 62) throw TipError("universe too large");
  SetMask uni = universe_mask(inst.n);
  switch (g->kind) {
    case GammaKind::And:
      for (const auto& k : g->kids)
        if (!eval_gamma_concrete(k, inst)) return false;
      return true;
    case GammaKind::Or:
      for (const auto& k : g->kids)
        if (eval_gamma_concrete(k, inst)) return true;
      return false;
    case GammaKind::Not:
      return !eval_gamma_concrete(g->kids[0], inst);
    case GammaKind::LinCmp:
      return eval_cmp_rat(eval_lin_concrete(g->lhs, inst), g->op,
                          eval_lin_concrete(g->rhs, inst));
    case GammaKind::CardCmp: {
      SetMask m = eval_set_mask(g->set, inst.sets, uni);
      Rat size(Int(static_cast<long>(std::popcount(m))));
      return eval_cmp_rat(Rat(g->multiplier) * size, g->op,
                          eval_lin_concrete(g->rhs, inst));
    }
    case GammaKind::SetEq:
      return eval_set_mask(g->set, inst.sets, uni) ==
             eval_set_mask(g->set2, inst.sets, uni);
  }
  return false;
}

bool instance_permitted(const ProtocolSpec& spec,
                        const ConcreteInstance& inst) {
  if (!spec.gamma) return true;
  return eval_gamma_concrete(spec.gamma, inst);
}

namespace {

// Minimum size a set must have to satisfy "div*|x| >= num" at the
// instance; negative values clamp to zero. Returns n+1 when impossible.
long guard_min_size(const Threshold& t, const ConcreteInstance& inst) {
  Rat num = eval_lin_concrete(t.numerator(), inst);
  Rat bound = num / Rat(t.divisor());
  Int m = ceil_rat(bound);
  if (m <= 0) return 0;
  if (m > inst.n) return inst.n + 1;
  return static_cast<long>(m.get_si());
}

// Enumerates all n-bit masks with exactly k bits set, calling fn; returns
// false early when fn returns false.
template <typename Fn>
bool for_each_subset_of_size(long n, long k, Fn&& fn) {
  if (k < 0 || k > n) return true;
  if (k == 0) return fn(SetMask(0));
  // Gosper's hack.
  SetMask limit = universe_mask(n);
  SetMask v = (1ul << k) - 1;
  while (v <= limit) {
    if (!fn(v)) return false;
    SetMask t = v | (v - 1);
    SetMask next = (t + 1) | (((~t & -(~t)) - 1) >> (std::countr_zero(v) + 1));
    if (next <= v) break;
    v = next;
  }
  return true;
}

bool head_holds(const ProtocolSpec& spec, const SimpleFormula& f,
                const ConcreteInstance& inst, SetMask body) {
  long size = std::popcount(body);
  switch (f.head.kind) {
    case AtomicGuard::Kind::Thresh: {
      const Threshold& t = spec.thresholds.at(f.head.thresh);
      return Rat(t.divisor()) * Rat(Int(size)) >=
             eval_lin_concrete(t.numerator(), inst);
    }
    case AtomicGuard::Kind::One:
      return size >= 1;
    case AtomicGuard::Kind::All:
      return size == inst.n;
  }
  return false;
}

bool check_quantifiers(const ProtocolSpec& spec, const SimpleFormula& f,
                       const ConcreteInstance& inst, size_t qi, SetMask acc) {
  if (qi == f.quants.size())
    return head_holds(spec, f, inst, acc);
  long m = guard_min_size(spec.thresholds.at(f.quants[qi]), inst);
  if (m > inst.n) return true;  // guard unsatisfiable: vacuously true
  return for_each_subset_of_size(inst.n, m, [&](SetMask x) {
    return check_quantifiers(spec, f, inst, qi + 1, acc & x);
  });
}

}  // namespace

bool brute_force_valid_at(const ProtocolSpec& spec, const SimpleFormula& f,
                          const ConcreteInstance& inst) {
  SetMask uni = universe_mask(inst.n);
  SetMask lits = uni;
  for (const auto& lit : f.literals) {
    SetMask m = inst.sets.at(spec.set_params.at(lit.param));
    lits &= lit.complemented ? (uni & ~m) : m;
  }
  return check_quantifiers(spec, f, inst, 0, lits);
}

std::vector<ConcreteInstance> enumerate_instances(
    const ProtocolSpec& spec, const BruteForceOptions& opts) {
  std::vector<ConcreteInstance> out;
  unsigned long budget = opts.max_instances;
  long int_range = opts.int_hi - opts.int_lo + 1;

  for (long n = 0; n <= opts.max_n; ++n) {
    // Instances: int params then set params, odometer style.
    std::vector<long> ints(spec.int_params.size(), opts.int_lo);
    for (;;) {
      std::vector<SetMask> sets(spec.set_params.size(), 0);
      SetMask uni = universe_mask(n);
      for (;;) {
        if (budget-- == 0)
          throw BudgetExceeded("instance enumeration exceeds cap");
        ConcreteInstance inst;
        inst.n = n;
        for (size_t i = 0; i < spec.int_params.size(); ++i)
          inst.ints[spec.int_params[i]] = ints[i];
        for (size_t i = 0; i < spec.set_params.size(); ++i)
          inst.sets[spec.set_params[i]] = sets[i];
        if (instance_permitted(spec, inst)) out.push_back(std::move(inst));

        // Advance set masks.
        size_t k = 0;
        while (k < sets.size()) {
          if (sets[k] < uni) {
            ++sets[k];
            break;
          }
          sets[k] = 0;
          ++k;
        }
        if (k == sets.size()) break;
      }
      // Advance int values.
      size_t k = 0;
      while (k < ints.size()) {
        if (ints[k] < opts.int_hi) {
          ++ints[k];
          break;
        }
        ints[k] = opts.int_lo;
        ++k;
      }
      if (k == ints.size() || int_range <= 0) break;
    }
  }
  return out;
}

BruteForceOutcome brute_force_valid(const ProtocolSpec& spec,
                                    const SimpleFormula& f,
                                    const BruteForceOptions& opts) {
  BruteForceOutcome out;
  for (const auto& inst : enumerate_instances(spec, opts)) {
    ++out.instances_checked;
    if (!brute_force_valid_at(spec, f, inst)) {
      out.valid = false;
      out.counterexample = inst;
      return out;
    }
  }
  return out;
}

}  // namespace tipforge
