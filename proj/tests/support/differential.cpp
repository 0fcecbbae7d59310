#include "differential.hpp"

#include <vector>

#include "corpus.hpp"
#include "random_gen.hpp"
#include "tipforge/brute_force.hpp"
#include "tipforge/gamma_check.hpp"
#include "tipforge/lia.hpp"
#include "tipforge/qfbapa.hpp"
#include "tipforge/threshold_structure.hpp"

namespace tipforge::testing {

namespace {

// A two-set-parameter specification widens literal coverage beyond the
// bundled single-set protocols while keeping the oracle cheap.
const char* kDuoSpecText = R"(spec duo
int t
set f
set g

assume n >= 2t + 1
assume |f| <= t
assume |g| <= t

threshold maj = (n + 1) / 2
threshold high = n - t
threshold low = t + 1
)";

// Pure-arithmetic confirmation that `m` witnesses invalidity of `f`: the
// assignment is permitted, every quantifier guard is met, and the head
// guard fails — all computed from the model's region counts, with no
// solver involved. Quantified variables are named x0..x{q-1} in the model.
bool confirmed_countermodel(const ProtocolSpec& spec, const SimpleFormula& f,
                            const BapaModel& m) {
  auto index_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < m.set_names.size(); ++i)
      if (m.set_names[i] == name) return static_cast<int>(i);
    return -1;
  };
  if (spec.gamma && !eval_bapa(spec.gamma, m)) return false;
  unsigned long need_set = 0, need_clear = 0;
  for (int i = 0; i < f.q(); ++i) {
    const std::string xn = "x" + std::to_string(i);
    const int bit = index_of(xn);
    if (bit < 0) return false;
    const Threshold& guard =
        spec.thresholds[static_cast<std::size_t>(f.quants[i])];
    if (m.set_size(xn) < threshold_value_at(guard, m)) return false;
    need_set |= 1ul << bit;
  }
  for (const SimpleLiteral& lit : f.literals) {
    const int bit = index_of(spec.set_params[static_cast<std::size_t>(
        lit.param)]);
    if (bit < 0) return false;
    (lit.complemented ? need_clear : need_set) |= 1ul << bit;
  }
  Int body = 0;
  for (const auto& [mask, count] : m.regions)
    if ((mask & need_set) == need_set && (mask & need_clear) == 0)
      body += count;
  switch (f.head.kind) {
    case AtomicGuard::Kind::Thresh:
      return body < threshold_value_at(
                        spec.thresholds[static_cast<std::size_t>(
                            f.head.thresh)],
                        m);
    case AtomicGuard::Kind::One:
      return body < 1;
    default:  // All: some node is missing from the body
      return body < m.n;
  }
}

// Whether the model's parameters lie inside the brute-force search box, so
// the oracle was in a position to find an equivalent counterexample.
bool inside_oracle_box(const BapaModel& m, const BruteForceOptions& opts) {
  if (m.n > opts.max_n) return false;
  for (const auto& [name, v] : m.ints)
    if (name != "n" && (v < opts.int_lo || v > opts.int_hi)) return false;
  return true;
}

}  // namespace

DiffStats gamma_vs_brute(unsigned seed, int cases) {
  std::vector<ProtocolSpec> pool;
  pool.push_back(load_corpus_spec("bosco.tipspec"));
  pool.push_back(load_corpus_spec("bosco_weakly.tipspec"));
  pool.push_back(load_corpus_spec("bosco_strongly.tipspec"));
  pool.push_back(parse_tipspec(kDuoSpecText));

  Rng rng(seed);
  DiffStats stats;
  for (int i = 0; i < cases; ++i) {
    const ProtocolSpec& spec =
        pool[static_cast<std::size_t>(pick(rng, 0, 3))];
    SimpleFormula f = random_simple(rng, spec, 3);
    GammaCheckOptions gopts;
    gopts.want_model = true;
    GammaCheckResult solver = gamma_valid(spec, f, gopts);
    BruteForceOptions opts;
    opts.max_n = f.q() >= 3 ? 5 : 6;
    BruteForceOutcome oracle = brute_force_valid(spec, f, opts);
    ++stats.cases;
    std::string failure;
    if (solver.valid) {
      // A bounded counterexample is definitive.
      if (!oracle.valid) failure = "solver valid, oracle found a counterexample";
    } else if (!solver.countermodel) {
      failure = "invalid verdict without a countermodel";
    } else if (!confirmed_countermodel(spec, f, *solver.countermodel)) {
      failure = "countermodel fails direct confirmation";
    } else if (oracle.valid &&
               inside_oracle_box(*solver.countermodel, opts)) {
      // The solver refuted within the oracle's own search box, yet the
      // oracle saw nothing — the exhaustive side must be broken.
      failure = "confirmed counterexample inside the oracle box, but the "
                "oracle reports valid";
    }
    // Remaining case: confirmed countermodel beyond the oracle's box while
    // the bounded search is clean — the oracle simply cannot see that far,
    // which is not a disagreement.
    if (!failure.empty()) {
      ++stats.disagreements;
      if (stats.first_disagreement.empty())
        stats.first_disagreement =
            spec.name + ": " + f.str(spec) + " (" + failure + ")";
    }
  }
  return stats;
}

namespace {

// Exhaustive satisfiability of a two-set cardinality formula over region
// counts in [0, 4] and t in [-4, 6], by direct evaluation.
bool exhaustive_bapa_sat(const GammaPtr& f) {
  for (long r0 = 0; r0 <= 4; ++r0)
    for (long r1 = 0; r1 <= 4; ++r1)
      for (long r2 = 0; r2 <= 4; ++r2)
        for (long r3 = 0; r3 <= 4; ++r3)
          for (long t = -4; t <= 6; ++t) {
            BapaModel m;
            m.n = r0 + r1 + r2 + r3;
            m.ints["n"] = m.n;
            m.ints["t"] = t;
            m.set_names = {"A", "B"};
            if (r1) m.regions[1] = r1;
            if (r2) m.regions[2] = r2;
            if (r3) m.regions[3] = r3;
            if (r0) m.regions[0] = r0;
            if (eval_bapa(f, m)) return true;
          }
  return false;
}

}  // namespace

DiffStats qfbapa_vs_exhaustive(unsigned seed, int cases) {
  Rng rng(seed);
  DiffStats stats;
  const std::vector<std::string> sets = {"A", "B"};
  const std::vector<std::string> ints = {"t"};
  for (int i = 0; i < cases; ++i) {
    GammaPtr f = random_gamma(rng, sets, ints);
    BapaResult solver = qfbapa_sat(f, sets, ints);
    ++stats.cases;
    std::string failure;
    if (solver.sat) {
      // The solver's own witness must satisfy the formula.
      if (!solver.model)
        failure = "sat verdict without a model";
      else if (!eval_bapa(f, *solver.model))
        failure = "model does not satisfy the formula";
    } else if (exhaustive_bapa_sat(f)) {
      failure = "unsat verdict but exhaustive search found a model";
    }
    if (!failure.empty()) {
      ++stats.disagreements;
      if (stats.first_disagreement.empty())
        stats.first_disagreement = f->str() + ": " + failure;
    }
  }
  return stats;
}

DiffStats lia_vs_box(unsigned seed, int cases) {
  Rng rng(seed);
  DiffStats stats;
  constexpr long kBox = 6;

  struct Constraint {
    std::vector<std::pair<int, long>> coeffs;
    int op;  // 0 <=, 1 >=, 2 ==, 3 <, 4 >
    long rhs;
  };

  for (int i = 0; i < cases; ++i) {
    int nvars = pick(rng, 1, 4);
    int ncons = pick(rng, 1, 5);
    std::vector<Constraint> want;
    LiaSystem sys;
    for (int v = 0; v < nvars; ++v) {
      sys.add_var("x" + std::to_string(v), Int(0));
      sys.add_le({{v, Rat(1)}}, Rat(kBox));
    }
    for (int c = 0; c < ncons; ++c) {
      Constraint con;
      for (int v = 0; v < nvars; ++v) {
        long k = pick(rng, -3, 3);
        if (k != 0) con.coeffs.push_back({v, k});
      }
      con.op = pick(rng, 0, 4);
      con.rhs = pick(rng, -6, 6);
      want.push_back(con);
      std::vector<std::pair<int, Rat>> coeffs;
      for (auto& [v, k] : con.coeffs) coeffs.push_back({v, Rat(k)});
      switch (con.op) {
        case 0: sys.add_le(coeffs, Rat(con.rhs)); break;
        case 1: sys.add_ge(coeffs, Rat(con.rhs)); break;
        case 2: sys.add_eq(coeffs, Rat(con.rhs)); break;
        case 3: sys.add_lt(coeffs, Rat(con.rhs)); break;
        default: sys.add_gt(coeffs, Rat(con.rhs)); break;
      }
    }

    auto holds_at = [&](const std::vector<long>& x) {
      for (const Constraint& con : want) {
        long lhs = 0;
        for (auto& [v, k] : con.coeffs) lhs += k * x[static_cast<size_t>(v)];
        bool ok = false;
        switch (con.op) {
          case 0: ok = lhs <= con.rhs; break;
          case 1: ok = lhs >= con.rhs; break;
          case 2: ok = lhs == con.rhs; break;
          case 3: ok = lhs < con.rhs; break;
          default: ok = lhs > con.rhs; break;
        }
        if (!ok) return false;
      }
      return true;
    };

    bool box_sat = false;
    std::vector<long> x(static_cast<size_t>(nvars), 0);
    for (;;) {
      if (holds_at(x)) {
        box_sat = true;
        break;
      }
      int v = 0;
      while (v < nvars && x[static_cast<size_t>(v)] == kBox)
        x[static_cast<size_t>(v++)] = 0;
      if (v == nvars) break;
      ++x[static_cast<size_t>(v)];
    }

    LiaResult solver = lia_sat(sys);
    ++stats.cases;
    std::string failure;
    if (solver.sat) {
      std::vector<long> model(static_cast<size_t>(nvars), 0);
      bool in_box = true;
      for (auto& [v, value] : solver.model) {
        if (v < 0 || v >= nvars) continue;
        if (!value.fits_slong_p()) in_box = false;
        model[static_cast<size_t>(v)] = value.get_si();
      }
      for (long value : model)
        if (value < 0 || value > kBox) in_box = false;
      if (!in_box)
        failure = "model leaves the declared box";
      else if (!holds_at(model))
        failure = "model violates a constraint";
      else if (!box_sat)
        failure = "solver sat but box enumeration found nothing";
    } else if (box_sat) {
      failure = "solver unsat but the box contains a solution";
    }
    if (!failure.empty()) {
      ++stats.disagreements;
      if (stats.first_disagreement.empty())
        stats.first_disagreement = sys.str() + ": " + failure;
    }
  }
  return stats;
}

}  // namespace tipforge::testing
