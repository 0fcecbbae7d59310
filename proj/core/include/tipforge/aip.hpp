// Streaming enumeration of all valid simple formulas, pruned by
// subsumption.
//
// Candidates are visited level by level (by quantifier count) in the
// documented deterministic order. A candidate subsumed by a known-valid
// formula is yielded without a solver call; a candidate that subsumes a
// known-invalid formula is skipped without a solver call; otherwise the
// exact engine decides it. The stream ends after the first level (at depth
// >= 1) that yields no valid formula: validity at depth q+2 projects to
// validity at q+1 by instantiating a quantifier with the whole domain, so
// nothing can appear later.
#pragma once

#include <memory>
#include <optional>

#include "tipforge/enumerate.hpp"
#include "tipforge/subsumption.hpp"

namespace tipforge {

struct AipOptions {
  long lia_budget = 100000;
  bool allow_fast_path = true;
  // Safety cap on the quantifier depth; exceeding it raises BudgetExceeded
  // (well-formed inputs terminate much earlier).
  int max_q = 32;
  // Number of solver threads. With more than one, upcoming candidates are
  // checked speculatively; yields, verdicts, and statistics are identical
  // to the sequential run.
  int jobs = 1;
};

struct AipStats {
  long candidates = 0;
  long valid_total = 0;
  long valid_solver_checked = 0;
  long invalid_total = 0;
  long invalid_solver_checked = 0;
  // The level that ended the stream (first level >= 1 yielding nothing).
  int max_q_reached = -1;
};

class AipStream {
 public:
  AipStream(const ProtocolSpec& spec, AipOptions opts = {});
  ~AipStream();

  AipStream(const AipStream&) = delete;
  AipStream& operator=(const AipStream&) = delete;

  // Next valid formula in order, or nullopt once the stream has ended.
  std::optional<SimpleFormula> next();

  bool finished() const { return done_; }
  const AipStats& stats() const { return stats_; }
  const SubsumptionCache& cache() const { return *cache_; }
  const ProtocolSpec& spec() const { return spec_; }

 private:
  struct Speculation;

  enum class Verdict { Valid, Invalid };
  Verdict decide(size_t idx);

  const ProtocolSpec& spec_;
  AipOptions opts_;
  std::unique_ptr<SubsumptionCache> cache_;
  std::unique_ptr<Speculation> spec_exec_;

  int q_ = -1;
  std::vector<SimpleFormula> level_;
  size_t idx_ = 0;
  long level_valid_ = 0;
  bool done_ = false;
  std::vector<SimpleFormula> solver_valid_, solver_invalid_;
  AipStats stats_;
};

// Runs the stream to completion and returns every valid formula in order.
std::vector<SimpleFormula> aip_all_valid(const ProtocolSpec& spec,
                                         const AipOptions& opts = {},
                                         AipStats* stats_out = nullptr);

}  // namespace tipforge
