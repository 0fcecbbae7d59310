#include "tipforge/aip.hpp"

#include <future>
#include <map>

#include "tipforge/gamma_check.hpp"

namespace tipforge {

// Speculative evaluation of upcoming candidates. Verdicts of the exact
// engine do not depend on the pruning state, so results computed ahead of
// time are always safe to consume; candidates that end up pruned simply
// waste a speculative call.
struct AipStream::Speculation {
  explicit Speculation(int jobs) : window(static_cast<size_t>(jobs) * 2) {}

  size_t window;
  std::map<size_t, std::future<GammaCheckResult>> pending;

  void clear() { pending.clear(); }
};

AipStream::AipStream(const ProtocolSpec& spec, AipOptions opts)
    : spec_(spec),
      opts_(opts),
      cache_(std::make_unique<SubsumptionCache>(spec, opts.lia_budget)) {
  if (opts_.jobs > 1) spec_exec_ = std::make_unique<Speculation>(opts_.jobs);
}

AipStream::~AipStream() = default;

AipStream::Verdict AipStream::decide(size_t idx) {
  GammaCheckOptions gopts;
  gopts.lia_budget = opts_.lia_budget;
  gopts.allow_fast_path = opts_.allow_fast_path;

  if (spec_exec_) {
    // Keep the speculation window full, skipping candidates the current
    // pruning state already resolves (prunes only grow, so a skipped
    // candidate is pruned for good).
    for (size_t j = idx; j < level_.size() && j < idx + spec_exec_->window;
         ++j) {
      if (spec_exec_->pending.count(j)) continue;
      const SimpleFormula& cand = level_[j];
      bool pruned = false;
      for (const auto& g : solver_valid_)
        if (subsumes_simple(g, cand, *cache_)) { pruned = true; break; }
      if (!pruned)
        for (const auto& d : solver_invalid_)
          if (subsumes_simple(cand, d, *cache_)) { pruned = true; break; }
      if (pruned) continue;
      const ProtocolSpec& spec = spec_;
      spec_exec_->pending.emplace(
          j, std::async(std::launch::async, [&spec, cand, gopts]() {
            return gamma_valid(spec, cand, gopts);
          }));
    }
    auto it = spec_exec_->pending.find(idx);
    if (it != spec_exec_->pending.end()) {
      GammaCheckResult r = it->second.get();
      spec_exec_->pending.erase(it);
      return r.valid ? Verdict::Valid : Verdict::Invalid;
    }
  }
  GammaCheckResult r = gamma_valid(spec_, level_[idx], gopts);
  return r.valid ? Verdict::Valid : Verdict::Invalid;
}

std::optional<SimpleFormula> AipStream::next() {
  if (done_) return std::nullopt;
  for (;;) {
    if (idx_ >= level_.size()) {
      if (q_ >= 1 && level_valid_ == 0) {
        done_ = true;
        stats_.max_q_reached = q_;
        if (spec_exec_) spec_exec_->clear();
        return std::nullopt;
      }
      ++q_;
      if (q_ > opts_.max_q)
        throw BudgetExceeded("enumeration exceeded the depth cap (" +
                             std::to_string(opts_.max_q) + ")");
      if (spec_.set_params.size() + static_cast<size_t>(q_) > 16)
        throw BudgetExceeded(
            "enumeration level needs more base sets than the region encoding "
            "supports (16)");
      level_ = enumerate_candidates(spec_, q_);
      idx_ = 0;
      level_valid_ = 0;
      if (spec_exec_) spec_exec_->clear();
      continue;
    }

    const size_t here = idx_++;
    const SimpleFormula& cand = level_[here];
    ++stats_.candidates;

    bool derived_valid = false;
    for (const auto& g : solver_valid_) {
      if (subsumes_simple(g, cand, *cache_)) {
        derived_valid = true;
        break;
      }
    }
    if (derived_valid) {
      ++stats_.valid_total;
      ++level_valid_;
      return cand;
    }

    bool derived_invalid = false;
    for (const auto& d : solver_invalid_) {
      if (subsumes_simple(cand, d, *cache_)) {
        derived_invalid = true;
        break;
      }
    }
    if (derived_invalid) {
      ++stats_.invalid_total;
      continue;
    }

    if (decide(here) == Verdict::Valid) {
      solver_valid_.push_back(cand);
      ++stats_.valid_total;
      ++stats_.valid_solver_checked;
      ++level_valid_;
      return cand;
    }
    solver_invalid_.push_back(cand);
    ++stats_.invalid_total;
    ++stats_.invalid_solver_checked;
  }
}

std::vector<SimpleFormula> aip_all_valid(const ProtocolSpec& spec,
                                         const AipOptions& opts,
                                         AipStats* stats_out) {
  AipStream stream(spec, opts);
  std::vector<SimpleFormula> out;
  while (auto f = stream.next()) out.push_back(std::move(*f));
  if (stats_out) *stats_out = stream.stats();
  return out;
}

}  // namespace tipforge
