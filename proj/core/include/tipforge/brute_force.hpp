// Exhaustive finite-domain validity checking for small universes.
//
// This is an independent oracle: it never consults the arithmetic engine.
// Sets over a universe of size n are bitmasks; assumptions are evaluated
// directly; quantified variables are enumerated. To keep the search
// tractable, quantified sets are enumerated at exactly their guard's
// minimum size: bodies are intersections of positively-occurring
// quantified sets, so any violation shrinks to one at minimum size and
// any conclusion established at minimum sizes extends upward.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tipforge/simple_formula.hpp"

namespace tipforge {

using SetMask = unsigned long;

struct ConcreteInstance {
  long n = 0;
  std::map<std::string, long> ints;      // excluding "n"
  std::map<std::string, SetMask> sets;   // per set parameter
};

// Evaluates a set expression; `universe` is the n-bit mask and `env` maps
// parameter and variable names to masks.
SetMask eval_set_mask(const SetExprPtr& e,
                      const std::map<std::string, SetMask>& env,
                      SetMask universe);

// Evaluates an assumption formula at a concrete instance.
bool eval_gamma_concrete(const GammaPtr& g, const ConcreteInstance& inst);

// Whether the instance satisfies the spec's assumptions.
bool instance_permitted(const ProtocolSpec& spec, const ConcreteInstance& inst);

// Evaluates a simple formula at one instance by enumerating quantified
// sets (at minimum size; see header comment).
bool brute_force_valid_at(const ProtocolSpec& spec, const SimpleFormula& f,
                          const ConcreteInstance& inst);

struct BruteForceOptions {
  long max_n = 5;
  long int_lo = -1;
  long int_hi = 5;
  unsigned long max_instances = 2000000;
};

struct BruteForceOutcome {
  bool valid = true;
  long instances_checked = 0;
  std::optional<ConcreteInstance> counterexample;
};

// Checks the formula at every permitted instance with n <= max_n and
// integer parameters in [int_lo, int_hi]. Throws BudgetExceeded when the
// instance space exceeds max_instances.
BruteForceOutcome brute_force_valid(const ProtocolSpec& spec,
                                    const SimpleFormula& f,
                                    const BruteForceOptions& opts = {});

// Enumerates all permitted instances within the bounds (used by harnesses).
std::vector<ConcreteInstance> enumerate_instances(
    const ProtocolSpec& spec, const BruteForceOptions& opts = {});

}  // namespace tipforge
