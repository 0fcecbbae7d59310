// Materialization of threshold sorts over a concrete parameter assignment:
// the unique extension of a node core where each threshold sort's domain is
// every node subset meeting the threshold, membership is elementhood, and
// set parameters take their assigned values.
//
// Domains are exponential in n by design — this exists as a semantics
// oracle for tests, not as a solver component — so n is capped defensively.
#pragma once

#include "tipforge/qfbapa.hpp"
#include "tipforge/spec.hpp"
#include "tipforge/structure.hpp"

namespace tipforge {

// Smallest admissible cardinality for the threshold at the assignment:
// ceil(numerator / divisor) with the parameters substituted.
Int threshold_value_at(const Threshold& t, const BapaModel& params);

// Preconditions: params satisfies the spec's assumptions; core's node
// domain has exactly params.n elements; params.n <= 12.  Throws TipError
// when a threshold sort would be empty (its value exceeds n) — that is a
// feasibility violation, not a budget problem.
FiniteStructure build_t_extension(const FiniteStructure& core,
                                  const BapaModel& params,
                                  const ProtocolSpec& spec);

}  // namespace tipforge
