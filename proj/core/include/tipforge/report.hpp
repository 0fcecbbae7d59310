// Run reports: one structure holding everything a pipeline run produced —
// which command ran, on which specification, the resulting axiom set, the
// enumeration statistics, per-phase wall times, and the verdict of every
// verification condition — with machine-readable and human-readable
// renderings that carry identical data.
#pragma once

#include <string>
#include <vector>

#include "tipforge/aip.hpp"

namespace tipforge {

struct PhaseTiming {
  std::string phase;
  double seconds = 0.0;
};

struct VcVerdict {
  std::string label;  // e.g. "initiation", "consecution 'decide'", "safety"
  bool valid = false;
};

// Standing caveat attached to reports that print enumeration statistics:
// absolute candidate and validity counts depend on enumeration conventions
// (candidate order, literal sets, pruning), so only the final axiom sets are
// comparable across implementations.
extern const char* const kEnumerationCountNote;

struct RunReport {
  std::string command;
  std::string spec_name;
  std::string spec_digest;
  std::string delta_label = "delta";     // which set `delta` holds
  std::vector<std::string> delta;        // surface syntax, one per formula
  bool has_stats = false;
  AipStats stats;
  std::vector<VcVerdict> vc_verdicts;
  std::vector<std::string> notes;
  std::vector<PhaseTiming> timings;

  // Serialized JSON object, two-space indent, fixed key order. Identical
  // inputs produce byte-identical output when timings are excluded.
  std::string to_json(bool include_timings = true) const;
  // Human-readable rendering of the same data.
  std::string to_text() const;
};

}  // namespace tipforge
