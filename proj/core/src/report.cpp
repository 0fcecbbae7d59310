#include "tipforge/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace tipforge {

const char* const kEnumerationCountNote =
    "absolute candidate and validity counts depend on enumeration "
    "conventions (candidate order, literal sets, pruning); only the final "
    "axiom sets are comparable across implementations";

std::string RunReport::to_json(bool include_timings) const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["spec"] = {{"name", spec_name}, {"digest", spec_digest}};
  j[delta_label] = delta;
  if (has_stats) {
    j["stats"] = {{"candidates", stats.candidates},
                  {"valid_total", stats.valid_total},
                  {"valid_solver_checked", stats.valid_solver_checked},
                  {"invalid_total", stats.invalid_total},
                  {"invalid_solver_checked", stats.invalid_solver_checked},
                  {"max_q_reached", stats.max_q_reached}};
  }
  if (!vc_verdicts.empty()) {
    auto vcs = nlohmann::ordered_json::array();
    for (const VcVerdict& v : vc_verdicts)
      vcs.push_back({{"vc", v.label}, {"valid", v.valid}});
    j["vcs"] = vcs;
  }
  j["notes"] = notes;
  if (include_timings) {
    auto ts = nlohmann::ordered_json::array();
    for (const PhaseTiming& t : timings)
      ts.push_back({{"phase", t.phase}, {"seconds", t.seconds}});
    j["timings"] = ts;
  }
  return j.dump(2) + "\n";
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "command: " << command << "\n";
  os << "spec:    " << spec_name << " (digest " << spec_digest << ")\n";
  os << delta_label << " (" << delta.size() << " formula"
     << (delta.size() == 1 ? "" : "s") << "):\n";
  for (std::size_t i = 0; i < delta.size(); ++i)
    os << "  " << (i + 1) << ". " << delta[i] << "\n";
  if (has_stats) {
    os << "enumeration: " << stats.candidates << " candidates, "
       << stats.valid_total << " valid (" << stats.valid_solver_checked
       << " solver-checked), " << stats.invalid_total << " invalid ("
       << stats.invalid_solver_checked << " solver-checked), final level "
       << stats.max_q_reached << "\n";
  }
  if (!vc_verdicts.empty()) {
    os << "verification conditions:\n";
    for (const VcVerdict& v : vc_verdicts)
      os << "  " << (v.valid ? "valid  " : "INVALID") << "  " << v.label
         << "\n";
  }
  for (const std::string& n : notes) os << "note: " << n << "\n";
  for (const PhaseTiming& t : timings)
    os << "time:  " << std::fixed << std::setprecision(3) << t.seconds
       << "s  " << t.phase << "\n";
  return os.str();
}

}  // namespace tipforge
