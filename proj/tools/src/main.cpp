// Command-line front end: validity checking, well-formedness gates, eager
// and counterexample-driven axiom inference, minimization, axiom
// translation, alternation-graph inspection, and transition-system
// verification.
//
// Exit codes: 0 = success / valid; 1 = negative verdict (invalid formula,
// failing gate, cyclic graph, failing verification condition); 2 = any
// error (I/O, parse, budget).
//
// The TIPFORGE_BUDGET environment variable (a positive integer v) overrides
// every solver budget: arithmetic-search node budgets become v, SAT
// conflict budgets become v, and ground-clause budgets become 10v.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tipforge/aip.hpp"
#include "tipforge/emit.hpp"
#include "tipforge/epr.hpp"
#include "tipforge/fo_translate.hpp"
#include "tipforge/fots.hpp"
#include "tipforge/gamma_check.hpp"
#include "tipforge/lazy.hpp"
#include "tipforge/minimize.hpp"
#include "tipforge/qa_graph.hpp"
#include "tipforge/report.hpp"
#include "tipforge/tip.hpp"
#include "tipforge/tipspec_parser.hpp"

namespace {

using namespace tipforge;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Budgets and option plumbing.

struct BudgetOverride {
  bool active = false;
  long value = 0;
};

BudgetOverride budget_from_env() {
  const char* s = std::getenv("TIPFORGE_BUDGET");
  if (!s || !*s) return {};
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v <= 0)
    throw TipError("TIPFORGE_BUDGET must be a positive integer, got '" +
                   std::string(s) + "'");
  return BudgetOverride{true, v};
}

void apply(const BudgetOverride& b, AipOptions& o) {
  if (b.active) o.lia_budget = b.value;
}

void apply(const BudgetOverride& b, EprOptions& o) {
  if (!b.active) return;
  o.max_conflicts = static_cast<std::uint64_t>(b.value);
  o.max_clauses = static_cast<std::size_t>(b.value) * 10;
}

void apply(const BudgetOverride& b, GammaCheckOptions& o) {
  if (b.active) o.lia_budget = b.value;
}

void apply(const BudgetOverride& b, MinimizeOptions& o) {
  if (!b.active) return;
  o.lia_budget = b.value;
  apply(b, o.epr);
}

// ---------------------------------------------------------------------------
// Small helpers.

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw TipError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw TipError("cannot write file: " + path);
  out << content;
  if (!out) throw TipError("write failed: " + path);
}

class PhaseClock {
 public:
  explicit PhaseClock(RunReport& report) : report_(report) {}

  template <typename Fn>
  auto run(const std::string& phase, Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record(phase, t0);
    } else {
      auto value = fn();
      record(phase, t0);
      return value;
    }
  }

 private:
  void record(const std::string& phase,
              std::chrono::steady_clock::time_point t0) {
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
                   .count();
    report_.timings.push_back(PhaseTiming{phase, s});
  }

  RunReport& report_;
};

ordered_json json_int(const Int& v) {
  if (v.fits_slong_p()) return ordered_json(v.get_si());
  return ordered_json(v.get_str());
}

ordered_json countermodel_json(const BapaModel& m) {
  ordered_json j;
  j["n"] = json_int(m.n);
  ordered_json ints = ordered_json::object();
  for (const auto& [name, value] : m.ints) ints[name] = json_int(value);
  j["ints"] = ints;
  ordered_json sets = ordered_json::object();
  for (const auto& name : m.set_names) sets[name] = m.set_elements(name);
  j["sets"] = sets;
  return j;
}

void require_gates(const ProtocolSpec& spec, long lia_budget) {
  GateReport gates = check_gates(spec, lia_budget);
  if (gates.all()) return;
  std::string msg = "specification fails well-formedness gates:";
  for (const std::string& f : gates.failures) msg += "\n  " + f;
  throw TipError(msg);
}

// Plain axiom list: one guard formula per line, '#' comments.
std::string render_tip_list(const std::vector<SimpleFormula>& delta,
                            const ProtocolSpec& spec) {
  std::string out;
  for (const SimpleFormula& f : delta) out += f.str(spec) + "\n";
  return out;
}

std::vector<SimpleFormula> parse_tip_list(const std::string& text,
                                          const ProtocolSpec& spec,
                                          const std::string& origin) {
  std::vector<SimpleFormula> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    auto hash = trimmed.find('#');
    if (hash != std::string::npos) trimmed.erase(hash);
    auto is_space = [](unsigned char c) { return std::isspace(c); };
    while (!trimmed.empty() && is_space(trimmed.back())) trimmed.pop_back();
    std::size_t start = 0;
    while (start < trimmed.size() && is_space(trimmed[start])) ++start;
    trimmed.erase(0, start);
    if (trimmed.empty()) continue;
    try {
      out.push_back(classify_simple(parse_tip(trimmed, spec), spec));
    } catch (const TipError& e) {
      throw TipError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared pipeline pieces.

struct CommonOpts {
  bool json = false;
  bool no_timings = false;
  int jobs = 1;
  int max_q = 32;
  std::string spec_path;
};

ProtocolSpec load_spec(const CommonOpts& c) { return load_tipspec(c.spec_path); }

AipOptions make_aip(const CommonOpts& c, const BudgetOverride& b) {
  AipOptions aip;
  aip.max_q = c.max_q;
  aip.jobs = c.jobs;
  apply(b, aip);
  return aip;
}

struct EagerRun {
  std::vector<SimpleFormula> full;
  std::vector<SimpleFormula> acyclic;
  MinimizeResult min;
  AipStats stats;
};

EagerRun run_eager(const ProtocolSpec& spec, const AipOptions& aip,
                   bool with_facts, const BudgetOverride& budget,
                   RunReport& report) {
  PhaseClock clock(report);
  EagerRun run;
  clock.run("gates", [&] { require_gates(spec, aip.lia_budget); });
  run.full = clock.run("enumerate",
                       [&] { return aip_all_valid(spec, aip, &run.stats); });
  run.acyclic = clock.run("drop-cyclic", [&] {
    return drop_cyclic(run.full, spec, aip.lia_budget);
  });
  MinimizeOptions mopts;
  mopts.with_subsumption_axioms = with_facts;
  mopts.lia_budget = aip.lia_budget;
  apply(budget, mopts);
  run.min = clock.run("minimize",
                      [&] { return minimize(run.acyclic, spec, mopts); });
  return run;
}

std::string vc_verdict_label(const Vc& vc) {
  std::string label = vc_kind_name(vc.kind);
  if (vc.kind == VcKind::Consecution) label += " '" + vc.transition + "'";
  return label;
}

// Checks every condition (validity of each = unsatisfiability of its
// negation) and reports all verdicts, not just the first failure.
std::vector<VcVerdict> check_all_vcs(const TransitionSystem& ts,
                                     const std::vector<FoPtr>& axioms,
                                     const EprOptions& epr,
                                     const std::string& dump_prefix) {
  std::vector<VcVerdict> verdicts;
  int counter = 0;
  for (const Vc& vc : generate_vcs(ts, axioms)) {
    EprOptions opts = epr;
    if (!dump_prefix.empty())
      opts.dump_cnf_path =
          dump_prefix + "-" + std::to_string(counter) + ".cnf";
    ++counter;
    EprResult r = epr_sat({fo_not(vc.formula)}, ts.vocab, opts);
    verdicts.push_back(VcVerdict{vc_verdict_label(vc), !r.sat});
  }
  return verdicts;
}

std::vector<FoPtr> translate_all(const std::vector<SimpleFormula>& delta,
                                 const ProtocolSpec& spec) {
  std::vector<FoPtr> out;
  out.reserve(delta.size());
  for (const SimpleFormula& f : delta) out.push_back(fo_translate(f, spec));
  return out;
}

void print_report(const RunReport& report, const CommonOpts& c) {
  RunReport shown = report;
  if (c.no_timings) shown.timings.clear();
  if (c.json)
    std::cout << shown.to_json(!c.no_timings);
  else
    std::cout << shown.to_text();
}

RunReport base_report(const std::string& command, const ProtocolSpec& spec) {
  RunReport report;
  report.command = command;
  report.spec_name = spec.name;
  report.spec_digest = spec.digest();
  return report;
}

// ---------------------------------------------------------------------------
// Commands.

int run_check(const CommonOpts& c, const std::string& formula_arg,
              const BudgetOverride& budget) {
  ProtocolSpec spec = load_spec(c);
  std::string text = formula_arg == "-" ? slurp("-") : formula_arg;
  TipPtr formula = parse_tip(text, spec);
  GammaCheckOptions opts;
  opts.want_model = true;
  apply(budget, opts);
  GammaCheckResult r = gamma_valid_tip(spec, formula, opts);
  if (c.json) {
    ordered_json j;
    j["command"] = "check";
    j["spec"] = {{"name", spec.name}, {"digest", spec.digest()}};
    j["formula"] = formula->str();
    j["verdict"] = r.valid ? "valid" : "invalid";
    j["countermodel"] =
        r.countermodel ? countermodel_json(*r.countermodel) : ordered_json();
    std::cout << j.dump(2) << "\n";
  } else if (r.valid) {
    std::cout << "valid\n";
  } else {
    std::cout << "invalid\n";
    if (r.countermodel)
      std::cout << "countermodel:\n" << r.countermodel->str() << "\n";
  }
  return r.valid ? 0 : 1;
}

int run_check_gates(const CommonOpts& c, const BudgetOverride& budget) {
  ProtocolSpec spec = load_spec(c);
  long lia_budget = budget.active ? budget.value : 100000;
  GateReport gates = check_gates(spec, lia_budget);
  if (c.json) {
    ordered_json j;
    j["command"] = "check-gates";
    j["spec"] = {{"name", spec.name}, {"digest", spec.digest()}};
    j["gates"] = {{"feasible", gates.feasible},
                  {"nondegenerate", gates.nondegenerate},
                  {"sane", gates.sane},
                  {"acyclic", gates.acyclic}};
    j["failures"] = gates.failures;
    std::cout << j.dump(2) << "\n";
  } else {
    auto line = [](const char* name, bool ok) {
      std::cout << (ok ? "pass  " : "FAIL  ") << name << "\n";
    };
    line("feasible", gates.feasible);
    line("nondegenerate", gates.nondegenerate);
    line("sane", gates.sane);
    line("acyclic", gates.acyclic);
    for (const std::string& f : gates.failures)
      std::cout << "  " << f << "\n";
  }
  return gates.all() ? 0 : 1;
}

struct InferEagerOpts {
  std::string model_path;
  std::string emit_path;
  std::string format = "smtlib2";
  std::string save_tip;
  bool with_facts = false;
};

int run_infer_eager(const CommonOpts& c, const InferEagerOpts& o,
                    const BudgetOverride& budget,
                    const std::string& label = "infer-eager") {
  ProtocolSpec spec = load_spec(c);
  RunReport report = base_report(label, spec);
  report.delta_label = "delta_min";
  AipOptions aip = make_aip(c, budget);
  EagerRun run = run_eager(spec, aip, o.with_facts, budget, report);
  for (const SimpleFormula& f : run.min.delta_min)
    report.delta.push_back(f.str(spec));
  report.has_stats = true;
  report.stats = run.stats;
  report.notes.push_back(
      std::to_string(run.full.size()) + " valid formulas enumerated, " +
      std::to_string(run.acyclic.size()) + " after the cyclic-formula " +
      "filter, " + std::to_string(run.min.delta_min.size()) +
      " after minimization (" + std::to_string(run.min.entailment_checks) +
      " entailment checks)");
  report.notes.push_back(kEnumerationCountNote);

  if (!o.model_path.empty()) {
    TransitionSystem ts = load_fots(o.model_path, spec);
    EprOptions epr;
    apply(budget, epr);
    PhaseClock clock(report);
    report.vc_verdicts = clock.run("verify-model", [&] {
      return check_all_vcs(ts, translate_all(run.min.delta_min, spec), epr,
                           "");
    });
  }
  if (!o.emit_path.empty())
    spill(o.emit_path, emit_axioms(run.min.delta_min, spec,
                                   parse_axiom_format(o.format), o.with_facts));
  if (!o.save_tip.empty())
    spill(o.save_tip, render_tip_list(run.min.delta_min, spec));
  print_report(report, c);
  for (const VcVerdict& v : report.vc_verdicts)
    if (!v.valid) return 1;
  return 0;
}

struct InferLazyOpts {
  std::string model_path;
  std::string trace_path;
  std::string save_tip;
  std::size_t max_iters = 64;
};

ordered_json trace_json(const LazyResult& res, const ProtocolSpec& spec) {
  ordered_json steps = ordered_json::array();
  for (const LazyStep& s : res.trace) {
    ordered_json step;
    step["vc"] = vc_kind_name(s.cti.vc_kind);
    if (s.cti.vc_kind == VcKind::Consecution)
      step["transition"] = s.cti.transition;
    step["stream_index"] = s.stream_index;
    step["chosen"] = s.chosen.str(spec);
    step["counterexample"] = s.cti.structure.str();
    steps.push_back(step);
  }
  ordered_json j;
  j["iterations"] = res.iterations;
  j["verified"] = res.verified;
  j["steps"] = steps;
  return j;
}

int run_infer_lazy(const CommonOpts& c, const InferLazyOpts& o,
                   const BudgetOverride& budget,
                   const std::string& label = "infer-lazy") {
  ProtocolSpec spec = load_spec(c);
  RunReport report = base_report(label, spec);
  report.delta_label = "delta_int";
  PhaseClock clock(report);
  TransitionSystem ts =
      clock.run("parse-model", [&] { return load_fots(o.model_path, spec); });
  clock.run("gates", [&] {
    require_gates(spec, budget.active ? budget.value : 100000);
  });

  LazyOptions opts;
  opts.max_iters = o.max_iters;
  opts.aip = make_aip(c, budget);
  apply(budget, opts.epr);
  LazyResult res =
      clock.run("infer", [&] { return lazy_infer(ts, spec, opts); });

  for (const SimpleFormula& f : res.delta_int)
    report.delta.push_back(f.str(spec));
  report.has_stats = true;
  report.stats = res.aip_stats;
  report.vc_verdicts = clock.run("verify-model", [&] {
    return check_all_vcs(ts, translate_all(res.delta_int, spec), opts.epr,
                         "");
  });
  report.notes.push_back(std::to_string(res.iterations) +
                         " counterexamples eliminated");
  report.notes.push_back(kEnumerationCountNote);
  if (!o.trace_path.empty())
    spill(o.trace_path, trace_json(res, spec).dump(2) + "\n");
  if (!o.save_tip.empty())
    spill(o.save_tip, render_tip_list(res.delta_int, spec));
  print_report(report, c);
  for (const VcVerdict& v : report.vc_verdicts)
    if (!v.valid) return 1;
  return 0;
}

struct MinimizeOpts {
  std::string formulas_path;
  std::string save_tip;
  bool with_facts = false;
};

int run_minimize(const CommonOpts& c, const MinimizeOpts& o,
                 const BudgetOverride& budget) {
  ProtocolSpec spec = load_spec(c);
  RunReport report = base_report("minimize", spec);
  report.delta_label = "delta_min";
  AipOptions aip = make_aip(c, budget);

  MinimizeResult min;
  if (o.formulas_path.empty()) {
    EagerRun run = run_eager(spec, aip, o.with_facts, budget, report);
    min = std::move(run.min);
    report.has_stats = true;
    report.stats = run.stats;
    report.notes.push_back(kEnumerationCountNote);
  } else {
    PhaseClock clock(report);
    clock.run("gates", [&] { require_gates(spec, aip.lia_budget); });
    std::vector<SimpleFormula> input = parse_tip_list(
        slurp(o.formulas_path), spec, o.formulas_path);
    std::vector<SimpleFormula> acyclic = clock.run("drop-cyclic", [&] {
      return drop_cyclic(input, spec, aip.lia_budget);
    });
    MinimizeOptions mopts;
    mopts.with_subsumption_axioms = o.with_facts;
    mopts.lia_budget = aip.lia_budget;
    apply(budget, mopts);
    min = clock.run("minimize", [&] { return minimize(acyclic, spec, mopts); });
  }

  for (const SimpleFormula& f : min.delta_min)
    report.delta.push_back(f.str(spec));
  report.notes.push_back(
      std::to_string(min.dropped.size()) + " formulas dropped (" +
      std::to_string(min.fast_path_drops) + " by syntactic subsumption), " +
      std::to_string(min.entailment_checks) + " entailment checks");
  if (!o.save_tip.empty())
    spill(o.save_tip, render_tip_list(min.delta_min, spec));
  print_report(report, c);
  return 0;
}

struct TranslateOpts {
  std::string set = "min";
  std::string format = "smtlib2";
  std::string out;
  bool with_facts = false;
};

std::vector<SimpleFormula> select_set(const std::string& which,
                                      const ProtocolSpec& spec,
                                      const AipOptions& aip,
                                      const BudgetOverride& budget,
                                      RunReport& report) {
  if (which != "full" && which != "acyclic" && which != "min")
    throw TipError("unknown axiom set '" + which +
                   "' (expected full, acyclic, or min)");
  if (which == "min")
    return run_eager(spec, aip, false, budget, report).min.delta_min;
  PhaseClock clock(report);
  clock.run("gates", [&] { require_gates(spec, aip.lia_budget); });
  std::vector<SimpleFormula> full =
      clock.run("enumerate", [&] { return aip_all_valid(spec, aip); });
  if (which == "full") return full;
  return clock.run("drop-cyclic",
                   [&] { return drop_cyclic(full, spec, aip.lia_budget); });
}

int run_translate(const CommonOpts& c, const TranslateOpts& o,
                  const BudgetOverride& budget) {
  ProtocolSpec spec = load_spec(c);
  RunReport scratch = base_report("translate", spec);
  AipOptions aip = make_aip(c, budget);
  std::vector<SimpleFormula> delta =
      select_set(o.set, spec, aip, budget, scratch);
  std::string rendered =
      emit_axioms(delta, spec, parse_axiom_format(o.format), o.with_facts,
                  /*allow_cyclic=*/o.set == "full");
  if (c.json) {
    ordered_json j;
    j["command"] = "translate";
    j["spec"] = {{"name", spec.name}, {"digest", spec.digest()}};
    j["set"] = o.set;
    j["format"] = o.format;
    j["count"] = delta.size();
    j["axioms"] = rendered;
    std::cout << j.dump(2) << "\n";
    if (!o.out.empty()) spill(o.out, rendered);
  } else if (o.out.empty()) {
    std::cout << rendered;
  } else {
    spill(o.out, rendered);
  }
  return 0;
}

struct QaGraphOpts {
  std::string set = "acyclic";
  std::string dot_out;
};

int run_qa_graph(const CommonOpts& c, const QaGraphOpts& o,
                 const BudgetOverride& budget) {
  ProtocolSpec spec = load_spec(c);
  RunReport scratch = base_report("qa-graph", spec);
  AipOptions aip = make_aip(c, budget);
  std::vector<SimpleFormula> delta =
      select_set(o.set, spec, aip, budget, scratch);
  QaGraph graph = qa_graph(translate_all(delta, spec), fo_vocab(spec));
  bool acyclic = graph.acyclic();
  if (c.json) {
    ordered_json j;
    j["command"] = "qa-graph";
    j["spec"] = {{"name", spec.name}, {"digest", spec.digest()}};
    j["set"] = o.set;
    j["acyclic"] = acyclic;
    j["vertices"] = graph.vertices;
    ordered_json edges = ordered_json::array();
    for (const QaEdge& e : graph.edges)
      edges.push_back(
          {{"from", e.from}, {"to", e.to}, {"provenance", e.provenance}});
    j["edges"] = edges;
    std::cout << j.dump(2) << "\n";
  } else {
    std::string dot = emit_qa_dot(graph);
    if (o.dot_out.empty())
      std::cout << dot;
    else
      spill(o.dot_out, dot);
    std::cout << (acyclic ? "acyclic\n" : "CYCLIC\n");
  }
  return acyclic ? 0 : 1;
}

struct VerifyOpts {
  std::string model_path;
  std::string axioms = "eager";
  std::string dump_cnf;
};

int run_verify(const CommonOpts& c, const VerifyOpts& o,
               const BudgetOverride& budget) {
  ProtocolSpec spec = load_spec(c);
  RunReport report = base_report("verify", spec);
  PhaseClock clock(report);
  TransitionSystem ts =
      clock.run("parse-model", [&] { return load_fots(o.model_path, spec); });
  AipOptions aip = make_aip(c, budget);

  std::vector<SimpleFormula> delta;
  if (o.axioms == "eager") {
    EagerRun run = run_eager(spec, aip, false, budget, report);
    delta = run.min.delta_min;
    report.has_stats = true;
    report.stats = run.stats;
    report.notes.push_back(kEnumerationCountNote);
    report.delta_label = "delta_min";
  } else if (o.axioms == "lazy") {
    LazyOptions opts;
    opts.aip = aip;
    apply(budget, opts.epr);
    LazyResult res =
        clock.run("infer", [&] { return lazy_infer(ts, spec, opts); });
    delta = res.delta_int;
    report.has_stats = true;
    report.stats = res.aip_stats;
    report.notes.push_back(kEnumerationCountNote);
    report.delta_label = "delta_int";
  } else {
    delta = parse_tip_list(slurp(o.axioms), spec, o.axioms);
    report.delta_label = "delta";
    // User-supplied axioms must be valid: anything else would "verify" the
    // system against assumptions the protocol does not provide.
    GammaCheckOptions gopts;
    apply(budget, gopts);
    clock.run("validate-axioms", [&] {
      for (const SimpleFormula& f : delta)
        if (!gamma_valid(spec, f, gopts).valid)
          throw TipError("axiom is not valid under the assumptions: " +
                         f.str(spec));
    });
  }
  for (const SimpleFormula& f : delta) report.delta.push_back(f.str(spec));

  EprOptions epr;
  apply(budget, epr);
  report.vc_verdicts = clock.run("verify-model", [&] {
    return check_all_vcs(ts, translate_all(delta, spec), epr, o.dump_cnf);
  });
  print_report(report, c);
  for (const VcVerdict& v : report.vc_verdicts)
    if (!v.valid) return 1;
  return 0;
}

struct ReportOpts {
  std::string model_path;
  std::string mode = "eager";
};

int run_report(const CommonOpts& c, const ReportOpts& o,
               const BudgetOverride& budget) {
  if (o.mode == "eager") {
    InferEagerOpts eo;
    eo.model_path = o.model_path;
    return run_infer_eager(c, eo, budget, "report");
  }
  if (o.mode == "lazy") {
    if (o.model_path.empty())
      throw TipError("report --mode lazy requires --model");
    InferLazyOpts lo;
    lo.model_path = o.model_path;
    return run_infer_lazy(c, lo, budget, "report");
  }
  throw TipError("unknown mode '" + o.mode + "' (expected eager or lazy)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tipforge — threshold-intersection axiom inference for quorum "
      "protocols"};
  app.require_subcommand(1);

  CommonOpts common;
  BudgetOverride budget;

  auto add_common = [&](CLI::App* sub, bool takes_jobs = true) {
    sub->add_option("spec", common.spec_path,
                    "protocol specification (.tipspec)")
        ->required();
    sub->add_flag("--json", common.json, "machine-readable output");
    sub->add_flag("--no-timings", common.no_timings,
                  "omit wall-clock timings from the report");
    if (takes_jobs) {
      sub->add_option("--jobs", common.jobs,
                      "solver threads for candidate checking")
          ->check(CLI::PositiveNumber);
      sub->add_option("--max-q", common.max_q,
                      "quantifier-depth safety cap for enumeration")
          ->check(CLI::PositiveNumber);
    }
  };

  // check
  std::string formula_arg;
  CLI::App* cmd_check = app.add_subcommand(
      "check", "decide validity of one guard formula under the assumptions");
  add_common(cmd_check, false);
  cmd_check
      ->add_option("formula", formula_arg,
                   "guard formula text ('-' reads stdin)")
      ->required();

  // check-gates
  CLI::App* cmd_gates = app.add_subcommand(
      "check-gates", "run the specification well-formedness gates");
  add_common(cmd_gates, false);

  // infer-eager
  InferEagerOpts eager_opts;
  CLI::App* cmd_eager = app.add_subcommand(
      "infer-eager",
      "enumerate all valid guard formulas, filter, and minimize");
  add_common(cmd_eager);
  cmd_eager->add_option("--model", eager_opts.model_path,
                        "transition model (.fots) to verify with the result");
  cmd_eager->add_option("--emit", eager_opts.emit_path,
                        "write the translated axioms to this file");
  cmd_eager->add_option("--format", eager_opts.format,
                        "axiom output format: smtlib2, ivy, text");
  cmd_eager->add_option("--save-tip", eager_opts.save_tip,
                        "write the result, one guard formula per line");
  cmd_eager->add_flag("--with-subsumption-axioms", eager_opts.with_facts,
                      "emit guard-inclusion facts and minimize modulo them");

  // infer-lazy
  InferLazyOpts lazy_opts;
  CLI::App* cmd_lazy = app.add_subcommand(
      "infer-lazy",
      "grow an axiom set from counterexamples to induction");
  add_common(cmd_lazy);
  cmd_lazy
      ->add_option("model", lazy_opts.model_path, "transition model (.fots)")
      ->required();
  cmd_lazy->add_option("--trace", lazy_opts.trace_path,
                       "write the elimination trace as JSON");
  cmd_lazy->add_option("--save-tip", lazy_opts.save_tip,
                       "write the result, one guard formula per line");
  cmd_lazy->add_option("--max-iters", lazy_opts.max_iters,
                       "cap on elimination rounds");

  // minimize
  MinimizeOpts min_opts;
  CLI::App* cmd_min = app.add_subcommand(
      "minimize", "reduce an axiom set to a locally minimal subset");
  add_common(cmd_min);
  cmd_min->add_option("--formulas", min_opts.formulas_path,
                      "axioms to minimize, one per line (default: enumerate)");
  cmd_min->add_option("--save-tip", min_opts.save_tip,
                      "write the result, one guard formula per line");
  cmd_min->add_flag("--with-subsumption-axioms", min_opts.with_facts,
                    "minimize modulo the guard-inclusion facts");

  // translate
  TranslateOpts tr_opts;
  CLI::App* cmd_translate = app.add_subcommand(
      "translate", "render an axiom set in a solver input format");
  add_common(cmd_translate);
  cmd_translate->add_option("--set", tr_opts.set,
                            "which set: full, acyclic, min");
  cmd_translate->add_option("--format", tr_opts.format,
                            "output format: smtlib2, ivy, text");
  cmd_translate->add_option("-o,--out", tr_opts.out, "output file");
  cmd_translate->add_flag("--with-subsumption-axioms", tr_opts.with_facts,
                          "append the guard-inclusion facts");

  // qa-graph
  QaGraphOpts qa_opts;
  CLI::App* cmd_qa = app.add_subcommand(
      "qa-graph",
      "quantifier-alternation graph of the translated axiom set");
  add_common(cmd_qa);
  cmd_qa->add_option("--set", qa_opts.set, "which set: full, acyclic, min");
  cmd_qa->add_option("--dot", qa_opts.dot_out, "write Graphviz to this file");

  // verify
  VerifyOpts verify_opts;
  CLI::App* cmd_verify = app.add_subcommand(
      "verify", "check a transition model's verification conditions");
  add_common(cmd_verify);
  cmd_verify
      ->add_option("model", verify_opts.model_path,
                   "transition model (.fots)")
      ->required();
  cmd_verify->add_option(
      "--axioms", verify_opts.axioms,
      "axiom source: eager, lazy, or a file of guard formulas");
  cmd_verify->add_option("--dump-cnf", verify_opts.dump_cnf,
                         "write each ground query as DIMACS to PREFIX-N.cnf");

  // report
  ReportOpts report_opts;
  CLI::App* cmd_report = app.add_subcommand(
      "report", "full pipeline run report (eager or lazy)");
  add_common(cmd_report);
  cmd_report->add_option("--model", report_opts.model_path,
                         "transition model (.fots)");
  cmd_report->add_option("--mode", report_opts.mode, "eager or lazy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    budget = budget_from_env();
    if (cmd_check->parsed()) return run_check(common, formula_arg, budget);
    if (cmd_gates->parsed()) return run_check_gates(common, budget);
    if (cmd_eager->parsed()) return run_infer_eager(common, eager_opts, budget);
    if (cmd_lazy->parsed()) return run_infer_lazy(common, lazy_opts, budget);
    if (cmd_min->parsed()) return run_minimize(common, min_opts, budget);
    if (cmd_translate->parsed())
      return run_translate(common, tr_opts, budget);
    if (cmd_qa->parsed()) return run_qa_graph(common, qa_opts, budget);
    if (cmd_verify->parsed()) return run_verify(common, verify_opts, budget);
    if (cmd_report->parsed()) return run_report(common, report_opts, budget);
    std::cerr << "error: no command\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const TipError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
