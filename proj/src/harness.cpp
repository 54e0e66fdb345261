#include "sortflow/harness.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include "sortflow/dimacs.hpp"
#include "sortflow/error.hpp"
#include "sortflow/generators.hpp"
#include "sortflow/oracles.hpp"

namespace sortflow {

namespace {

std::optional<bool> find_verdict(const std::vector<Verdict>& verdicts, std::string_view name) {
  for (const auto& v : verdicts) {
    if (v.claim == name) return v.holds;
  }
  return std::nullopt;
}

// Strict conservation after restoration: zero excess off the terminals and
// recovered per-arc flow balanced at every inner vertex.
bool restoration_holds(const Network& net, const FlowState& before, const FlowState& after) {
  if (after.sink_gain != before.sink_gain) return false;
  if (!validate_preflow(net, after).empty()) return false;
  const auto n = static_cast<std::size_t>(net.vertex_count());
  const auto s = static_cast<std::size_t>(net.source());
  const auto t = static_cast<std::size_t>(net.sink());
  std::vector<Capacity> balance(n, 0);
  const auto flow = recover_flow(net, after);
  for (std::size_t i = 0; i < flow.size(); ++i) {
    const Arc& arc = net.arcs()[2 * i];
    if (flow[i] < 0 || flow[i] > arc.capacity) return false;
    balance[static_cast<std::size_t>(arc.head)] += flow[i];
    balance[static_cast<std::size_t>(arc.tail)] -= flow[i];
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (v == s || v == t) continue;
    if (after.excess[v] != 0 || balance[v] != 0) return false;
  }
  return balance[t] == after.sink_gain;
}

}  // namespace

std::int64_t ceil_sqrt(std::int64_t n) {
  std::int64_t r = 0;
  while (r * r < n) ++r;
  return r;
}

bool InstanceEvaluation::hard_ok() const {
  return std::all_of(hard.begin(), hard.end(), [](const Verdict& v) { return v.holds.value_or(true); });
}

bool InstanceEvaluation::all_ok() const {
  return hard_ok() &&
         std::all_of(claims.begin(), claims.end(), [](const Verdict& v) { return v.holds.value_or(true); });
}

InstanceEvaluation evaluate_instance(const LabeledInstance& item, const EvaluateOptions& options) {
  InstanceEvaluation eval;
  eval.id = item.id;
  eval.instance = item.instance;
  const Network net = build_network(item.instance);
  eval.n = net.vertex_count();
  eval.m = net.input_arc_count();
  eval.oracle_value = max_flow_reference(net).value;

  const RunLimits limits{options.max_iterations, true};
  std::optional<RunResult> first;
  bool push_bound = true;
  try {
    first = run(net, limits);
  } catch (const FlowError& e) {
    eval.error = e.what();
    push_bound = e.code() != ErrorCode::NonTerminatingPush;
  }

  if (!first) {
    eval.hard = {{"preflow_valid", false}, {"sink_bound", std::nullopt}, {"core_acyclic", std::nullopt},
                 {"deterministic", std::nullopt}, {"arc_touch_bound", std::nullopt},
                 {"push_bound", push_bound}, {"restoration", std::nullopt}};
    eval.claims = {{"matches_oracle", false}, {"sink_gain_monotone", std::nullopt},
                   {"saturate_or_discharge", std::nullopt}, {"augments_linear", std::nullopt},
                   {"iterations_sqrt_bound", std::nullopt}};
    return eval;
  }

  const RunReport& report = first->report;
  eval.report = report;
  const bool converged = report.terminated_by == Termination::Converged;

  const bool preflow_valid =
      report.claims.preflow_valid_each_pass && validate_preflow(net, first->state).empty();
  const bool sink_bound = std::all_of(report.per_iteration.begin(), report.per_iteration.end(),
                                      [&](const IterationRecord& r) { return r.sink_gain_after <= eval.oracle_value; }) &&
                          report.flow_value <= eval.oracle_value;
  const bool arc_touch_bound = std::all_of(report.per_iteration.begin(), report.per_iteration.end(),
                                           [](const IterationRecord& r) { return r.bfss_max_arc_touches <= 2; });

  const RunResult second = run(net, limits);
  const bool deterministic = second.report == report && second.state == first->state;

  std::optional<bool> restoration;
  if (converged) {
    eval.cut_value = certify_cut(net, first->state).value;
    try {
      restoration = restoration_holds(net, first->state, restore_flow(net, first->state));
    } catch (const FlowError& e) {
      eval.error = e.what();
      restoration = false;
    }
  }

  eval.hard = {{"preflow_valid", preflow_valid},
               {"sink_bound", sink_bound},
               {"core_acyclic", report.claims.core_acyclic_each_iteration},
               {"deterministic", deterministic},
               {"arc_touch_bound", arc_touch_bound},
               {"push_bound", push_bound},
               {"restoration", restoration}};
  eval.claims = {{"matches_oracle", converged && report.flow_value == eval.oracle_value},
                 {"sink_gain_monotone", report.claims.sink_gain_monotone},
                 {"saturate_or_discharge", report.claims.saturate_or_discharge},
                 {"augments_linear", report.claims.augments_bounded},
                 {"iterations_sqrt_bound", report.iterations <= 4 * ceil_sqrt(eval.n)}};
  eval.report.claims.matches_oracle = find_verdict(eval.claims, "matches_oracle");
  return eval;
}

nlohmann::ordered_json report_to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["flow_value"] = report.flow_value;
  j["iterations"] = report.iterations;
  j["total_augments"] = report.total_augments;
  j["total_arc_touches"] = report.total_arc_touches;
  j["terminated_by"] = to_string(report.terminated_by);
  auto& per = j["per_iteration"] = nlohmann::ordered_json::array();
  for (const auto& r : report.per_iteration) {
    per.push_back({{"augments", r.push.augments},
                   {"saturating_augments", r.push.saturating_augments},
                   {"reactivations", r.push.reactivations},
                   {"discharges", r.push.discharges},
                   {"push_arc_touches", r.push.arc_touches},
                   {"sink_gain_delta", r.push.sink_gain_delta},
                   {"bfss_arc_touches", r.bfss_arc_touches},
                   {"bfss_max_arc_touches", r.bfss_max_arc_touches},
                   {"core_arcs", r.core_arcs},
                   {"initial_active", r.initial_active},
                   {"core_acyclic", r.core_acyclic},
                   {"preflow_valid", r.preflow_valid},
                   {"sink_gain_after", r.sink_gain_after}});
  }
  auto& claims = j["claim_verdicts"];
  claims["sink_gain_monotone"] = report.claims.sink_gain_monotone;
  claims["saturate_or_discharge"] = report.claims.saturate_or_discharge;
  claims["augments_bounded"] = report.claims.augments_bounded;
  claims["core_acyclic_each_iteration"] = report.claims.core_acyclic_each_iteration;
  claims["preflow_valid_each_pass"] = report.claims.preflow_valid_each_pass;
  if (report.claims.matches_oracle) claims["matches_oracle"] = *report.claims.matches_oracle;
  return j;
}

nlohmann::ordered_json evaluation_to_json(const InstanceEvaluation& eval) {
  nlohmann::ordered_json j;
  j["instance"] = eval.instance.label;
  j["id"] = eval.id;
  j["n"] = eval.n;
  j["m"] = eval.m;
  j["flow_value"] = eval.report.flow_value;
  j["oracle_value"] = eval.oracle_value;
  j["cut_value"] = eval.cut_value ? nlohmann::ordered_json(*eval.cut_value) : nlohmann::ordered_json();
  j["iterations"] = eval.report.iterations;
  j["total_augments"] = eval.report.total_augments;
  j["terminated_by"] = to_string(eval.report.terminated_by);
  auto& verdicts = j["verdicts"] = nlohmann::ordered_json::object();
  for (const auto* group : {&eval.hard, &eval.claims}) {
    for (const auto& v : *group) {
      verdicts[v.claim] = v.holds ? nlohmann::ordered_json(*v.holds) : nlohmann::ordered_json();
    }
  }
  if (!eval.error.empty()) j["error"] = eval.error;
  return j;
}

nlohmann::ordered_json VerifySummary::to_json() const {
  nlohmann::ordered_json j;
  auto& s = j["summary"];
  s["instances"] = instances;
  s["hard_invariants_pass"] = hard_invariants_pass;
  auto tally = [](const std::vector<std::pair<std::string, ClaimTally>>& rows) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [name, t] : rows) {
      out[name] = {{"held", t.held},
                   {"evaluated", t.evaluated},
                   {"rate", t.evaluated ? static_cast<double>(t.held) / static_cast<double>(t.evaluated) : 1.0}};
    }
    return out;
  };
  s["hard_invariants"] = tally(hard);
  s["claim_agreement"] = tally(claims);
  s["counterexamples"] = counterexamples.size();
  return j;
}

VerifySummary run_verify(std::span<const LabeledInstance> items, const EvaluateOptions& options,
                         std::ostream& out,
                         const std::optional<std::filesystem::path>& counterexample_dir) {
  VerifySummary summary;
  for (const auto* name : kHardInvariants) summary.hard.emplace_back(name, ClaimTally{});
  for (const auto* name : kClaims) summary.claims.emplace_back(name, ClaimTally{});
  if (counterexample_dir) std::filesystem::create_directories(*counterexample_dir);

  for (const auto& item : items) {
    const InstanceEvaluation eval = evaluate_instance(item, options);
    ++summary.instances;
    for (auto* rows : {&summary.hard, &summary.claims}) {
      const auto& verdicts = rows == &summary.hard ? eval.hard : eval.claims;
      for (auto& [name, t] : *rows) {
        if (const auto holds = find_verdict(verdicts, name)) {
          ++t.evaluated;
          if (*holds) ++t.held;
        }
      }
    }
    summary.hard_invariants_pass = summary.hard_invariants_pass && eval.hard_ok();
    out << evaluation_to_json(eval).dump() << '\n';

    if (!eval.all_ok() && counterexample_dir) {
      const auto path = *counterexample_dir / (item.id + ".max");
      std::ofstream file(path, std::ios::binary);
      file << write_dimacs(item.instance);
      summary.counterexamples.push_back(path);
    }
  }
  out << summary.to_json().dump() << '\n';
  return summary;
}

std::vector<LabeledInstance> family_instances(const FamilySpec& spec) {
  std::vector<LabeledInstance> items;
  items.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    if (spec.family == "random") {
      const std::uint64_t seed = spec.seed + i;
      items.push_back({"seed_" + std::to_string(seed), gen_sweep(seed, spec.n, spec.m, spec.max_cap)});
    } else if (spec.family == "line") {
      const auto k = static_cast<std::int32_t>(i + 1);
      items.push_back({"line_k" + std::to_string(k), gen_line(k, spec.max_cap)});
    } else if (spec.family == "layered") {
      const auto layers = static_cast<std::int32_t>(i + 1);
      items.push_back({"layered_L" + std::to_string(layers) + "_W" + std::to_string(spec.width),
                       gen_layered_blocking(layers, spec.width, default_profile(layers))});
    } else {
      throw FlowError(ErrorCode::InvalidArgument, "unknown family '" + spec.family + "'");
    }
  }
  return items;
}

std::vector<BenchRow> run_bench(const FamilySpec& spec, std::span<const std::int64_t> sizes,
                                std::int64_t max_iterations) {
  std::vector<BenchRow> rows;
  for (const auto size : sizes) {
    Instance inst;
    const auto sz = static_cast<std::int32_t>(size);
    if (spec.family == "line") {
      inst = gen_line(sz, spec.max_cap);
    } else if (spec.family == "layered") {
      inst = gen_layered_blocking(sz, spec.width, default_profile(sz));
    } else if (spec.family == "random") {
      inst = gen_random(sz, 4 * sz, spec.max_cap, spec.seed);
    } else {
      throw FlowError(ErrorCode::InvalidArgument, "unknown family '" + spec.family + "'");
    }
    const Network net = build_network(inst);
    const auto start = std::chrono::steady_clock::now();
    const RunResult result = run(net, RunLimits{max_iterations, false});
    const auto stop = std::chrono::steady_clock::now();

    BenchRow row;
    row.family = spec.family;
    row.param = size;
    row.n = net.vertex_count();
    row.m = net.input_arc_count();
    row.flow_value = result.report.flow_value;
    row.iterations = result.report.iterations;
    row.total_augments = result.report.total_augments;
    row.sqrt_n = ceil_sqrt(row.n);
    row.ratio = static_cast<double>(row.iterations) / static_cast<double>(row.sqrt_n);
    row.terminated_by = result.report.terminated_by;
    row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    rows.push_back(row);
  }
  return rows;
}

void write_bench_csv(std::span<const BenchRow> rows, std::ostream& out) {
  out << "family,param,n,m,flow_value,iterations,total_augments,sqrt_n,ratio,terminated_by,wall_ms\n";
  for (const auto& r : rows) {
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.4f", r.ratio);
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
    out << r.family << ',' << r.param << ',' << r.n << ',' << r.m << ',' << r.flow_value << ','
        << r.iterations << ',' << r.total_augments << ',' << r.sqrt_n << ',' << ratio << ','
        << to_string(r.terminated_by) << ',' << wall << '\n';
  }
}

nlohmann::ordered_json bench_to_json(std::span<const BenchRow> rows) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({{"family", r.family},
                   {"param", r.param},
                   {"n", r.n},
                   {"m", r.m},
                   {"flow_value", r.flow_value},
                   {"iterations", r.iterations},
                   {"total_augments", r.total_augments},
                   {"sqrt_n", r.sqrt_n},
                   {"ratio", r.ratio},
                   {"terminated_by", to_string(r.terminated_by)},
                   {"wall_ms", r.wall_ms}});
  }
  return out;
}

}  // namespace sortflow
