#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sortflow/engine.hpp"
#include "sortflow/instance.hpp"

namespace sortflow {

/// A named boolean check. `holds` is empty when the check does not apply
/// (restoration on a run that hit the iteration cap).
struct Verdict {
  std::string claim;
  std::optional<bool> holds;
};

/// Hard invariants follow from preflow theory and gate the verify exit code.
inline constexpr const char* kHardInvariants[] = {
    "preflow_valid", "sink_bound", "core_acyclic", "deterministic",
    "arc_touch_bound", "push_bound", "restoration",
};

/// Claims are measured and reported, never enforced.
inline constexpr const char* kClaims[] = {
    "matches_oracle", "sink_gain_monotone", "saturate_or_discharge",
    "augments_linear", "iterations_sqrt_bound",
};

struct LabeledInstance {
  std::string id;  // counterexample file stem
  Instance instance;
};

struct EvaluateOptions {
  std::int64_t max_iterations = -1;
};

struct InstanceEvaluation {
  std::string id;
  Instance instance;
  VertexId n = 0;
  std::size_t m = 0;
  Capacity oracle_value = 0;
  std::optional<Capacity> cut_value;
  RunReport report;
  std::vector<Verdict> hard;
  std::vector<Verdict> claims;
  std::string error;

  bool hard_ok() const;
  bool all_ok() const;
};

std::int64_t ceil_sqrt(std::int64_t n);

/// Runs engine, oracle, certificate and restoration on one instance and
/// evaluates every hard invariant and claim.
InstanceEvaluation evaluate_instance(const LabeledInstance& item, const EvaluateOptions& options = {});

nlohmann::ordered_json report_to_json(const RunReport& report);
nlohmann::ordered_json evaluation_to_json(const InstanceEvaluation& eval);

struct ClaimTally {
  std::size_t held = 0;
  std::size_t evaluated = 0;
};

struct VerifySummary {
  std::size_t instances = 0;
  bool hard_invariants_pass = true;
  std::vector<std::pair<std::string, ClaimTally>> hard;
  std::vector<std::pair<std::string, ClaimTally>> claims;
  std::vector<std::filesystem::path> counterexamples;

  nlohmann::ordered_json to_json() const;
};

/// Evaluates every instance, writes one JSON line each plus a final summary
/// line to `out`, and stores instances with any false verdict as DIMACS files
/// in `counterexample_dir` (when given).
VerifySummary run_verify(std::span<const LabeledInstance> items, const EvaluateOptions& options,
                         std::ostream& out,
                         const std::optional<std::filesystem::path>& counterexample_dir);

struct FamilySpec {
  std::string family = "random";  // random | line | layered
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  std::int32_t n = 40;
  std::int32_t m = 200;
  Capacity max_cap = 20;
  std::int32_t width = 1;
};

/// Instances for cmd_verify: seeds [seed, seed+count) for "random",
/// k = 1..count for "line", L = 1..count for "layered".
std::vector<LabeledInstance> family_instances(const FamilySpec& spec);

struct BenchRow {
  std::string family;
  std::int64_t param = 0;
  VertexId n = 0;
  std::size_t m = 0;
  Capacity flow_value = 0;
  std::int64_t iterations = 0;
  std::size_t total_augments = 0;
  std::int64_t sqrt_n = 0;
  double ratio = 0.0;
  Termination terminated_by = Termination::Converged;
  double wall_ms = 0.0;
};

/// One row per size. line: k = size; layered: L = size with default profile;
/// random: n = size, m = 4n.
std::vector<BenchRow> run_bench(const FamilySpec& spec, std::span<const std::int64_t> sizes,
                                std::int64_t max_iterations = -1);

void write_bench_csv(std::span<const BenchRow> rows, std::ostream& out);
nlohmann::ordered_json bench_to_json(std::span<const BenchRow> rows);

}  // namespace sortflow
