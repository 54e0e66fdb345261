#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "sortflow/network.hpp"

namespace sortflow {

enum class VisitState : std::uint8_t { NotFound = 0, Found = 1, Used = 2 };

inline constexpr std::int32_t kUnreached = -1;

/// Output of one reverse-BFS sorting pass.
///
/// `order[v]` is the ordered list of residual arcs out of v that point at
/// vertices dequeued before v; together they form an acyclic core oriented
/// toward the sink.
struct SearchOrder {
  std::vector<std::vector<ArcId>> order;
  std::vector<std::int32_t> dist;
  std::vector<VisitState> state;
  std::vector<std::int32_t> dequeue_rank;
  std::deque<VertexId> priority;
  bool augmenting_exists = false;

  // Instrumentation.
  std::size_t arc_touches = 0;
  std::uint32_t max_arc_touches = 0;
  std::size_t core_arcs = 0;
};

struct PushStats {
  std::size_t augments = 0;
  std::size_t saturating_augments = 0;
  std::size_t reactivations = 0;
  std::size_t discharges = 0;  // augments that left a non-source tail with zero excess
  std::size_t arc_touches = 0;
  Capacity sink_gain_delta = 0;

  friend bool operator==(const PushStats&, const PushStats&) = default;
};

struct IterationRecord {
  PushStats push;
  std::size_t bfss_arc_touches = 0;
  std::uint32_t bfss_max_arc_touches = 0;
  std::size_t core_arcs = 0;
  std::size_t initial_active = 0;
  bool core_acyclic = true;
  bool preflow_valid = true;
  Capacity sink_gain_after = 0;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

enum class Termination { Converged, IterationCap };

const char* to_string(Termination t) noexcept;

struct ClaimVerdicts {
  bool sink_gain_monotone = true;
  bool saturate_or_discharge = true;
  bool augments_bounded = true;
  bool core_acyclic_each_iteration = true;
  bool preflow_valid_each_pass = true;
  std::optional<bool> matches_oracle;

  friend bool operator==(const ClaimVerdicts&, const ClaimVerdicts&) = default;
};

struct RunReport {
  Capacity flow_value = 0;
  std::int64_t iterations = 0;
  std::size_t total_augments = 0;
  std::size_t total_arc_touches = 0;
  std::vector<IterationRecord> per_iteration;
  Termination terminated_by = Termination::Converged;
  ClaimVerdicts claims;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

struct RunLimits {
  /// Negative selects the default of 10 * n.
  std::int64_t max_iterations = -1;
  /// Run validate_preflow after every push.
  bool validate_each_pass = true;
};

struct RunResult {
  FlowState state;
  RunReport report;
};

/// Zero flow: residuals equal capacities, e(s) is the unbounded sentinel.
FlowState initialize(const Network& net);

/// Reverse BFS from the sink over positive-residual arcs, recording the
/// per-vertex arc order and the deque of vertices holding excess.
SearchOrder bfss(const Network& net, const FlowState& state);

/// Discharges excess along the arcs of `order`. Newly activated vertices are
/// processed first; a reactivated vertex resumes at its saved arc cursor.
/// Throws NonTerminatingPush when augments exceed 2 (m + n) n.
PushStats push(const Network& net, FlowState& state, const SearchOrder& order);

/// Alternates bfss and push until no augmenting path remains or the iteration
/// cap is reached.
RunResult run(const Network& net, const RunLimits& limits = {});

/// Returns stranded excess to the source along flow-carrying arcs so that the
/// result is a strict flow of the same value. Throws RestorationFailed if an
/// excess vertex has no such path.
FlowState restore_flow(const Network& net, FlowState state);

/// Topological check of the union of `order` lists (Kahn's algorithm).
bool core_is_acyclic(const Network& net, const SearchOrder& order);

/// Push augment bound per pass that triggers NonTerminatingPush.
std::size_t push_augment_limit(const Network& net);

}  // namespace sortflow
