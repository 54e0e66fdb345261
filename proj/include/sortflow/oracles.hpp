#pragma once

#include <optional>
#include <vector>

#include "sortflow/network.hpp"

namespace sortflow {

/// Max-flow value with optional certificates. When both are present,
/// value == capacity(cut) == value of flow.
struct OracleResult {
  Capacity value = 0;
  std::optional<std::vector<bool>> source_side;  // S-side membership per vertex
  std::optional<std::vector<Capacity>> flow;     // per input arc
};

/// Shortest-augmenting-path (Edmonds-Karp) maximum flow. Shares only the
/// Network type with the sorting-flow engine.
OracleResult max_flow_reference(const Network& net);

/// Exact minimum s-t cut by enumerating every vertex subset. Throws TooLarge
/// for more than 16 vertices.
OracleResult min_cut_brute_force(const Network& net);

/// Cut made of the vertices NOT reached by a reverse residual BFS from t.
/// Throws SourceReachedSink if s still reaches t.
OracleResult certify_cut(const Network& net, const FlowState& state);

/// Total input capacity of arcs leaving the S side.
Capacity cut_capacity(const Network& net, const std::vector<bool>& source_side);

}  // namespace sortflow
