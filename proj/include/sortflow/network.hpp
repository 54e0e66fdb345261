#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace sortflow {

using VertexId = std::int32_t;
using ArcId = std::int32_t;
using Capacity = std::int64_t;

/// Excess value reported for the source; pushes out of s are bounded only by residuals.
inline constexpr Capacity kUnboundedExcess = std::numeric_limits<Capacity>::max();

/// Upper bound on the summed input capacity (and on n * max capacity).
inline constexpr Capacity kMaxTotalCapacity = Capacity{1} << 62;

struct ArcSpec {
  VertexId tail = 0;
  VertexId head = 0;
  Capacity capacity = 0;

  friend bool operator==(const ArcSpec&, const ArcSpec&) = default;
};

struct Arc {
  VertexId tail = 0;
  VertexId head = 0;
  Capacity capacity = 0;
  bool is_reverse = false;
};

/// Immutable directed network with paired arcs.
///
/// Input arc i is stored at id 2i and its zero-capacity reverse companion at
/// 2i+1, so the companion of any arc is found by flipping the lowest bit.
/// Outgoing adjacency of every vertex lists arc ids in creation order.
class Network {
 public:
  VertexId vertex_count() const noexcept { return vertex_count_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  std::size_t input_arc_count() const noexcept { return arcs_.size() / 2; }
  VertexId source() const noexcept { return source_; }
  VertexId sink() const noexcept { return sink_; }

  const Arc& arc(ArcId a) const { return arcs_[static_cast<std::size_t>(a)]; }
  std::span<const Arc> arcs() const noexcept { return arcs_; }

  std::span<const ArcId> out_arcs(VertexId v) const {
    const auto begin = offsets_[static_cast<std::size_t>(v)];
    const auto end = offsets_[static_cast<std::size_t>(v) + 1];
    return std::span<const ArcId>(adjacency_).subspan(begin, end - begin);
  }

  static constexpr ArcId companion(ArcId a) noexcept { return a ^ 1; }

 private:
  friend Network build_network(VertexId, std::span<const ArcSpec>, VertexId, VertexId);

  VertexId vertex_count_ = 0;
  VertexId source_ = 0;
  VertexId sink_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> offsets_;
  std::vector<ArcId> adjacency_;
};

/// Builds a network; throws FlowError on invalid vertices, s == t, self-loops,
/// negative capacities or capacity totals past kMaxTotalCapacity.
Network build_network(VertexId n, std::span<const ArcSpec> arcs, VertexId s, VertexId t);

/// Residual capacities and preflow excesses for one network.
///
/// excess[s] holds kUnboundedExcess and never changes; excess[t] mirrors
/// sink_gain.
struct FlowState {
  std::vector<Capacity> residual;
  std::vector<Capacity> excess;
  Capacity sink_gain = 0;

  friend bool operator==(const FlowState&, const FlowState&) = default;
};

inline Capacity residual_capacity(const FlowState& state, ArcId a) {
  return state.residual[static_cast<std::size_t>(a)];
}

inline Capacity excess(const FlowState& state, VertexId v) {
  return state.excess[static_cast<std::size_t>(v)];
}

inline Capacity flow_value(const FlowState& state) noexcept { return state.sink_gain; }

/// Moves delta units along arc a. Throws NonPositiveDelta for delta <= 0 and
/// ResidualExceeded when delta is larger than the residual of a.
void augment(const Network& net, FlowState& state, ArcId a, Capacity delta);

/// Net flow on every input arc, recovered from residuals. Flow on
/// anti-parallel input arcs is cancelled pairwise so that at most one
/// direction between two vertices carries flow.
std::vector<Capacity> recover_flow(const Network& net, const FlowState& state);

struct Violation {
  enum class Kind {
    PairTotal,
    ResidualRange,
    NegativeExcess,
    ExcessIdentity,
    SinkGain,
    SourceSentinel,
    Shape,
  };
  Kind kind;
  std::int64_t id;  // arc or vertex, depending on kind
  std::string message;
};

/// Empty iff every FlowState invariant holds.
std::vector<Violation> validate_preflow(const Network& net, const FlowState& state);

}  // namespace sortflow
