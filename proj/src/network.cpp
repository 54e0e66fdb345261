#include "sortflow/network.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "sortflow/error.hpp"

namespace sortflow {

namespace {

std::string arc_name(ArcId a, const Arc& arc) {
  return "arc " + std::to_string(a) + " (" + std::to_string(arc.tail) + "->" +
         std::to_string(arc.head) + ")";
}

}  // namespace

Network build_network(VertexId n, std::span<const ArcSpec> arcs, VertexId s, VertexId t) {
  if (n < 2) {
    throw FlowError(ErrorCode::InvalidVertex, "network needs at least two vertices");
  }
  auto in_range = [n](VertexId v) { return v >= 0 && v < n; };
  if (!in_range(s) || !in_range(t)) {
    throw FlowError(ErrorCode::InvalidVertex, "source or sink out of range");
  }
  if (s == t) {
    throw FlowError(ErrorCode::SourceEqualsSink, "source and sink are both " + std::to_string(s));
  }
  if (arcs.size() > static_cast<std::size_t>(std::numeric_limits<ArcId>::max() / 2)) {
    throw FlowError(ErrorCode::TooLarge, "too many arcs");
  }

  Capacity total = 0;
  Capacity max_cap = 0;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& spec = arcs[i];
    const std::string where = "input arc " + std::to_string(i);
    if (!in_range(spec.tail) || !in_range(spec.head)) {
      throw FlowError(ErrorCode::InvalidVertex, where + " has an endpoint out of range");
    }
    if (spec.tail == spec.head) {
      throw FlowError(ErrorCode::SelfLoop, where + " is a self-loop on " + std::to_string(spec.tail));
    }
    if (spec.capacity < 0) {
      throw FlowError(ErrorCode::InvalidArgument, where + " has negative capacity");
    }
    if (spec.capacity > kMaxTotalCapacity - total) {
      throw FlowError(ErrorCode::CapacityOverflow, "summed capacity exceeds accumulator range");
    }
    total += spec.capacity;
    max_cap = std::max(max_cap, spec.capacity);
  }
  if (max_cap > 0 && max_cap > kMaxTotalCapacity / n) {
    throw FlowError(ErrorCode::CapacityOverflow, "n * max capacity exceeds accumulator range");
  }

  Network net;
  net.vertex_count_ = n;
  net.source_ = s;
  net.sink_ = t;
  net.arcs_.reserve(arcs.size() * 2);
  std::vector<std::size_t> degree(static_cast<std::size_t>(n), 0);
  for (const auto& spec : arcs) {
    net.arcs_.push_back(Arc{spec.tail, spec.head, spec.capacity, false});
    net.arcs_.push_back(Arc{spec.head, spec.tail, 0, true});
    ++degree[static_cast<std::size_t>(spec.tail)];
    ++degree[static_cast<std::size_t>(spec.head)];
  }

  net.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t v = 0; v < degree.size(); ++v) {
    net.offsets_[v + 1] = net.offsets_[v] + degree[v];
  }
  net.adjacency_.resize(net.arcs_.size());
  std::vector<std::size_t> fill(net.offsets_.begin(), net.offsets_.end() - 1);
  for (ArcId a = 0; a < static_cast<ArcId>(net.arcs_.size()); ++a) {
    const auto tail = static_cast<std::size_t>(net.arcs_[static_cast<std::size_t>(a)].tail);
    net.adjacency_[fill[tail]++] = a;
  }
  return net;
}

void augment(const Network& net, FlowState& state, ArcId a, Capacity delta) {
  if (delta <= 0) {
    throw FlowError(ErrorCode::NonPositiveDelta, "augment by " + std::to_string(delta));
  }
  auto& forward = state.residual[static_cast<std::size_t>(a)];
  if (delta > forward) {
    throw FlowError(ErrorCode::ResidualExceeded,
                    arc_name(a, net.arc(a)) + ": delta " + std::to_string(delta) +
                        " > residual " + std::to_string(forward));
  }
  forward -= delta;
  state.residual[static_cast<std::size_t>(Network::companion(a))] += delta;

  const Arc& arc = net.arc(a);
  const VertexId s = net.source();
  const VertexId t = net.sink();
  if (arc.tail != s) {
    state.excess[static_cast<std::size_t>(arc.tail)] -= delta;
    if (arc.tail == t) state.sink_gain -= delta;
  }
  if (arc.head != s) {
    state.excess[static_cast<std::size_t>(arc.head)] += delta;
    if (arc.head == t) state.sink_gain += delta;
  }
}

std::vector<Capacity> recover_flow(const Network& net, const FlowState& state) {
  const std::size_t m = net.input_arc_count();
  std::vector<Capacity> flow(m);
  for (std::size_t i = 0; i < m; ++i) {
    flow[i] = net.arcs()[2 * i].capacity - state.residual[2 * i];
  }

  // Group input arcs by unordered endpoint pair and cancel opposing flow.
  std::map<std::pair<VertexId, VertexId>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < m; ++i) {
    const Arc& arc = net.arcs()[2 * i];
    groups[{std::min(arc.tail, arc.head), std::max(arc.tail, arc.head)}].push_back(i);
  }
  for (const auto& [key, members] : groups) {
    Capacity forward = 0;
    Capacity backward = 0;
    for (auto i : members) {
      (net.arcs()[2 * i].tail == key.first ? forward : backward) += std::max<Capacity>(flow[i], 0);
    }
    Capacity cancel_forward = std::min(forward, backward);
    Capacity cancel_backward = cancel_forward;
    for (auto i : members) {
      auto& budget = net.arcs()[2 * i].tail == key.first ? cancel_forward : cancel_backward;
      const Capacity take = std::min(budget, std::max<Capacity>(flow[i], 0));
      flow[i] -= take;
      budget -= take;
    }
  }
  return flow;
}

std::vector<Violation> validate_preflow(const Network& net, const FlowState& state) {
  std::vector<Violation> out;
  const auto n = static_cast<std::size_t>(net.vertex_count());
  if (state.residual.size() != net.arc_count() || state.excess.size() != n) {
    out.push_back({Violation::Kind::Shape, -1, "state dimensions do not match network"});
    return out;
  }

  const auto arcs = net.arcs();
  std::vector<Capacity> balance(n, 0);
  for (std::size_t a = 0; a < arcs.size(); a += 2) {
    const Capacity pair_total = arcs[a].capacity + arcs[a + 1].capacity;
    const Capacity r0 = state.residual[a];
    const Capacity r1 = state.residual[a + 1];
    if (r0 + r1 != pair_total) {
      out.push_back({Violation::Kind::PairTotal, static_cast<std::int64_t>(a),
                     arc_name(static_cast<ArcId>(a), arcs[a]) + ": residual pair sums to " +
                         std::to_string(r0 + r1) + ", expected " + std::to_string(pair_total)});
    }
    for (std::size_t b : {a, a + 1}) {
      const Capacity r = state.residual[b];
      if (r < 0 || r > pair_total) {
        out.push_back({Violation::Kind::ResidualRange, static_cast<std::int64_t>(b),
                       arc_name(static_cast<ArcId>(b), arcs[b]) + ": residual " +
                           std::to_string(r) + " outside [0, " + std::to_string(pair_total) + "]"});
      }
    }
    const Capacity f = arcs[a].capacity - r0;
    balance[static_cast<std::size_t>(arcs[a].head)] += f;
    balance[static_cast<std::size_t>(arcs[a].tail)] -= f;
  }

  const auto s = static_cast<std::size_t>(net.source());
  const auto t = static_cast<std::size_t>(net.sink());
  if (state.excess[s] != kUnboundedExcess) {
    out.push_back({Violation::Kind::SourceSentinel, static_cast<std::int64_t>(s),
                   "source excess is not the unbounded sentinel"});
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (v == s) continue;
    if (state.excess[v] < 0) {
      out.push_back({Violation::Kind::NegativeExcess, static_cast<std::int64_t>(v),
                     "vertex " + std::to_string(v) + " has excess " + std::to_string(state.excess[v])});
    }
    if (state.excess[v] != balance[v]) {
      out.push_back({Violation::Kind::ExcessIdentity, static_cast<std::int64_t>(v),
                     "vertex " + std::to_string(v) + ": excess " + std::to_string(state.excess[v]) +
                         " != inflow - outflow " + std::to_string(balance[v])});
    }
  }
  if (state.sink_gain != balance[t]) {
    out.push_back({Violation::Kind::SinkGain, static_cast<std::int64_t>(t),
                   "sink gain " + std::to_string(state.sink_gain) + " != net inflow " +
                       std::to_string(balance[t])});
  }
  return out;
}

}  // namespace sortflow
