#include "sortflow/oracles.hpp"

#include <algorithm>
#include <queue>

#include "sortflow/error.hpp"

namespace sortflow {

Capacity cut_capacity(const Network& net, const std::vector<bool>& source_side) {
  Capacity total = 0;
  for (const Arc& arc : net.arcs()) {
    if (arc.is_reverse) continue;
    if (source_side[static_cast<std::size_t>(arc.tail)] &&
        !source_side[static_cast<std::size_t>(arc.head)]) {
      total += arc.capacity;
    }
  }
  return total;
}

OracleResult max_flow_reference(const Network& net) {
  const auto n = static_cast<std::size_t>(net.vertex_count());
  const VertexId s = net.source();
  const VertexId t = net.sink();
  std::vector<Capacity> residual;
  residual.reserve(net.arc_count());
  for (const Arc& arc : net.arcs()) residual.push_back(arc.capacity);

  std::vector<ArcId> parent(n);
  std::vector<bool> reached(n);
  Capacity value = 0;
  for (;;) {
    std::fill(reached.begin(), reached.end(), false);
    std::queue<VertexId> queue;
    queue.push(s);
    reached[static_cast<std::size_t>(s)] = true;
    while (!queue.empty() && !reached[static_cast<std::size_t>(t)]) {
      const VertexId v = queue.front();
      queue.pop();
      for (const ArcId a : net.out_arcs(v)) {
        const auto w = static_cast<std::size_t>(net.arc(a).head);
        if (reached[w] || residual[static_cast<std::size_t>(a)] <= 0) continue;
        reached[w] = true;
        parent[w] = a;
        queue.push(static_cast<VertexId>(w));
      }
    }
    if (!reached[static_cast<std::size_t>(t)]) break;

    Capacity bottleneck = kUnboundedExcess;
    for (VertexId v = t; v != s; v = net.arc(parent[static_cast<std::size_t>(v)]).tail) {
      bottleneck = std::min(bottleneck, residual[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])]);
    }
    for (VertexId v = t; v != s; v = net.arc(parent[static_cast<std::size_t>(v)]).tail) {
      const ArcId a = parent[static_cast<std::size_t>(v)];
      residual[static_cast<std::size_t>(a)] -= bottleneck;
      residual[static_cast<std::size_t>(Network::companion(a))] += bottleneck;
    }
    value += bottleneck;
  }

  std::vector<Capacity> flow(net.input_arc_count());
  for (std::size_t i = 0; i < flow.size(); ++i) {
    flow[i] = net.arcs()[2 * i].capacity - residual[2 * i];
  }
  return OracleResult{value, reached, std::move(flow)};
}

OracleResult min_cut_brute_force(const Network& net) {
  const auto n = static_cast<std::size_t>(net.vertex_count());
  if (n > 16) {
    throw FlowError(ErrorCode::TooLarge, "brute-force cut limited to 16 vertices, got " +
                                             std::to_string(n));
  }
  const auto s = static_cast<std::size_t>(net.source());
  const auto t = static_cast<std::size_t>(net.sink());

  std::optional<Capacity> best;
  std::vector<bool> best_side;
  std::vector<bool> side(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask >> s & 1u) || (mask >> t & 1u)) continue;
    for (std::size_t v = 0; v < n; ++v) side[v] = (mask >> v) & 1u;
    const Capacity c = cut_capacity(net, side);
    if (!best || c < *best) {
      best = c;
      best_side = side;
    }
  }
  return OracleResult{*best, std::move(best_side), std::nullopt};
}

OracleResult certify_cut(const Network& net, const FlowState& state) {
  const auto n = static_cast<std::size_t>(net.vertex_count());
  std::vector<bool> reached(n, false);
  std::queue<VertexId> queue;
  queue.push(net.sink());
  reached[static_cast<std::size_t>(net.sink())] = true;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop();
    for (const ArcId out_arc : net.out_arcs(v)) {
      const ArcId in = Network::companion(out_arc);
      const auto u = static_cast<std::size_t>(net.arc(in).tail);
      if (reached[u] || residual_capacity(state, in) <= 0) continue;
      reached[u] = true;
      queue.push(static_cast<VertexId>(u));
    }
  }
  if (reached[static_cast<std::size_t>(net.source())]) {
    throw FlowError(ErrorCode::SourceReachedSink, "source still reaches sink in the residual graph");
  }
  std::vector<bool> source_side(n);
  for (std::size_t v = 0; v < n; ++v) source_side[v] = !reached[v];
  const Capacity value = cut_capacity(net, source_side);
  return OracleResult{value, std::move(source_side), std::nullopt};
}

}  // namespace sortflow
