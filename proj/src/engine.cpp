#include "sortflow/engine.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "sortflow/error.hpp"

namespace sortflow {

const char* to_string(Termination t) noexcept {
  return t == Termination::Converged ? "converged" : "iteration_cap";
}

FlowState initialize(const Network& net) {
  FlowState state;
  state.residual.reserve(net.arc_count());
  for (const Arc& arc : net.arcs()) state.residual.push_back(arc.capacity);
  state.excess.assign(static_cast<std::size_t>(net.vertex_count()), 0);
  state.excess[static_cast<std::size_t>(net.source())] = kUnboundedExcess;
  return state;
}

SearchOrder bfss(const Network& net, const FlowState& state) {
  const auto n = static_cast<std::size_t>(net.vertex_count());
  const VertexId s = net.source();
  const VertexId t = net.sink();

  SearchOrder out;
  out.order.resize(n);
  out.dist.assign(n, kUnreached);
  out.state.assign(n, VisitState::NotFound);
  out.dequeue_rank.assign(n, kUnreached);
  std::vector<std::uint8_t> touches(net.arc_count(), 0);

  std::queue<VertexId> queue;
  queue.push(t);
  out.state[static_cast<std::size_t>(t)] = VisitState::Used;
  out.dist[static_cast<std::size_t>(t)] = 0;

  std::int32_t rank = 0;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop();
    const auto vi = static_cast<std::size_t>(v);
    out.dequeue_rank[vi] = rank++;
    out.state[vi] = VisitState::Used;
    if (v != t && (v == s || excess(state, v) > 0)) out.priority.push_back(v);

    // Ingoing arcs of v are the companions of its outgoing arcs.
    for (const ArcId out_arc : net.out_arcs(v)) {
      const ArcId in = Network::companion(out_arc);
      ++touches[static_cast<std::size_t>(in)];
      if (residual_capacity(state, in) <= 0) continue;
      const VertexId u = net.arc(in).tail;
      const auto ui = static_cast<std::size_t>(u);
      if (out.state[ui] == VisitState::Used) continue;
      out.order[ui].push_back(in);
      ++touches[static_cast<std::size_t>(in)];
      ++out.core_arcs;
      if (out.state[ui] == VisitState::NotFound) {
        out.state[ui] = VisitState::Found;
        out.dist[ui] = out.dist[vi] + 1;
        queue.push(u);
      }
    }
  }

  for (const auto c : touches) {
    out.arc_touches += c;
    out.max_arc_touches = std::max<std::uint32_t>(out.max_arc_touches, c);
  }
  out.augmenting_exists = std::any_of(out.priority.begin(), out.priority.end(), [&](VertexId v) {
    return v == s ? !out.order[static_cast<std::size_t>(s)].empty() : excess(state, v) > 0;
  });
  return out;
}

std::size_t push_augment_limit(const Network& net) {
  const auto m = net.input_arc_count();
  const auto n = static_cast<std::size_t>(net.vertex_count());
  return 2 * (m + n) * n;
}

PushStats push(const Network& net, FlowState& state, const SearchOrder& order) {
  const VertexId s = net.source();
  const VertexId t = net.sink();
  const std::size_t limit = push_augment_limit(net);

  PushStats stats;
  std::deque<VertexId> active = order.priority;
  std::vector<std::size_t> cursor(static_cast<std::size_t>(net.vertex_count()), 0);
  const Capacity gain_before = state.sink_gain;

  while (!active.empty()) {
    const VertexId v = active.front();
    active.pop_front();
    const auto vi = static_cast<std::size_t>(v);
    const auto& arcs = order.order[vi];
    auto& pos = cursor[vi];

    while (pos < arcs.size() && excess(state, v) > 0) {
      const ArcId a = arcs[pos];
      ++stats.arc_touches;
      const Capacity r = residual_capacity(state, a);
      if (r == 0) {
        ++pos;
        continue;
      }
      const Capacity delta = v == s ? r : std::min(excess(state, v), r);
      const VertexId w = net.arc(a).head;
      if (w != s && w != t && excess(state, w) == 0) {
        active.push_front(w);
        ++stats.reactivations;
      }
      augment(net, state, a, delta);
      ++stats.augments;
      if (delta == r) {
        ++stats.saturating_augments;
        ++pos;
      }
      if (v != s && excess(state, v) == 0) ++stats.discharges;
      if (stats.augments > limit) {
        throw FlowError(ErrorCode::NonTerminatingPush,
                        "push exceeded " + std::to_string(limit) + " augments");
      }
    }
  }
  stats.sink_gain_delta = state.sink_gain - gain_before;
  return stats;
}

bool core_is_acyclic(const Network& net, const SearchOrder& order) {
  const auto n = static_cast<std::size_t>(net.vertex_count());
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& arcs : order.order) {
    for (const ArcId a : arcs) ++indegree[static_cast<std::size_t>(net.arc(a).head)];
  }
  std::vector<VertexId> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(static_cast<VertexId>(v));
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const VertexId v = ready.back();
    ready.pop_back();
    ++visited;
    for (const ArcId a : order.order[static_cast<std::size_t>(v)]) {
      const auto h = static_cast<std::size_t>(net.arc(a).head);
      if (--indegree[h] == 0) ready.push_back(static_cast<VertexId>(h));
    }
  }
  return visited == n;
}

RunResult run(const Network& net, const RunLimits& limits) {
  const std::int64_t cap =
      limits.max_iterations < 0 ? 10 * static_cast<std::int64_t>(net.vertex_count())
                                : limits.max_iterations;
  const auto linear_bound =
      2 * (net.input_arc_count() + static_cast<std::size_t>(net.vertex_count()));

  RunResult result{initialize(net), {}};
  auto& report = result.report;
  auto& claims = report.claims;

  for (;;) {
    if (report.iterations >= cap) {
      report.terminated_by = Termination::IterationCap;
      break;
    }
    const SearchOrder order = bfss(net, result.state);
    report.total_arc_touches += order.arc_touches;
    if (!order.augmenting_exists) {
      report.terminated_by = Termination::Converged;
      break;
    }

    IterationRecord record;
    record.bfss_arc_touches = order.arc_touches;
    record.bfss_max_arc_touches = order.max_arc_touches;
    record.core_arcs = order.core_arcs;
    record.initial_active = order.priority.size();
    record.core_acyclic = core_is_acyclic(net, order);

    record.push = push(net, result.state, order);
    record.sink_gain_after = result.state.sink_gain;
    if (limits.validate_each_pass) {
      record.preflow_valid = validate_preflow(net, result.state).empty();
    }

    report.total_augments += record.push.augments;
    report.total_arc_touches += record.push.arc_touches;
    claims.sink_gain_monotone = claims.sink_gain_monotone && record.push.sink_gain_delta >= 1;
    claims.saturate_or_discharge =
        claims.saturate_or_discharge &&
        (record.push.saturating_augments > 0 || record.push.discharges > 0);
    claims.augments_bounded = claims.augments_bounded && record.push.augments <= linear_bound;
    claims.core_acyclic_each_iteration = claims.core_acyclic_each_iteration && record.core_acyclic;
    claims.preflow_valid_each_pass = claims.preflow_valid_each_pass && record.preflow_valid;

    report.per_iteration.push_back(record);
    ++report.iterations;
  }
  report.flow_value = flow_value(result.state);
  return result;
}

FlowState restore_flow(const Network& net, FlowState state) {
  const auto n = static_cast<std::size_t>(net.vertex_count());
  const VertexId s = net.source();
  const VertexId t = net.sink();
  std::vector<ArcId> parent(n);
  std::vector<char> seen(n);

  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (v == s || v == t) continue;
    while (excess(state, v) > 0) {
      // BFS from v over reverse companions with positive residual, i.e. back
      // along input arcs that carry flow, avoiding the sink.
      std::fill(seen.begin(), seen.end(), 0);
      std::queue<VertexId> queue;
      queue.push(v);
      seen[static_cast<std::size_t>(v)] = 1;
      while (!queue.empty() && !seen[static_cast<std::size_t>(s)]) {
        const VertexId x = queue.front();
        queue.pop();
        for (const ArcId a : net.out_arcs(x)) {
          if (!net.arc(a).is_reverse || residual_capacity(state, a) <= 0) continue;
          const VertexId y = net.arc(a).head;
          const auto yi = static_cast<std::size_t>(y);
          if (seen[yi] || y == t) continue;
          seen[yi] = 1;
          parent[yi] = a;
          queue.push(y);
        }
      }
      if (!seen[static_cast<std::size_t>(s)]) {
        throw FlowError(ErrorCode::RestorationFailed,
                        "vertex " + std::to_string(v) + " has excess but no flow path to source");
      }

      std::vector<ArcId> path;
      Capacity delta = excess(state, v);
      for (VertexId y = s; y != v; y = net.arc(parent[static_cast<std::size_t>(y)]).tail) {
        const ArcId a = parent[static_cast<std::size_t>(y)];
        path.push_back(a);
        delta = std::min(delta, residual_capacity(state, a));
      }
      std::reverse(path.begin(), path.end());
      for (const ArcId a : path) augment(net, state, a, delta);
    }
  }
  return state;
}

}  // namespace sortflow
