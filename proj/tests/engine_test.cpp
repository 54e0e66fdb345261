#include <doctest.h>

#include <array>
#include <fstream>

#include <json.hpp>

#include "sortflow/engine.hpp"
#include "sortflow/error.hpp"
#include "sortflow/generators.hpp"
#include "sortflow/oracles.hpp"
#include "test_support.hpp"

using namespace sortflow;
using sortflow::testing::single_arc;

namespace {

using Endpoints = std::vector<std::vector<std::array<VertexId, 2>>>;

Endpoints order_endpoints(const Network& net, const SearchOrder& order) {
  Endpoints out(order.order.size());
  for (std::size_t v = 0; v < order.order.size(); ++v) {
    for (const ArcId a : order.order[v]) out[v].push_back({net.arc(a).tail, net.arc(a).head});
  }
  return out;
}

nlohmann::json load_golden() {
  std::ifstream file(SORTFLOW_GOLDEN_DIR "/two_iteration_trace.json");
  REQUIRE(file.good());
  return nlohmann::json::parse(file);
}

// Checks every SearchOrder property against the state it was built from.
void check_order_properties(const Network& net, const FlowState& state, const SearchOrder& order) {
  const auto t = static_cast<std::size_t>(net.sink());
  CHECK(order.order[t].empty());
  CHECK(order.max_arc_touches <= 2);
  CHECK(core_is_acyclic(net, order));
  for (std::size_t v = 0; v < order.order.size(); ++v) {
    for (const ArcId a : order.order[v]) {
      const auto head = static_cast<std::size_t>(net.arc(a).head);
      REQUIRE(static_cast<std::size_t>(net.arc(a).tail) == v);
      CHECK(residual_capacity(state, a) > 0);
      CHECK(order.dequeue_rank[head] < order.dequeue_rank[v]);
      CHECK(order.dist[head] <= order.dist[v]);
      CHECK(order.dist[v] <= order.dist[head] + 1);
    }
  }
  // Priority deque: reached vertices with excess (or s), in dequeue order.
  std::vector<VertexId> expected;
  std::vector<VertexId> by_rank(order.order.size(), -1);
  for (std::size_t v = 0; v < order.order.size(); ++v) {
    if (order.dequeue_rank[v] >= 0) by_rank[static_cast<std::size_t>(order.dequeue_rank[v])] = static_cast<VertexId>(v);
  }
  for (const VertexId v : by_rank) {
    if (v < 0 || v == net.sink()) continue;
    if (v == net.source() || excess(state, v) > 0) expected.push_back(v);
  }
  CHECK(std::vector<VertexId>(order.priority.begin(), order.priority.end()) == expected);
}

}  // namespace

TEST_CASE("initialize") {
  const Network net = single_arc(5);
  const FlowState state = initialize(net);
  CHECK(state.residual == std::vector<Capacity>{5, 0});
  CHECK(state.excess == std::vector<Capacity>{kUnboundedExcess, 0});
  CHECK(state.sink_gain == 0);
  CHECK(validate_preflow(net, state).empty());

  const Instance line = gen_line(4, 9);
  const Network line_net = build_network(line);
  const FlowState line_state = initialize(line_net);
  for (std::size_t i = 0; i < line.arcs.size(); ++i) CHECK(line_state.residual[2 * i] == 9);
}

TEST_CASE("bfss on a single arc") {
  const Network net = single_arc(5);
  FlowState state = initialize(net);
  const SearchOrder fresh = bfss(net, state);
  CHECK(fresh.augmenting_exists);
  CHECK(fresh.order[0] == std::vector<ArcId>{0});
  CHECK(std::vector<VertexId>(fresh.priority.begin(), fresh.priority.end()) == std::vector<VertexId>{0});
  check_order_properties(net, state, fresh);

  // Saturated: the companion t->s leaves t, it does not enter it, so s is unreached.
  augment(net, state, 0, 5);
  const SearchOrder after = bfss(net, state);
  CHECK_FALSE(after.augmenting_exists);
  CHECK(after.priority.empty());
  CHECK(after.state[0] == VisitState::NotFound);
  CHECK(after.dist[0] == kUnreached);
}

TEST_CASE("push on a single arc") {
  const Network net = single_arc(5);
  FlowState state = initialize(net);
  const PushStats stats = push(net, state, bfss(net, state));
  CHECK(stats.augments == 1);
  CHECK(stats.saturating_augments == 1);
  CHECK(stats.sink_gain_delta == 5);

  SUBCASE("empty deque is the identity") {
    const SearchOrder empty = bfss(net, state);
    REQUIRE(empty.priority.empty());
    const FlowState before = state;
    CHECK(push(net, state, empty) == PushStats{});
    CHECK(state == before);
  }
}

TEST_CASE("two-iteration family follows the golden trace") {
  const auto golden = load_golden();
  const Instance inst = gen_two_iteration();
  const Network net = build_network(inst);
  for (std::size_t i = 0; i < inst.arcs.size(); ++i) {
    const auto& g = golden["arcs"][i];
    CHECK(inst.arcs[i] == ArcSpec{g[0].get<VertexId>(), g[1].get<VertexId>(), g[2].get<Capacity>()});
  }

  FlowState state = initialize(net);
  for (const auto& step : golden["iterations"]) {
    const SearchOrder order = bfss(net, state);
    const auto& gb = step["bfss"];
    CHECK(order.augmenting_exists == gb["augmenting_exists"].get<bool>());
    CHECK(std::vector<VertexId>(order.priority.begin(), order.priority.end()) ==
          gb["priority"].get<std::vector<VertexId>>());
    CHECK(order_endpoints(net, order) == gb["order"].get<Endpoints>());
    CHECK(order.dist == gb["dist"].get<std::vector<std::int32_t>>());
    CHECK(order.dequeue_rank == gb["dequeue_rank"].get<std::vector<std::int32_t>>());
    check_order_properties(net, state, order);

    const PushStats stats = push(net, state, order);
    const auto& gp = step["push"];
    CHECK(stats.augments == gp["augments"].get<std::size_t>());
    CHECK(stats.saturating_augments == gp["saturating_augments"].get<std::size_t>());
    CHECK(stats.reactivations == gp["reactivations"].get<std::size_t>());
    CHECK(stats.sink_gain_delta == gp["sink_gain_delta"].get<Capacity>());
    for (const auto& [v, e] : step["excess_after"].items()) {
      CHECK(excess(state, std::stoi(v)) == e.get<Capacity>());
    }
    CHECK(state.sink_gain == step["sink_gain_after"].get<Capacity>());
    CHECK(validate_preflow(net, state).empty());
  }
  CHECK(bfss(net, state).augmenting_exists == golden["final"]["augmenting_exists"].get<bool>());

  const RunResult result = run(net);
  CHECK(result.report.flow_value == golden["final"]["flow_value"].get<Capacity>());
  CHECK(result.report.iterations == golden["final"]["iterations"].get<std::int64_t>());
  CHECK(result.state == state);
  CHECK(certify_cut(net, result.state).value == golden["final"]["cut_value"].get<Capacity>());
}

TEST_CASE("run on the line family") {
  SUBCASE("single arc") {
    const RunResult r = run(single_arc(5));
    CHECK(r.report.flow_value == 5);
    CHECK(r.report.iterations == 1);
    CHECK(r.report.terminated_by == Termination::Converged);
  }
  SUBCASE("s->a->b->t caps 3") {
    const RunResult r = run(build_network(gen_line(3, 3)));
    CHECK(r.report.flow_value == 3);
    CHECK(r.report.iterations == 1);
  }
  SUBCASE("zero capacity converges immediately") {
    const RunResult r = run(build_network(gen_line(1, 0)));
    CHECK(r.report.flow_value == 0);
    CHECK(r.report.iterations == 0);
    CHECK(r.report.terminated_by == Termination::Converged);
  }
}

TEST_CASE("iteration cap is recorded, not thrown") {
  const Network net = build_network(gen_two_iteration());
  const RunResult zero = run(net, RunLimits{0, true});
  CHECK(zero.report.terminated_by == Termination::IterationCap);
  CHECK(zero.report.flow_value == 0);
  CHECK(zero.report.iterations == 0);

  const RunResult one = run(net, RunLimits{1, true});
  CHECK(one.report.terminated_by == Termination::IterationCap);
  CHECK(one.report.flow_value == 1);
  CHECK(one.report.per_iteration.size() == 1);
}

TEST_CASE("restore_flow") {
  SUBCASE("no stranded excess is the identity") {
    const Network net = build_network(gen_two_iteration());
    const RunResult r = run(net);
    CHECK(restore_flow(net, r.state) == r.state);
  }
  SUBCASE("blocked arc returns excess to the source") {
    const std::vector<ArcSpec> arcs{{0, 1, 3}, {1, 2, 1}};
    const Network net = build_network(3, arcs, 0, 2);
    const RunResult r = run(net);
    REQUIRE(r.report.terminated_by == Termination::Converged);
    CHECK(excess(r.state, 1) == 2);
    const FlowState restored = restore_flow(net, r.state);
    CHECK(excess(restored, 1) == 0);
    CHECK(flow_value(restored) == 1);
    CHECK(recover_flow(net, restored) == std::vector<Capacity>{1, 1});
    CHECK(validate_preflow(net, restored).empty());
  }
  SUBCASE("excess with no flow path back fails") {
    // Corrupted: excess at a vertex nothing flows into.
    const std::vector<ArcSpec> arcs{{0, 2, 1}, {1, 2, 1}};
    const Network three = build_network(3, arcs, 0, 2);
    FlowState bad = initialize(three);
    bad.excess[1] = 1;
    try {
      restore_flow(three, bad);
      FAIL("expected RestorationFailed");
    } catch (const FlowError& e) {
      CHECK(e.code() == ErrorCode::RestorationFailed);
    }
  }
}

TEST_CASE("push aborts on a cyclic order") {
  // Hand-built order with u->v and its companion v->u: excess would ping-pong forever.
  const std::vector<ArcSpec> arcs{{0, 1, 5}, {1, 2, 100}, {2, 3, 4}};
  const Network net = build_network(4, arcs, 0, 3);
  FlowState state = initialize(net);
  augment(net, state, 0, 5);
  augment(net, state, 2, 5);
  augment(net, state, 4, 4);  // e(v) = 1 while u->v carries 5, so neither push saturates

  SearchOrder order;
  order.order.resize(4);
  order.order[1] = {2};  // u -> v
  order.order[2] = {3};  // v -> u (companion)
  order.priority = {2};
  try {
    push(net, state, order);
    FAIL("expected NonTerminatingPush");
  } catch (const FlowError& e) {
    CHECK(e.code() == ErrorCode::NonTerminatingPush);
  }
}

TEST_CASE("random instances: order properties, preflow safety, sink bound, determinism") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    CAPTURE(seed);
    const Network net = build_network(gen_sweep(seed, 30, 120, 20));
    const Capacity max_flow = max_flow_reference(net).value;
    FlowState state = initialize(net);
    std::int64_t iterations = 0;
    for (; iterations < 10 * net.vertex_count(); ++iterations) {
      const SearchOrder order = bfss(net, state);
      check_order_properties(net, state, order);
      if (!order.augmenting_exists) break;
      push(net, state, order);
      REQUIRE(validate_preflow(net, state).empty());
      CHECK(flow_value(state) <= max_flow);
    }
    const RunResult r = run(net);
    CHECK(r.state == state);
    CHECK(r.report.iterations == iterations);
    CHECK(run(net).report == r.report);
    if (r.report.terminated_by == Termination::Converged) {
      CHECK(certify_cut(net, r.state).value == r.report.flow_value);
    }
  }
}

TEST_CASE("reactivated vertex resumes at its cursor") {
  // s=0 (isolated), u=1, y=2, p=3, t=4. p->t is listed first so p is dequeued
  // before u and o(u) = [u->t, u->p].
  const std::vector<ArcSpec> arcs{{3, 4, 10}, {1, 4, 1}, {1, 3, 10}, {2, 1, 5}};
  const Network net = build_network(5, arcs, 0, 4);
  FlowState state = initialize(net);
  state.excess[1] = 2;
  state.excess[2] = 3;

  const SearchOrder order = bfss(net, state);
  REQUIRE(order.order[1] == std::vector<ArcId>{2, 4});
  REQUIRE(std::vector<VertexId>(order.priority.begin(), order.priority.end()) == std::vector<VertexId>{1, 2});

  // Hand trace: u saturates u->t, sends 1 to p and stops mid-arc; p forwards 1;
  // y sends 3 back into u, which resumes on u->p without revisiting u->t; p forwards 3.
  const PushStats stats = push(net, state, order);
  CHECK(stats.augments == 6);
  CHECK(stats.saturating_augments == 1);
  CHECK(stats.reactivations == 3);
  CHECK(stats.arc_touches == 6);
  CHECK(stats.sink_gain_delta == 5);
  CHECK(excess(state, 1) == 0);
  CHECK(excess(state, 2) == 0);
  CHECK(excess(state, 3) == 0);
}
