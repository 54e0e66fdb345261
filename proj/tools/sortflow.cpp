// Command-line driver: solve | verify | bench | gen.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "sortflow/dimacs.hpp"
#include "sortflow/engine.hpp"
#include "sortflow/error.hpp"
#include "sortflow/generators.hpp"
#include "sortflow/harness.hpp"
#include "sortflow/oracles.hpp"

namespace {

using namespace sortflow;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitIterationCap = 2;

Instance load_instance(const std::string& path, const std::string& gen_spec) {
  if (!gen_spec.empty()) return instance_from_spec(gen_spec);
  if (path.empty() || path == "-") {
    std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    return parse_dimacs(text);
  }
  return read_dimacs_file(path);
}

struct SolveArgs {
  std::string input;
  std::string gen;
  std::string algorithm = "sorting-flow";
  std::string metrics = "plain";
  std::int64_t max_iterations = -1;
  bool restore = false;
};

int cmd_solve(const SolveArgs& args) {
  const Instance inst = load_instance(args.input, args.gen);
  const Network net = build_network(inst);

  if (args.algorithm == "reference") {
    const OracleResult result = max_flow_reference(net);
    if (args.metrics == "json") {
      nlohmann::ordered_json j{{"instance", inst.label}, {"algorithm", "reference"}, {"flow_value", result.value}};
      std::cout << j.dump(2) << '\n';
    } else if (args.metrics == "csv") {
      std::cout << "algorithm,n,m,flow_value\nreference," << net.vertex_count() << ','
                << net.input_arc_count() << ',' << result.value << '\n';
    } else {
      std::cout << "flow " << result.value << '\n';
    }
    return kExitOk;
  }

  RunResult result = run(net, RunLimits{args.max_iterations, true});
  const RunReport& report = result.report;
  bool restored = false;
  if (args.restore && report.terminated_by == Termination::Converged) {
    result.state = restore_flow(net, std::move(result.state));
    restored = true;
  }

  if (args.metrics == "json") {
    auto j = report_to_json(report);
    j["instance"] = inst.label;
    j["algorithm"] = "sorting-flow";
    j["n"] = net.vertex_count();
    j["m"] = net.input_arc_count();
    if (restored) {
      j["restored"] = true;
      j["arc_flow"] = recover_flow(net, result.state);
    }
    std::cout << j.dump(2) << '\n';
  } else if (args.metrics == "csv") {
    std::cout << "algorithm,n,m,flow_value,iterations,total_augments,terminated_by\n"
              << "sorting-flow," << net.vertex_count() << ',' << net.input_arc_count() << ','
              << report.flow_value << ',' << report.iterations << ',' << report.total_augments << ','
              << to_string(report.terminated_by) << '\n';
  } else {
    std::cout << "flow " << report.flow_value << '\n'
              << "iterations " << report.iterations << '\n'
              << "terminated_by " << to_string(report.terminated_by) << '\n';
    if (restored) {
      const auto flow = recover_flow(net, result.state);
      for (std::size_t i = 0; i < flow.size(); ++i) {
        const auto& a = inst.arcs[i];
        std::cout << "f " << a.tail + 1 << ' ' << a.head + 1 << ' ' << flow[i] << '\n';
      }
    }
  }
  return report.terminated_by == Termination::Converged ? kExitOk : kExitIterationCap;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sorting-flow maximum flow: solver, verifier and benchmark harness"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance (DIMACS file, '-' for stdin, or --gen)");
  solve_cmd->add_option("input", solve.input, "DIMACS max-flow file");
  solve_cmd->add_option("--gen", solve.gen, "Generator spec, e.g. line:k=3,cap=3");
  solve_cmd->add_option("--algorithm", solve.algorithm)->check(CLI::IsMember({"sorting-flow", "reference"}));
  solve_cmd->add_option("--metrics", solve.metrics)->check(CLI::IsMember({"plain", "json", "csv"}));
  solve_cmd->add_option("--max-iterations", solve.max_iterations, "Iteration cap (default 10n)");
  solve_cmd->add_flag("--restore-flow", solve.restore, "Return stranded excess to the source");

  FamilySpec verify;
  std::int64_t verify_max_iterations = -1;
  std::string verify_out = "counterexamples";
  auto* verify_cmd = app.add_subcommand("verify", "Check invariants and claims over a seeded family");
  verify_cmd->add_option("--family", verify.family)->check(CLI::IsMember({"random", "line", "layered"}));
  verify_cmd->add_option("--seed", verify.seed, "First seed (random family)");
  verify_cmd->add_option("--count", verify.count, "Number of instances");
  verify_cmd->add_option("--n", verify.n, "Maximum vertex count");
  verify_cmd->add_option("--m", verify.m, "Maximum arc count");
  verify_cmd->add_option("--max-cap", verify.max_cap, "Maximum capacity");
  verify_cmd->add_option("--width", verify.width, "Layer width (layered family)");
  verify_cmd->add_option("--max-iterations", verify_max_iterations);
  verify_cmd->add_option("--out", verify_out, "Directory for counterexample .max files");

  FamilySpec bench;
  bench.max_cap = 7;
  std::vector<std::int64_t> sizes{10, 100, 1000};
  std::string bench_metrics = "csv";
  std::int64_t bench_max_iterations = -1;
  auto* bench_cmd = app.add_subcommand("bench", "Measure iterations over a size sweep");
  bench_cmd->add_option("--family", bench.family)->check(CLI::IsMember({"random", "line", "layered"}));
  bench_cmd->add_option("--sizes", sizes, "Size points")->delimiter(',');
  bench_cmd->add_option("--width", bench.width);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--max-cap", bench.max_cap);
  bench_cmd->add_option("--max-iterations", bench_max_iterations);
  bench_cmd->add_option("--metrics", bench_metrics)->check(CLI::IsMember({"csv", "json"}));

  std::string gen_spec;
  std::string gen_out;
  FamilySpec gen_random_args;
  gen_random_args.n = 10;
  gen_random_args.m = 30;
  gen_random_args.max_cap = 10;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated instance as DIMACS");
  gen_cmd->add_option("--gen", gen_spec, "Generator spec; defaults to random with --n/--m/--max-cap/--seed");
  gen_cmd->add_option("--seed", gen_random_args.seed);
  gen_cmd->add_option("--n", gen_random_args.n);
  gen_cmd->add_option("--m", gen_random_args.m);
  gen_cmd->add_option("--max-cap", gen_random_args.max_cap);
  gen_cmd->add_option("--out", gen_out, "Output file (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) return cmd_solve(solve);

    if (*verify_cmd) {
      const auto items = family_instances(verify);
      const auto summary = run_verify(items, EvaluateOptions{verify_max_iterations}, std::cout,
                                      std::filesystem::path(verify_out));
      return summary.hard_invariants_pass ? kExitOk : kExitError;
    }

    if (*bench_cmd) {
      const auto rows = run_bench(bench, sizes, bench_max_iterations);
      if (bench_metrics == "json") {
        std::cout << bench_to_json(rows).dump(2) << '\n';
      } else {
        write_bench_csv(rows, std::cout);
      }
      return kExitOk;
    }

    if (*gen_cmd) {
      const Instance inst =
          gen_spec.empty() ? gen_random(gen_random_args.n, gen_random_args.m, gen_random_args.max_cap,
                                        gen_random_args.seed)
                           : instance_from_spec(gen_spec);
      build_network(inst);
      const std::string text = write_dimacs(inst);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream file(gen_out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + gen_out);
        file << text;
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}
