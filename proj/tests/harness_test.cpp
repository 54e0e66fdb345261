#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "sortflow/dimacs.hpp"
#include "sortflow/generators.hpp"
#include "sortflow/harness.hpp"

using namespace sortflow;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("sortflow_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::vector<nlohmann::json> parse_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("ceil_sqrt") {
  CHECK(ceil_sqrt(1) == 1);
  CHECK(ceil_sqrt(4) == 2);
  CHECK(ceil_sqrt(5) == 3);
  CHECK(ceil_sqrt(40) == 7);
}

TEST_CASE("evaluate_instance on the two-iteration family") {
  const InstanceEvaluation eval = evaluate_instance({"two", gen_two_iteration()});
  CHECK(eval.hard_ok());
  CHECK(eval.all_ok());
  CHECK(eval.oracle_value == 2);
  CHECK(eval.cut_value == 2);
  CHECK(eval.report.iterations == 2);
  CHECK(eval.report.claims.matches_oracle == true);

  const auto j = evaluation_to_json(eval);
  for (const char* key : {"instance", "n", "m", "flow_value", "oracle_value", "iterations",
                          "total_augments", "terminated_by", "verdicts"}) {
    CHECK(j.contains(key));
  }
  for (const char* name : kClaims) CHECK(j["verdicts"].contains(name));
  for (const char* name : kHardInvariants) CHECK(j["verdicts"].contains(name));
}

TEST_CASE("verify with a zero iteration cap") {
  FamilySpec spec;
  spec.count = 40;
  const auto items = family_instances(spec);
  std::ostringstream out;
  const auto summary = run_verify(items, EvaluateOptions{0}, out, std::nullopt);
  CHECK(summary.hard_invariants_pass);
  const auto lines = parse_lines(out.str());
  REQUIRE(lines.size() == 41);
  for (std::size_t i = 0; i < 40; ++i) {
    CHECK(lines[i]["terminated_by"] == "iteration_cap");
    CHECK(lines[i]["flow_value"] == 0);
    CHECK(lines[i]["verdicts"]["restoration"].is_null());
  }
}

TEST_CASE("false claims produce counterexamples but keep the hard gate green") {
  // Layered W=1 needs L rounds, so 4*ceil(sqrt(n)) is exceeded once L grows.
  FamilySpec spec;
  spec.family = "layered";
  spec.count = 40;
  const auto items = family_instances(spec);
  const auto dir = scratch_dir("layered_cx");
  std::ostringstream out;
  const auto summary = run_verify(items, {}, out, dir);
  CHECK(summary.hard_invariants_pass);
  REQUIRE_FALSE(summary.counterexamples.empty());

  std::size_t sqrt_held = 0;
  for (const auto& [name, tally] : summary.claims) {
    if (name == "iterations_sqrt_bound") sqrt_held = tally.held;
  }
  CHECK(sqrt_held < 40);
  CHECK(summary.counterexamples.size() == 40 - sqrt_held);
  for (const auto& path : summary.counterexamples) {
    CHECK(std::filesystem::exists(path));
    const Instance back = read_dimacs_file(path.string());
    CHECK(back.label.starts_with("layered("));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify output is deterministic") {
  FamilySpec spec;
  spec.count = 100;
  const auto items = family_instances(spec);
  std::ostringstream a;
  std::ostringstream b;
  run_verify(items, {}, a, std::nullopt);
  run_verify(family_instances(spec), {}, b, std::nullopt);
  CHECK(a.str() == b.str());
}

TEST_CASE("line family verify") {
  FamilySpec spec;
  spec.family = "line";
  spec.count = 100;
  spec.max_cap = 7;
  std::ostringstream out;
  const auto summary = run_verify(family_instances(spec), {}, out, std::nullopt);
  CHECK(summary.hard_invariants_pass);
  const auto lines = parse_lines(out.str());
  for (std::size_t i = 0; i < 100; ++i) {
    CHECK(lines[i]["iterations"] == 1);
    CHECK(lines[i]["verdicts"]["matches_oracle"] == true);
  }
}

TEST_CASE("bench") {
  FamilySpec line;
  line.family = "line";
  const std::vector<std::int64_t> sizes{10, 100, 1000};
  const auto rows = run_bench(line, sizes);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.iterations == 1);
  CHECK(rows[2].n == 1001);
  CHECK(rows[2].sqrt_n == 32);

  FamilySpec layered;
  layered.family = "layered";
  std::vector<std::int64_t> layers;
  for (std::int64_t l = 1; l <= 20; ++l) layers.push_back(l);
  const auto lrows = run_bench(layered, layers);
  for (std::size_t i = 0; i < lrows.size(); ++i) CHECK(lrows[i].iterations == static_cast<std::int64_t>(i + 1));

  std::ostringstream csv;
  write_bench_csv(rows, csv);
  CHECK(csv.str().starts_with("family,param,n,m,flow_value,iterations,total_augments,sqrt_n,ratio,terminated_by,wall_ms\n"));
  CHECK(bench_to_json(rows).size() == 3);
}
