#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "vsidslab/generator.hpp"
#include "vsidslab/harness.hpp"

using namespace vsidslab;
namespace fs = std::filesystem;

namespace {

InstanceSpec in_memory(std::string id, std::string category, Formula f,
                       std::shared_ptr<const CommunityAssignment> comm = nullptr) {
  InstanceSpec s;
  s.id = std::move(id);
  s.category = std::move(category);
  s.formula = std::make_shared<const Formula>(std::move(f));
  s.communities = std::move(comm);
  return s;
}

std::vector<InstanceSpec> planted_set(int count, std::uint32_t m, std::uint64_t seed0) {
  std::vector<InstanceSpec> out;
  for (int i = 0; i < count; ++i) {
    auto inst = gen_planted_community(PlantedConfig{150, 4, 3, m, 0.9, seed0 + static_cast<std::uint64_t>(i)});
    out.push_back(in_memory("p" + std::to_string(i), i % 2 ? "odd" : "even", std::move(inst.formula),
                            std::make_shared<const CommunityAssignment>(inst.planted)));
  }
  return out;
}

RunPlan base_plan(ExperimentKind kind) {
  RunPlan plan;
  plan.experiment = kind;
  plan.timeout_seconds = 30;
  plan.record_timing = false;
  plan.config.sample_interval = 50;
  return plan;
}

InstanceRecord sample_record() {
  InstanceRecord r;
  r.instance = "a/b.cnf";
  r.category = "a";
  r.heuristic = "mvsids";
  r.status = "sat";
  r.runtime = 0.125;
  r.decisions = 17;
  r.conflicts = 5;
  r.samples = 2;
  r.mean_spearman_tdc = 0.1 + 1e-17;
  r.mean_top10_tdc = 2.0 / 3.0;
  r.pct_bridge_vars = 61.0;
  r.num_communities = 4;
  r.note = "has \"quotes\", and commas";
  return r;
}

}  // namespace

TEST_CASE("experiment names and defaults") {
  for (auto k : {ExperimentKind::bridge, ExperimentKind::spatial, ExperimentKind::temporal,
                 ExperimentKind::correlation, ExperimentKind::adapt_compare, ExperimentKind::theorem}) {
    CHECK(parse_experiment(to_string(k)) == k);
    CHECK_FALSE(default_heuristics(k).empty());
  }
  CHECK_FALSE(parse_experiment("nope").has_value());
  CHECK(default_heuristics(ExperimentKind::theorem) == std::vector<HeuristicKind>{HeuristicKind::cvsids});
}

TEST_CASE("json round trip") {
  ExperimentReport rep;
  rep.experiment = "bridge";
  rep.records.push_back(sample_record());
  auto second = sample_record();
  second.heuristic = "random";
  second.excluded = true;
  second.mean_spearman_tdc.reset();
  rep.records.push_back(second);
  rep.aggregates = aggregate(rep.records);
  auto text = report_to_json(rep);
  CHECK(report_from_json(text) == rep);
  CHECK(text.find("null") != std::string::npos);
  CHECK(report_to_json(report_from_json(text)) == text);
}

TEST_CASE("csv output") {
  ExperimentReport empty;
  empty.experiment = "correlation";
  auto csv = report_to_csv(empty);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
  CHECK(csv.rfind("instance,", 0) == 0);

  ExperimentReport rep;
  rep.records.push_back(sample_record());
  auto rows = report_to_csv(rep);
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 2);
  CHECK(rows.find("\"has \"\"quotes\"\", and commas\"") != std::string::npos);

  CHECK(cactus_csv(empty) == "heuristic,solved_count,seconds\n");
  ExperimentReport runs;
  for (double t : {3.0, 1.0, 2.0}) {
    auto r = sample_record();
    r.runtime = t;
    runs.records.push_back(r);
  }
  runs.records[1].status = "unknown";
  CHECK(cactus_csv(runs) == "heuristic,solved_count,seconds\nmvsids,1,2\nmvsids,2,3\n");
}

TEST_CASE("emit_report writes files and rejects bad paths") {
  ExperimentReport rep;
  rep.experiment = "theorem";
  rep.records.push_back(sample_record());
  auto dir = fs::temp_directory_path() / "vsidslab_emit";
  fs::create_directories(dir);
  emit_report(rep, ReportFormat::json, (dir / "r.json").string());
  std::ifstream in(dir / "r.json");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(report_from_json(ss.str()) == rep);
  CHECK_THROWS_AS(emit_report(rep, ReportFormat::csv, (dir / "missing" / "r.csv").string()), std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("aggregates equal a recomputation from emitted records") {
  auto plan = base_plan(ExperimentKind::spatial);
  plan.instances = planted_set(6, 520, 10);
  auto text = report_to_json(run_experiment(plan));
  auto rep = report_from_json(text);
  CHECK(aggregate(rep.records) == rep.aggregates);

  std::map<std::pair<std::string, std::string>, std::vector<double>> ss;
  for (const auto& r : rep.records) {
    if (!r.excluded && r.spatial_score) ss[{r.category, r.heuristic}].push_back(*r.spatial_score);
  }
  REQUIRE(!rep.aggregates.empty());
  for (const auto& a : rep.aggregates) {
    const auto& v = ss[{a.category, a.heuristic}];
    REQUIRE(!v.empty());
    double sum = 0;
    for (double x : v) sum += x;
    CHECK(*a.spatial_score == doctest::Approx(sum / static_cast<double>(v.size())).epsilon(1e-12));
  }
}

TEST_CASE("reports are deterministic and independent of the worker count") {
  auto plan = base_plan(ExperimentKind::correlation);
  plan.instances = planted_set(4, 560, 20);
  auto a = report_to_json(run_experiment(plan));
  auto b = report_to_json(run_experiment(plan));
  CHECK(a == b);
  plan.workers = 4;
  CHECK(report_to_json(run_experiment(plan)) == a);
}

TEST_CASE("sample counts and zero-sample exclusion") {
  auto plan = base_plan(ExperimentKind::correlation);
  plan.config.sample_interval = 37;
  plan.instances = planted_set(3, 560, 30);
  plan.instances.push_back(in_memory("easy", "easy", gen_random_ksat(30, 20, 3, 1)));
  auto rep = run_experiment(plan);
  for (const auto& r : rep.records) {
    CHECK(r.samples == (r.decisions + r.conflicts) / 37);
    if (r.instance == "easy") {
      CHECK(r.excluded);
      CHECK(r.note == "finished before the first sample boundary");
    } else if (r.samples > 0) {
      CHECK_FALSE(r.excluded);
      CHECK(r.mean_spearman_tdc.has_value());
      CHECK(r.mean_spearman_tec.has_value());
    }
  }
}

TEST_CASE("random heuristic is excluded from correlation runs") {
  auto plan = base_plan(ExperimentKind::correlation);
  plan.instances = planted_set(1, 560, 40);
  plan.heuristics = {HeuristicKind::random};
  auto rep = run_experiment(plan);
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0].excluded);
  CHECK(rep.aggregates.empty());
}

TEST_CASE("instrumentation does not change decisions") {
  auto insts = planted_set(4, 560, 50);
  for (const auto& spec : insts) {
    for (auto kind : {HeuristicKind::cvsids, HeuristicKind::mvsids, HeuristicKind::adaptvsids, HeuristicKind::random}) {
      SolverConfig cfg;
      cfg.sample_interval = 25;
      cfg.record_decisions = true;
      cfg.seed = 9;
      cfg.heuristic.kind = kind;
      auto plain = solve(*spec.formula, cfg);

      InstrumentOptions opts;
      opts.focus = true;
      opts.correlation = true;
      RunInstrumentation inst(*spec.formula, spec.communities.get(), opts);
      auto h = make_heuristic(spec.formula->num_vars, cfg.heuristic);
      Solver solver(*spec.formula, cfg, *h);
      auto instrumented = solver.solve(inst.hooks(*h));
      CHECK(plain.decision_log == instrumented.decision_log);
      CHECK(plain.status == instrumented.status);
      CHECK(inst.focus().picks == instrumented.stats.decisions);
    }
  }
}

TEST_CASE("theorem mode tracks TDC") {
  auto plan = base_plan(ExperimentKind::theorem);
  plan.config.sample_interval = 20;
  plan.instances = planted_set(3, 560, 60);
  plan.instances.push_back(in_memory("rand", "random", gen_random_ksat(80, 340, 3, 4)));
  auto rep = run_theorem_mode(plan);
  for (const auto& r : rep.records) {
    CHECK(r.status != "error");
    CHECK(r.reductions == 0);
    REQUIRE(r.initial_pearson_tdc.has_value());
    CHECK(*r.initial_pearson_tdc == doctest::Approx(1.0).epsilon(1e-12));
    if (r.samples > 0) {
      CHECK(*r.min_spearman_tdc >= 0.999);
      CHECK(*r.mean_pearson_tdc >= 0.99);
      CHECK(*r.mean_top10_tdc >= 0.95);
    }
  }
  plan.heuristics = {HeuristicKind::mvsids};
  auto wrong = run_theorem_mode(plan);
  for (const auto& r : wrong.records) CHECK(r.excluded);
  CHECK_THROWS_AS(run_bridge_experiment(plan), std::invalid_argument);
  plan.timeout_seconds = 0;
  CHECK_THROWS_AS(run_theorem_mode(plan), std::invalid_argument);
}

TEST_CASE("bridge experiment with p = 1 picks no bridges") {
  auto plan = base_plan(ExperimentKind::bridge);
  auto inst = gen_planted_community(PlantedConfig{120, 4, 3, 450, 1.0, 3});
  plan.instances.push_back(in_memory("p1", "planted", std::move(inst.formula),
                                     std::make_shared<const CommunityAssignment>(inst.planted)));
  auto rep = run_experiment(plan);
  REQUIRE(rep.records.size() == 1);
  CHECK(*rep.records[0].pct_bridge_vars == 0.0);
  CHECK(*rep.records[0].pct_bridge_picked == 0.0);
}

TEST_CASE("bridge experiment on random 3-SAT sees mostly bridges") {
  auto plan = base_plan(ExperimentKind::bridge);
  plan.instances.push_back(in_memory("r", "random", gen_random_ksat(200, 852, 3, 2)));
  auto rep = run_experiment(plan);
  REQUIRE(rep.records.size() == 1);
  REQUIRE(rep.records[0].pct_bridge_vars.has_value());
  CHECK(*rep.records[0].pct_bridge_vars >= 90.0);
}

TEST_CASE("louvain timeout excludes the instance") {
  auto plan = base_plan(ExperimentKind::bridge);
  plan.louvain_time_limit = 1e-9;
  plan.instances.push_back(in_memory("big", "x", gen_planted_community(PlantedConfig{2000, 8, 3, 8000, 0.9, 1}).formula));
  auto rep = run_experiment(plan);
  CHECK(rep.records[0].excluded);
  CHECK(rep.records[0].note == "louvain timed out");
}

TEST_CASE("instances and community files on disk") {
  auto dir = fs::temp_directory_path() / "vsidslab_discover";
  fs::remove_all(dir);
  fs::create_directories(dir / "inst" / "crafted");
  fs::create_directories(dir / "comm" / "crafted");
  auto inst = gen_planted_community(PlantedConfig{120, 4, 3, 430, 0.9, 8});
  {
    std::ofstream(dir / "inst" / "crafted" / "a.cnf") << write_dimacs(inst.formula);
    std::ofstream(dir / "inst" / "top.cnf") << write_dimacs(gen_random_ksat(40, 150, 3, 2));
    std::ofstream(dir / "inst" / "notes.txt") << "ignored";
    std::ofstream comm(dir / "comm" / "crafted" / "a.comm");
    write_communities(comm, inst.planted);
  }
  auto specs = discover_instances((dir / "inst").string(), (dir / "comm").string());
  REQUIRE(specs.size() == 2);
  CHECK(specs[0].id == "crafted/a.cnf");
  CHECK(specs[0].category == "crafted");
  CHECK(specs[1].id == "top.cnf");
  CHECK(specs[1].category == "default");

  auto plan = base_plan(ExperimentKind::bridge);
  plan.instances = specs;
  auto rep = run_experiment(plan);
  REQUIRE(rep.records.size() == 2);
  CHECK(*rep.records[0].num_communities == 4);
  CHECK(*rep.records[0].modularity ==
        doctest::Approx(modularity(build_vig(inst.formula), inst.planted.community_of)).epsilon(1e-12));
  CHECK(rep.records[1].num_communities.has_value());
  CHECK_THROWS_AS(discover_instances((dir / "nothing").string(), ""), std::runtime_error);
  fs::remove_all(dir);
}
