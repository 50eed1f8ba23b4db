#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "vsidslab/branching.hpp"
#include "vsidslab/centrality.hpp"
#include "vsidslab/cnf.hpp"
#include "vsidslab/community.hpp"
#include "vsidslab/graph.hpp"
#include "vsidslab/metrics.hpp"
#include "vsidslab/solver.hpp"

namespace vsidslab {

enum class ExperimentKind { bridge, spatial, temporal, correlation, adapt_compare, theorem };

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment(std::string_view name);
/// Heuristics compared by default for each experiment.
std::vector<HeuristicKind> default_heuristics(ExperimentKind kind);

/// An instance either on disk (cnf_path) or in memory (formula).
struct InstanceSpec {
  std::string id;
  std::string category = "default";
  std::string cnf_path;
  // Community file; computed with Louvain when empty or missing.
  std::string community_path;
  std::shared_ptr<const Formula> formula;
  std::shared_ptr<const CommunityAssignment> communities;
};

/// Finds *.cnf files below `instances_dir`. The category of an instance is the
/// first path component below the root ("default" for top-level files). The
/// community file of a/b.cnf is <communities_dir>/a/b.comm.
std::vector<InstanceSpec> discover_instances(const std::string& instances_dir, const std::string& communities_dir);

struct RunPlan {
  std::vector<InstanceSpec> instances;
  std::vector<HeuristicKind> heuristics;
  SolverConfig config;
  ExperimentKind experiment = ExperimentKind::correlation;
  double timeout_seconds = 60.0;
  unsigned workers = 1;
  std::uint64_t louvain_seed = 0;
  double louvain_time_limit = 60.0;
  int tec_iterations = 100;
  // Smoothing factor of the temporal graph; theorem mode uses the decay instead.
  double tvig_alpha = 0.95;
  // When false, runtimes are reported as 0 so reports are reproducible.
  bool record_timing = true;
};

/// Per instance and heuristic. Optional fields are null when not measured or
/// undefined (zero denominators, no valid samples).
struct InstanceRecord {
  std::string instance;
  std::string category;
  std::string heuristic;
  std::string status;  // sat, unsat, unknown, error
  double runtime = 0.0;
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  std::uint64_t reductions = 0;
  std::uint64_t samples = 0;
  std::optional<double> mean_spearman_tdc;
  std::optional<double> mean_spearman_tec;
  std::optional<double> mean_top1_tdc;
  std::optional<double> mean_top10_tdc;
  std::optional<double> mean_top1_tec;
  std::optional<double> mean_top10_tec;
  std::optional<double> mean_pearson_tdc;
  std::optional<double> min_spearman_tdc;
  std::optional<double> initial_pearson_tdc;
  std::optional<double> spatial_score;
  std::optional<double> temporal_score;
  std::optional<double> pct_bridge_vars;
  std::optional<double> pct_bridge_picked;
  std::optional<double> pct_bridge_bumped;
  std::optional<double> pct_bridge_learnt;
  std::optional<double> modularity;
  std::optional<std::uint32_t> num_communities;
  bool excluded = false;
  std::string note;

  bool operator==(const InstanceRecord&) const = default;
};

/// Means over the included instances of one (category, heuristic) pair.
struct AggregateRecord {
  std::string category;
  std::string heuristic;
  std::uint64_t instances = 0;
  std::uint64_t solved = 0;
  std::optional<double> mean_runtime;
  std::optional<double> mean_spearman_tdc;
  std::optional<double> mean_spearman_tec;
  std::optional<double> mean_top1_tdc;
  std::optional<double> mean_top10_tdc;
  std::optional<double> mean_top1_tec;
  std::optional<double> mean_top10_tec;
  std::optional<double> mean_pearson_tdc;
  std::optional<double> spatial_score;
  std::optional<double> temporal_score;
  std::optional<double> pct_bridge_vars;
  std::optional<double> pct_bridge_picked;
  std::optional<double> pct_bridge_bumped;
  std::optional<double> pct_bridge_learnt;
  std::optional<double> modularity;

  bool operator==(const AggregateRecord&) const = default;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<InstanceRecord> records;
  std::vector<AggregateRecord> aggregates;

  bool operator==(const ExperimentReport&) const = default;
};

/// Average of per-instance values, grouped by category and heuristic, in
/// first-appearance order.
std::vector<AggregateRecord> aggregate(const std::vector<InstanceRecord>& records);

/// Which instruments to attach to a run.
struct InstrumentOptions {
  bool focus = false;        // bridge counters, picks per community, decision log
  bool correlation = false;  // TVIG + TDC/TEC against the activity ranking
  bool theorem = false;      // TVIG + Pearson/Spearman/top-k against TDC only
  double alpha = 0.95;
  int tec_iterations = 100;
};

/// Per-sample measurements against the temporal graph.
struct CorrelationSample {
  std::uint64_t sample_time = 0;
  std::optional<double> spearman_tdc;
  std::optional<double> spearman_tec;
  std::optional<double> pearson_tdc;
  // Top-k fields are empty when every variable was assigned.
  std::optional<int> top1_tdc;
  std::optional<int> top10_tdc;
  std::optional<int> top1_tec;
  std::optional<int> top10_tec;
};

/// Observes one solver run and accumulates the counters and samples of the
/// requested instruments. Owns the temporal graph.
class RunInstrumentation {
 public:
  /// `communities` may be null when focus is off.
  RunInstrumentation(const Formula& formula, const CommunityAssignment* communities, InstrumentOptions options);
  RunInstrumentation(const RunInstrumentation&) = delete;
  RunInstrumentation& operator=(const RunInstrumentation&) = delete;

  InstrumentationHooks hooks(const BranchingHeuristic& heuristic);

  /// TDC of the current temporal graph.
  std::vector<double> current_tdc() const;
  const Tvig* tvig() const { return tvig_ ? &*tvig_ : nullptr; }
  const FocusCounters& focus() const { return focus_; }
  const std::vector<CorrelationSample>& samples() const { return samples_; }

 private:
  void on_sample(const SampleEvent& event);

  const Formula& formula_;
  InstrumentOptions options_;
  std::vector<std::uint32_t> community_of_;
  std::vector<std::uint8_t> bridge_;
  FocusCounters focus_;
  std::optional<Tvig> tvig_;
  std::vector<std::uint8_t> assigned_;
  std::vector<CorrelationSample> samples_;
  const BranchingHeuristic* heuristic_ = nullptr;
};

ExperimentReport run_experiment(const RunPlan& plan);
ExperimentReport run_correlation_experiment(const RunPlan& plan);
ExperimentReport run_bridge_experiment(const RunPlan& plan);
/// Spatial and temporal scores; accepts plans for either experiment.
ExperimentReport run_focus_experiments(const RunPlan& plan);
ExperimentReport run_adapt_compare(const RunPlan& plan);
ExperimentReport run_theorem_mode(const RunPlan& plan);

enum class ReportFormat { json, csv };

std::string report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(std::string_view text);
/// One row per instance and heuristic.
std::string report_to_csv(const ExperimentReport& report);
/// Columns heuristic,solved_count,seconds: the n-th fastest solved run of
/// each heuristic.
std::string cactus_csv(const ExperimentReport& report);
/// Throws std::runtime_error if the file cannot be written.
void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path);

}  // namespace vsidslab
