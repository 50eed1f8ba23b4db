#include "vsidslab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

namespace vsidslab {

namespace fs = std::filesystem;

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::bridge: return "bridge";
    case ExperimentKind::spatial: return "spatial";
    case ExperimentKind::temporal: return "temporal";
    case ExperimentKind::correlation: return "correlation";
    case ExperimentKind::adapt_compare: return "adapt-compare";
    case ExperimentKind::theorem: return "theorem";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment(std::string_view name) {
  for (auto kind : {ExperimentKind::bridge, ExperimentKind::spatial, ExperimentKind::temporal,
                    ExperimentKind::correlation, ExperimentKind::adapt_compare, ExperimentKind::theorem}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::vector<HeuristicKind> default_heuristics(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::bridge: return {HeuristicKind::mvsids};
    case ExperimentKind::spatial:
    case ExperimentKind::temporal: return {HeuristicKind::mvsids, HeuristicKind::cvsids, HeuristicKind::random};
    case ExperimentKind::correlation: return {HeuristicKind::cvsids, HeuristicKind::mvsids};
    case ExperimentKind::adapt_compare: return {HeuristicKind::mvsids, HeuristicKind::adaptvsids};
    case ExperimentKind::theorem: return {HeuristicKind::cvsids};
  }
  return {};
}

std::vector<InstanceSpec> discover_instances(const std::string& instances_dir, const std::string& communities_dir) {
  if (!fs::is_directory(instances_dir)) throw std::runtime_error("not a directory: " + instances_dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(instances_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cnf") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<InstanceSpec> out;
  for (const auto& file : files) {
    fs::path rel = fs::relative(file, instances_dir);
    InstanceSpec spec;
    spec.id = rel.generic_string();
    auto first = rel.begin();
    if (std::distance(rel.begin(), rel.end()) > 1) spec.category = first->string();
    spec.cnf_path = file.string();
    if (!communities_dir.empty()) {
      fs::path comm = fs::path(communities_dir) / rel;
      comm.replace_extension(".comm");
      spec.community_path = comm.string();
    }
    out.push_back(std::move(spec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aggregation

namespace {

struct Mean {
  double sum = 0.0;
  std::uint64_t count = 0;
  void add(const std::optional<double>& v) {
    if (v) {
      sum += *v;
      ++count;
    }
  }
  std::optional<double> value() const {
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
  }
};

}  // namespace

std::vector<AggregateRecord> aggregate(const std::vector<InstanceRecord>& records) {
  struct Acc {
    AggregateRecord head;
    Mean runtime, sp_tdc, sp_tec, t1_tdc, t10_tdc, t1_tec, t10_tec, pearson, ss, ts, bv, bp, bb, bl, mod;
  };
  std::vector<Acc> groups;
  for (const auto& r : records) {
    if (r.excluded) continue;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Acc& a) {
      return a.head.category == r.category && a.head.heuristic == r.heuristic;
    });
    if (it == groups.end()) {
      groups.push_back(Acc{});
      it = groups.end() - 1;
      it->head.category = r.category;
      it->head.heuristic = r.heuristic;
    }
    auto& a = *it;
    ++a.head.instances;
    if (r.status == "sat" || r.status == "unsat") ++a.head.solved;
    a.runtime.add(r.runtime);
    a.sp_tdc.add(r.mean_spearman_tdc);
    a.sp_tec.add(r.mean_spearman_tec);
    a.t1_tdc.add(r.mean_top1_tdc);
    a.t10_tdc.add(r.mean_top10_tdc);
    a.t1_tec.add(r.mean_top1_tec);
    a.t10_tec.add(r.mean_top10_tec);
    a.pearson.add(r.mean_pearson_tdc);
    a.ss.add(r.spatial_score);
    a.ts.add(r.temporal_score);
    a.bv.add(r.pct_bridge_vars);
    a.bp.add(r.pct_bridge_picked);
    a.bb.add(r.pct_bridge_bumped);
    a.bl.add(r.pct_bridge_learnt);
    a.mod.add(r.modularity);
  }
  std::vector<AggregateRecord> out;
  for (auto& a : groups) {
    auto h = a.head;
    h.mean_runtime = a.runtime.value();
    h.mean_spearman_tdc = a.sp_tdc.value();
    h.mean_spearman_tec = a.sp_tec.value();
    h.mean_top1_tdc = a.t1_tdc.value();
    h.mean_top10_tdc = a.t10_tdc.value();
    h.mean_top1_tec = a.t1_tec.value();
    h.mean_top10_tec = a.t10_tec.value();
    h.mean_pearson_tdc = a.pearson.value();
    h.spatial_score = a.ss.value();
    h.temporal_score = a.ts.value();
    h.pct_bridge_vars = a.bv.value();
    h.pct_bridge_picked = a.bp.value();
    h.pct_bridge_bumped = a.bb.value();
    h.pct_bridge_learnt = a.bl.value();
    h.modularity = a.mod.value();
    out.push_back(std::move(h));
  }
  return out;
}

// ---------------------------------------------------------------------------
// RunInstrumentation

RunInstrumentation::RunInstrumentation(const Formula& formula, const CommunityAssignment* communities,
                                       InstrumentOptions options)
    : formula_(formula), options_(options), assigned_(formula.num_vars, 0) {
  if (options_.focus) {
    if (!communities) throw std::invalid_argument("focus instrumentation needs communities");
    if (communities->community_of.size() != formula.num_vars) {
      throw std::invalid_argument("community assignment does not cover the formula's variables");
    }
    community_of_ = communities->community_of;
    bridge_ = bridge_variables(formula, community_of_);
    focus_ = FocusCounters(community_of_, communities->num_communities, bridge_);
  }
  if (options_.correlation || options_.theorem) {
    tvig_.emplace(formula.num_vars, options_.alpha);
    tvig_->add_formula(formula);
  }
}

std::vector<double> RunInstrumentation::current_tdc() const {
  if (!tvig_) throw std::logic_error("no temporal graph attached");
  return tvig_->degrees();
}

InstrumentationHooks RunInstrumentation::hooks(const BranchingHeuristic& heuristic) {
  heuristic_ = &heuristic;
  InstrumentationHooks h;
  if (options_.focus) {
    h.on_decision = [this](const DecisionEvent& e) { focus_.record_decision(e.var); };
  }
  if (options_.focus || tvig_) {
    h.on_conflict = [this](const ConflictAnalysis& analysis) {
      if (options_.focus) {
        focus_.record_bumps(heuristic_->last_bumped());
        focus_.record_learnt(analysis.learnt);
      }
      if (tvig_) {
        tvig_->advance();
        tvig_->add_clause(analysis.learnt);
      }
    };
  }
  if (tvig_) {
    h.on_sample = [this](const SampleEvent& e) { on_sample(e); };
  }
  return h;
}

void RunInstrumentation::on_sample(const SampleEvent& event) {
  const ActivityTable* table = heuristic_->activities();
  if (!table) return;
  const std::size_t n = formula_.num_vars;
  auto scores = table->scores();
  for (std::size_t i = 0; i < n; ++i) assigned_[i] = event.assignment.raw()[i] >= 0 ? 1 : 0;

  std::optional<Var> top;
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned_[i]) continue;
    if (!top || table->ranks_before(var_at(i), *top)) top = var_at(i);
  }

  auto tdc = tvig_->degrees();
  CorrelationSample sample;
  sample.sample_time = event.iteration;
  sample.spearman_tdc = spearman(scores, tdc);
  if (top) {
    sample.top1_tdc = top_k(*top, tdc, assigned_, 1);
    sample.top10_tdc = top_k(*top, tdc, assigned_, 10);
  }
  if (options_.theorem) sample.pearson_tdc = pearson(scores, tdc);
  if (options_.correlation) {
    WeightedGraph graph = tvig_->snapshot();
    auto incident = incident_vars(formula_);
    auto tec = eigenvector_centrality(graph, options_.tec_iterations, CentralityKind::tec, event.iteration, incident);
    sample.spearman_tec = spearman(scores, tec.scores);
    if (top) {
      sample.top1_tec = top_k(*top, tec.scores, assigned_, 1);
      sample.top10_tec = top_k(*top, tec.scores, assigned_, 10);
    }
  }
  samples_.push_back(sample);
}

// ---------------------------------------------------------------------------
// Experiment runs

namespace {

struct Job {
  const InstanceSpec* spec;
  HeuristicKind heuristic;
};

bool needs_communities(ExperimentKind kind) {
  return kind == ExperimentKind::bridge || kind == ExperimentKind::spatial || kind == ExperimentKind::temporal;
}

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::sat: return "sat";
    case SolveStatus::unsat: return "unsat";
    case SolveStatus::unknown: return "unknown";
  }
  return "unknown";
}

std::optional<double> fisher_of(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  return fisher_mean(values);
}

std::optional<double> mean_of(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

void summarize_samples(const std::vector<CorrelationSample>& samples, InstanceRecord& rec) {
  std::vector<double> sp_tdc, sp_tec, t1_tdc, t10_tdc, t1_tec, t10_tec, pr;
  for (const auto& s : samples) {
    if (s.spearman_tdc) sp_tdc.push_back(*s.spearman_tdc);
    if (s.spearman_tec) sp_tec.push_back(*s.spearman_tec);
    if (s.pearson_tdc) pr.push_back(*s.pearson_tdc);
    if (s.top1_tdc) t1_tdc.push_back(*s.top1_tdc);
    if (s.top10_tdc) t10_tdc.push_back(*s.top10_tdc);
    if (s.top1_tec) t1_tec.push_back(*s.top1_tec);
    if (s.top10_tec) t10_tec.push_back(*s.top10_tec);
  }
  rec.mean_spearman_tdc = fisher_of(sp_tdc);
  rec.mean_spearman_tec = fisher_of(sp_tec);
  rec.mean_top1_tdc = mean_of(t1_tdc);
  rec.mean_top10_tdc = mean_of(t10_tdc);
  rec.mean_top1_tec = mean_of(t1_tec);
  rec.mean_top10_tec = mean_of(t10_tec);
  rec.mean_pearson_tdc = mean_of(pr);
  if (!sp_tdc.empty()) rec.min_spearman_tdc = *std::min_element(sp_tdc.begin(), sp_tdc.end());
}

CommunityAssignment load_communities(const RunPlan& plan, const InstanceSpec& spec, const Formula& formula,
                                     const WeightedGraph& vig) {
  if (spec.communities) return *spec.communities;
  if (!spec.community_path.empty() && fs::exists(spec.community_path)) {
    std::ifstream in(spec.community_path);
    return read_communities(in, formula.num_vars);
  }
  return louvain(vig, LouvainOptions{plan.louvain_seed, plan.louvain_time_limit});
}

InstanceRecord run_job(const RunPlan& plan, const Job& job) {
  const InstanceSpec& spec = *job.spec;
  InstanceRecord rec;
  rec.instance = spec.id;
  rec.category = spec.category;
  rec.heuristic = std::string(to_string(job.heuristic));
  try {
    Formula loaded;
    const Formula* formula = spec.formula.get();
    if (!formula) {
      loaded = read_dimacs_file(spec.cnf_path).formula;
      formula = &loaded;
    }

    std::optional<CommunityAssignment> communities;
    if (needs_communities(plan.experiment)) {
      WeightedGraph vig = build_vig(*formula);
      try {
        communities = load_communities(plan, spec, *formula, vig);
      } catch (const LouvainTimeout&) {
        rec.status = "unknown";
        rec.excluded = true;
        rec.note = "louvain timed out";
        return rec;
      }
      communities->modularity = modularity(vig, communities->community_of);
      rec.modularity = communities->modularity;
      rec.num_communities = communities->num_communities;
    }

    SolverConfig config = plan.config;
    config.heuristic.kind = job.heuristic;
    config.time_limit_seconds = plan.timeout_seconds;

    InstrumentOptions opts;
    opts.focus = communities.has_value();
    opts.correlation = plan.experiment == ExperimentKind::correlation;
    opts.theorem = plan.experiment == ExperimentKind::theorem;
    opts.alpha = plan.tvig_alpha;
    opts.tec_iterations = plan.tec_iterations;

    if (plan.experiment == ExperimentKind::theorem) {
      if (job.heuristic != HeuristicKind::cvsids) {
        rec.status = "unknown";
        rec.excluded = true;
        rec.note = "theorem mode requires cvsids";
        return rec;
      }
      config.clause_deletion = false;
      config.heuristic.bump_unit_learnts = false;
      opts.alpha = config.heuristic.decay;
    }
    if (opts.correlation && job.heuristic == HeuristicKind::random) {
      rec.status = "unknown";
      rec.excluded = true;
      rec.note = "heuristic has no activity ranking";
      return rec;
    }

    RunInstrumentation instruments(*formula, communities ? &*communities : nullptr, opts);
    auto heuristic = make_heuristic(formula->num_vars, config.heuristic);
    if (opts.theorem) {
      auto seeds = instruments.current_tdc();
      static_cast<VsidsHeuristic&>(*heuristic).seed(seeds);
      rec.initial_pearson_tdc = pearson(heuristic->activities()->scores(), seeds);
    }

    Solver solver(*formula, config, *heuristic);
    SatResult result = solver.solve(instruments.hooks(*heuristic));
    if (opts.theorem && result.stats.reductions != 0) {
      throw std::logic_error("clause database reduced in theorem mode");
    }

    rec.status = status_name(result.status);
    rec.runtime = plan.record_timing ? result.stats.seconds : 0.0;
    rec.decisions = result.stats.decisions;
    rec.conflicts = result.stats.conflicts;
    rec.propagations = result.stats.propagations;
    rec.restarts = result.stats.restarts;
    rec.reductions = result.stats.reductions;
    rec.samples = result.stats.samples;

    if (opts.focus) {
      const auto& focus = instruments.focus();
      auto pct = bridge_percentages(focus);
      rec.pct_bridge_vars = pct.variables;
      rec.pct_bridge_picked = pct.picked;
      rec.pct_bridge_bumped = pct.bumped;
      rec.pct_bridge_learnt = pct.learnt;
      if (focus.picks > 0) {
        auto sizes = communities->sizes();
        rec.spatial_score = spatial_score(focus.picks_from, sizes);
        rec.temporal_score = temporal_score(focus.decision_community_log, communities->num_communities);
      } else if (plan.experiment != ExperimentKind::bridge) {
        rec.excluded = true;
        rec.note = "no decisions";
      }
    }
    if (opts.correlation || opts.theorem) {
      summarize_samples(instruments.samples(), rec);
      if (instruments.samples().empty()) {
        rec.excluded = true;
        rec.note = "finished before the first sample boundary";
      }
    }
  } catch (const std::exception& e) {
    rec.status = "error";
    rec.excluded = true;
    rec.note = e.what();
  }
  return rec;
}

ExperimentReport run_plan(const RunPlan& plan) {
  validate(plan.config);
  if (!(plan.timeout_seconds > 0.0)) throw std::invalid_argument("timeout must be > 0");
  auto heuristics = plan.heuristics.empty() ? default_heuristics(plan.experiment) : plan.heuristics;

  std::vector<Job> jobs;
  for (const auto& spec : plan.instances) {
    for (auto h : heuristics) jobs.push_back(Job{&spec, h});
  }
  std::vector<InstanceRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < jobs.size(); i = next++) records[i] = run_job(plan, jobs[i]);
  };
  const unsigned count = std::max(1u, std::min<unsigned>(plan.workers, static_cast<unsigned>(jobs.size())));
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ExperimentReport report;
  report.experiment = std::string(to_string(plan.experiment));
  report.records = std::move(records);
  report.aggregates = aggregate(report.records);
  return report;
}

void require(const RunPlan& plan, std::initializer_list<ExperimentKind> kinds) {
  if (std::find(kinds.begin(), kinds.end(), plan.experiment) == kinds.end()) {
    throw std::invalid_argument("plan is for the '" + std::string(to_string(plan.experiment)) + "' experiment");
  }
}

}  // namespace

ExperimentReport run_correlation_experiment(const RunPlan& plan) {
  require(plan, {ExperimentKind::correlation});
  return run_plan(plan);
}

ExperimentReport run_bridge_experiment(const RunPlan& plan) {
  require(plan, {ExperimentKind::bridge});
  return run_plan(plan);
}

ExperimentReport run_focus_experiments(const RunPlan& plan) {
  require(plan, {ExperimentKind::spatial, ExperimentKind::temporal});
  return run_plan(plan);
}

ExperimentReport run_adapt_compare(const RunPlan& plan) {
  require(plan, {ExperimentKind::adapt_compare});
  return run_plan(plan);
}

ExperimentReport run_theorem_mode(const RunPlan& plan) {
  require(plan, {ExperimentKind::theorem});
  return run_plan(plan);
}

ExperimentReport run_experiment(const RunPlan& plan) {
  switch (plan.experiment) {
    case ExperimentKind::bridge: return run_bridge_experiment(plan);
    case ExperimentKind::spatial:
    case ExperimentKind::temporal: return run_focus_experiments(plan);
    case ExperimentKind::correlation: return run_correlation_experiment(plan);
    case ExperimentKind::adapt_compare: return run_adapt_compare(plan);
    case ExperimentKind::theorem: return run_theorem_mode(plan);
  }
  throw std::invalid_argument("unknown experiment");
}

}  // namespace vsidslab
