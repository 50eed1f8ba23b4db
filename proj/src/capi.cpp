#include "vsidslab/vsidslab.h"

#include <cstring>
#include <fstream>
#include <string>

#include "vsidslab/community.hpp"
#include "vsidslab/generator.hpp"
#include "vsidslab/graph.hpp"
#include "vsidslab/harness.hpp"
#include "vsidslab/solver.hpp"

using namespace vsidslab;

struct vl_formula {
  Formula formula;
  std::vector<std::string> warnings;
};

struct vl_communities {
  CommunityAssignment assignment;
};

struct vl_result {
  SatResult result;
};

struct vl_report {
  ExperimentReport report;
};

namespace {

thread_local std::string last_error;

vl_status fail(vl_status code, const std::string& message) {
  last_error = message;
  return code;
}

// Runs body, translating exceptions into status codes.
template <typename F>
vl_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return VL_OK;
  } catch (const ParseError& e) {
    return fail(VL_ERR_PARSE, e.what());
  } catch (const LouvainTimeout& e) {
    return fail(VL_ERR_TIMEOUT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(VL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    return fail(VL_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(VL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(VL_ERR_INTERNAL, "unknown error");
  }
}

HeuristicKind to_kind(vl_heuristic h) {
  switch (h) {
    case VL_CVSIDS: return HeuristicKind::cvsids;
    case VL_MVSIDS: return HeuristicKind::mvsids;
    case VL_ADAPTVSIDS: return HeuristicKind::adaptvsids;
    case VL_RANDOM: return HeuristicKind::random;
  }
  throw std::invalid_argument("unknown heuristic");
}

SolverConfig to_config(const vl_solver_options& o) {
  SolverConfig c;
  c.heuristic.kind = to_kind(o.heuristic);
  c.heuristic.decay = o.decay;
  c.heuristic.fast_decay = o.fast_decay;
  c.heuristic.slow_decay = o.slow_decay;
  c.heuristic.lbd_smoothing = o.lbd_smoothing;
  c.seed = o.seed;
  c.restarts = o.restarts != 0;
  c.restart_base = o.restart_base;
  c.clause_deletion = o.clause_deletion != 0;
  c.phase_saving = o.phase_saving != 0;
  c.sample_interval = o.sample_interval;
  c.time_limit_seconds = o.time_limit_seconds;
  c.conflict_limit = o.conflict_limit;
  validate(c);
  return c;
}

void write_file(const char* path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(std::string("cannot write ") + path);
  out << content;
  if (!out.flush()) throw std::runtime_error(std::string("cannot write ") + path);
}

#define VL_REQUIRE(cond, msg) \
  if (!(cond)) return fail(VL_ERR_INVALID_ARGUMENT, msg)

}  // namespace

extern "C" {

const char* vl_version(void) { return "1.0.0"; }

const char* vl_last_error(void) { return last_error.c_str(); }

void vl_solver_options_init(vl_solver_options* o) {
  if (!o) return;
  SolverConfig d;
  o->heuristic = VL_MVSIDS;
  o->decay = d.heuristic.decay;
  o->fast_decay = d.heuristic.fast_decay;
  o->slow_decay = d.heuristic.slow_decay;
  o->lbd_smoothing = d.heuristic.lbd_smoothing;
  o->seed = d.seed;
  o->restarts = d.restarts ? 1 : 0;
  o->restart_base = d.restart_base;
  o->clause_deletion = d.clause_deletion ? 1 : 0;
  o->phase_saving = d.phase_saving ? 1 : 0;
  o->sample_interval = d.sample_interval;
  o->time_limit_seconds = d.time_limit_seconds;
  o->conflict_limit = d.conflict_limit;
}

void vl_planted_options_init(vl_planted_options* o) {
  if (!o) return;
  PlantedConfig d;
  o->num_vars = d.num_vars;
  o->num_communities = d.num_communities;
  o->clause_len = d.clause_len;
  o->num_clauses = d.num_clauses;
  o->intra_probability = d.intra_probability;
  o->seed = d.seed;
}

void vl_experiment_options_init(vl_experiment_options* o) {
  if (!o) return;
  RunPlan d;
  o->experiment = "correlation";
  o->instances_dir = nullptr;
  o->communities_dir = nullptr;
  o->heuristics = nullptr;
  o->timeout_seconds = d.timeout_seconds;
  o->workers = d.workers;
  o->louvain_seed = d.louvain_seed;
  o->louvain_time_limit = d.louvain_time_limit;
  o->record_timing = d.record_timing ? 1 : 0;
  vl_solver_options_init(&o->solver);
}

vl_status vl_parse_heuristic(const char* name, vl_heuristic* out) {
  VL_REQUIRE(name && out, "null argument");
  auto kind = parse_heuristic(name);
  if (!kind) return fail(VL_ERR_INVALID_ARGUMENT, std::string("unknown heuristic: ") + name);
  *out = static_cast<vl_heuristic>(static_cast<int>(*kind));
  return VL_OK;
}

vl_status vl_formula_parse(const char* text, size_t length, vl_formula** out) {
  VL_REQUIRE(out && (text || length == 0), "null argument");
  return guarded([&] {
    auto parsed = parse_dimacs(std::string_view(text ? text : "", length));
    *out = new vl_formula{std::move(parsed.formula), std::move(parsed.warnings)};
  });
}

vl_status vl_formula_read(const char* path, vl_formula** out) {
  VL_REQUIRE(path && out, "null argument");
  return guarded([&] {
    auto parsed = read_dimacs_file(path);
    *out = new vl_formula{std::move(parsed.formula), std::move(parsed.warnings)};
  });
}

vl_status vl_formula_write(const vl_formula* formula, const char* path) {
  VL_REQUIRE(formula && path, "null argument");
  return guarded([&] { write_file(path, write_dimacs(formula->formula)); });
}

vl_status vl_formula_write_vig(const vl_formula* formula, const char* path) {
  VL_REQUIRE(formula && path, "null argument");
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(std::string("cannot write ") + path);
    write_edge_csv(build_vig(formula->formula), out);
    if (!out.flush()) throw std::runtime_error(std::string("cannot write ") + path);
  });
}

uint32_t vl_formula_num_vars(const vl_formula* formula) { return formula ? formula->formula.num_vars : 0; }

size_t vl_formula_num_clauses(const vl_formula* formula) { return formula ? formula->formula.clauses.size() : 0; }

size_t vl_formula_num_warnings(const vl_formula* formula) { return formula ? formula->warnings.size() : 0; }

const char* vl_formula_warning(const vl_formula* formula, size_t index) {
  if (!formula || index >= formula->warnings.size()) return nullptr;
  return formula->warnings[index].c_str();
}

void vl_formula_free(vl_formula* formula) { delete formula; }

vl_status vl_gen_random(uint32_t num_vars, uint32_t num_clauses, uint32_t clause_len, uint64_t seed,
                        vl_formula** out) {
  VL_REQUIRE(out, "null argument");
  return guarded([&] { *out = new vl_formula{gen_random_ksat(num_vars, num_clauses, clause_len, seed), {}}; });
}

vl_status vl_gen_planted(const vl_planted_options* options, vl_formula** formula, vl_communities** planted) {
  VL_REQUIRE(options && formula, "null argument");
  return guarded([&] {
    PlantedConfig cfg;
    cfg.num_vars = options->num_vars;
    cfg.num_communities = options->num_communities;
    cfg.clause_len = options->clause_len;
    cfg.num_clauses = options->num_clauses;
    cfg.intra_probability = options->intra_probability;
    cfg.seed = options->seed;
    auto inst = gen_planted_community(cfg);
    inst.planted.modularity = modularity(build_vig(inst.formula), inst.planted.community_of);
    *formula = new vl_formula{std::move(inst.formula), {}};
    if (planted) *planted = new vl_communities{std::move(inst.planted)};
  });
}

vl_status vl_louvain(const vl_formula* formula, uint64_t seed, double time_limit, vl_communities** out) {
  VL_REQUIRE(formula && out, "null argument");
  return guarded([&] {
    auto assignment = louvain(build_vig(formula->formula), LouvainOptions{seed, time_limit});
    *out = new vl_communities{std::move(assignment)};
  });
}

vl_status vl_modularity(const vl_formula* formula, const vl_communities* communities, double* out) {
  VL_REQUIRE(formula && communities && out, "null argument");
  return guarded([&] {
    if (communities->assignment.community_of.size() != formula->formula.num_vars) {
      throw std::invalid_argument("community assignment does not match the formula");
    }
    *out = modularity(build_vig(formula->formula), communities->assignment.community_of);
  });
}

vl_status vl_communities_read(const char* path, uint32_t num_vars, vl_communities** out) {
  VL_REQUIRE(path && out, "null argument");
  return guarded([&] {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string("cannot open ") + path);
    *out = new vl_communities{read_communities(in, num_vars)};
  });
}

vl_status vl_communities_write(const vl_communities* communities, const char* path) {
  VL_REQUIRE(communities && path, "null argument");
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(std::string("cannot write ") + path);
    write_communities(out, communities->assignment);
    if (!out.flush()) throw std::runtime_error(std::string("cannot write ") + path);
  });
}

uint32_t vl_communities_count(const vl_communities* communities) {
  return communities ? communities->assignment.num_communities : 0;
}

uint32_t vl_communities_of(const vl_communities* communities, uint32_t var) {
  if (!communities || var == 0 || var > communities->assignment.community_of.size()) return UINT32_MAX;
  return communities->assignment.community_of[var - 1];
}

void vl_communities_free(vl_communities* communities) { delete communities; }

vl_status vl_solve(const vl_formula* formula, const vl_solver_options* options, vl_result** out) {
  VL_REQUIRE(formula && out, "null argument");
  return guarded([&] {
    vl_solver_options defaults;
    vl_solver_options_init(&defaults);
    SolverConfig config = to_config(options ? *options : defaults);
    *out = new vl_result{solve(formula->formula, config)};
  });
}

vl_outcome vl_result_outcome(const vl_result* result) {
  if (!result) return VL_UNKNOWN;
  switch (result->result.status) {
    case SolveStatus::sat: return VL_SAT;
    case SolveStatus::unsat: return VL_UNSAT;
    case SolveStatus::unknown: return VL_UNKNOWN;
  }
  return VL_UNKNOWN;
}

int vl_result_value(const vl_result* result, uint32_t var) {
  if (!result || result->result.status != SolveStatus::sat) return -1;
  if (var == 0 || var > result->result.model.size()) return -1;
  return result->result.model[var - 1] ? 1 : 0;
}

void vl_result_stats(const vl_result* result, vl_stats* out) {
  if (!result || !out) return;
  const auto& s = result->result.stats;
  *out = vl_stats{s.decisions, s.conflicts, s.propagations, s.restarts, s.reductions, s.learnt_clauses, s.seconds};
}

void vl_result_free(vl_result* result) { delete result; }

vl_status vl_run_experiment(const vl_experiment_options* options, vl_report** out) {
  VL_REQUIRE(options && out && options->experiment && options->instances_dir, "null argument");
  return guarded([&] {
    RunPlan plan;
    auto kind = parse_experiment(options->experiment);
    if (!kind) throw std::invalid_argument(std::string("unknown experiment: ") + options->experiment);
    plan.experiment = *kind;
    plan.instances = discover_instances(options->instances_dir,
                                        options->communities_dir ? options->communities_dir : "");
    if (options->heuristics && *options->heuristics) {
      std::string_view list(options->heuristics);
      while (!list.empty()) {
        auto comma = list.find(',');
        auto name = list.substr(0, comma);
        auto h = parse_heuristic(name);
        if (!h) throw std::invalid_argument("unknown heuristic: " + std::string(name));
        plan.heuristics.push_back(*h);
        list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
      }
    }
    plan.config = to_config(options->solver);
    plan.timeout_seconds = options->timeout_seconds;
    plan.workers = options->workers;
    plan.louvain_seed = options->louvain_seed;
    plan.louvain_time_limit = options->louvain_time_limit;
    plan.record_timing = options->record_timing != 0;
    *out = new vl_report{run_experiment(plan)};
  });
}

size_t vl_report_num_records(const vl_report* report) { return report ? report->report.records.size() : 0; }

vl_status vl_report_write(const vl_report* report, vl_report_format format, const char* path) {
  VL_REQUIRE(report && path, "null argument");
  return guarded([&] {
    switch (format) {
      case VL_REPORT_JSON: emit_report(report->report, ReportFormat::json, path); break;
      case VL_REPORT_CSV: emit_report(report->report, ReportFormat::csv, path); break;
      case VL_REPORT_CACTUS: write_file(path, cactus_csv(report->report)); break;
      default: throw std::invalid_argument("unknown report format");
    }
  });
}

void vl_report_free(vl_report* report) { delete report; }

}  // extern "C"
