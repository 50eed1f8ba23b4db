// Command-line front end over the vsidslab C interface.
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "vsidslab/vsidslab.h"

namespace {

int report_error(const char* what) {
  std::fprintf(stderr, "error: %s: %s\n", what, vl_last_error());
  return 1;
}

struct HeuristicFlags {
  std::string heuristic = "mvsids";
};

void add_solver_flags(CLI::App* cmd, vl_solver_options& o, HeuristicFlags& h) {
  cmd->add_option("--heuristic", h.heuristic, "cvsids|mvsids|adaptvsids|random")
      ->check(CLI::IsMember({"cvsids", "mvsids", "adaptvsids", "random"}));
  cmd->add_option("--decay", o.decay, "activity decay factor f");
  cmd->add_option("--fast-decay", o.fast_decay, "adaptvsids decay when lbd > lbdema");
  cmd->add_option("--slow-decay", o.slow_decay, "adaptvsids decay otherwise");
  cmd->add_option("--lbd-smoothing", o.lbd_smoothing, "weight of the newest lbd in lbdema");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--sample-interval", o.sample_interval, "iterations between samples");
  cmd->add_option("--conflict-limit", o.conflict_limit, "stop after this many conflicts (0 = none)");
}

std::string strip_cnf(const std::string& path) {
  if (path.size() > 4 && path.compare(path.size() - 4, 4, ".cnf") == 0) return path.substr(0, path.size() - 4);
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instrumented CDCL solver and VSIDS experiments"};
  app.require_subcommand(1);

  vl_solver_options solve_opts;
  vl_solver_options_init(&solve_opts);
  HeuristicFlags solve_h;
  std::string solve_path;
  bool print_model = true;
  double solve_timeout = 0.0;
  auto* solve_cmd = app.add_subcommand("solve", "solve a DIMACS CNF file");
  solve_cmd->add_option("cnf", solve_path, "input file")->required()->check(CLI::ExistingFile);
  add_solver_flags(solve_cmd, solve_opts, solve_h);
  solve_cmd->add_option("--timeout", solve_timeout, "seconds (0 = none)");
  solve_cmd->add_flag("!--no-model", print_model, "omit the v lines");

  auto* gen_cmd = app.add_subcommand("gen", "generate instances");
  gen_cmd->require_subcommand(1);
  std::string gen_out;
  std::uint32_t gen_n = 50, gen_m = 213, gen_k = 3;
  std::uint64_t gen_seed = 0;
  auto* gen_random = gen_cmd->add_subcommand("random", "uniform random k-SAT");
  gen_random->add_option("-n,--vars", gen_n);
  gen_random->add_option("-m,--clauses", gen_m);
  gen_random->add_option("-k,--clause-len", gen_k);
  gen_random->add_option("--seed", gen_seed);
  gen_random->add_option("-o,--output", gen_out)->required();

  vl_planted_options planted;
  vl_planted_options_init(&planted);
  std::string planted_comm;
  auto* gen_planted = gen_cmd->add_subcommand("planted", "k-SAT with planted communities");
  gen_planted->add_option("-n,--vars", planted.num_vars);
  gen_planted->add_option("-q,--communities", planted.num_communities);
  gen_planted->add_option("-k,--clause-len", planted.clause_len);
  gen_planted->add_option("-m,--clauses", planted.num_clauses);
  gen_planted->add_option("-p,--intra-probability", planted.intra_probability);
  gen_planted->add_option("--seed", planted.seed);
  gen_planted->add_option("-o,--output", gen_out, "CNF path; the planted communities go next to it as .comm")
      ->required();
  gen_planted->add_option("--comm-output", planted_comm, "community file path");

  std::string comm_in, comm_out, vig_out;
  std::uint64_t louvain_seed = 0;
  double louvain_limit = 60.0;
  auto* comm_cmd = app.add_subcommand("analyze-communities", "run Louvain on the VIG and write communities");
  comm_cmd->add_option("cnf", comm_in)->required()->check(CLI::ExistingFile);
  comm_cmd->add_option("-o,--output", comm_out)->required();
  comm_cmd->add_option("--seed", louvain_seed);
  comm_cmd->add_option("--time-limit", louvain_limit, "seconds (0 = none)");
  comm_cmd->add_option("--vig-csv", vig_out, "also dump the VIG edge list");

  vl_experiment_options exp;
  vl_experiment_options_init(&exp);
  std::string exp_kind, exp_instances, exp_communities, exp_heuristics, exp_report, exp_csv, exp_cactus;
  bool exp_no_timing = false;
  HeuristicFlags unused_h;
  auto* exp_cmd = app.add_subcommand("experiment", "run an experiment over a directory of instances");
  exp_cmd->add_option("kind", exp_kind)
      ->required()
      ->check(CLI::IsMember({"bridge", "spatial", "temporal", "correlation", "adapt-compare", "theorem"}));
  exp_cmd->add_option("--instances", exp_instances)->required()->check(CLI::ExistingDirectory);
  exp_cmd->add_option("--communities", exp_communities, "directory of precomputed .comm files");
  exp_cmd->add_option("--heuristics", exp_heuristics, "comma separated list");
  exp_cmd->add_option("--timeout", exp.timeout_seconds, "seconds per run");
  exp_cmd->add_option("--workers", exp.workers);
  exp_cmd->add_option("--report", exp_report, "JSON report path")->required();
  exp_cmd->add_option("--csv", exp_csv, "per-run CSV path");
  exp_cmd->add_option("--cactus", exp_cactus, "cactus CSV path");
  exp_cmd->add_option("--louvain-seed", exp.louvain_seed);
  exp_cmd->add_option("--louvain-time-limit", exp.louvain_time_limit);
  exp_cmd->add_flag("--no-timing", exp_no_timing, "report runtimes as 0 for reproducible output");
  exp_cmd->add_option("--decay", exp.solver.decay);
  exp_cmd->add_option("--fast-decay", exp.solver.fast_decay);
  exp_cmd->add_option("--slow-decay", exp.solver.slow_decay);
  exp_cmd->add_option("--lbd-smoothing", exp.solver.lbd_smoothing);
  exp_cmd->add_option("--seed", exp.solver.seed);
  exp_cmd->add_option("--sample-interval", exp.solver.sample_interval);
  exp_cmd->add_option("--conflict-limit", exp.solver.conflict_limit);

  CLI11_PARSE(app, argc, argv);

  if (*solve_cmd) {
    if (vl_parse_heuristic(solve_h.heuristic.c_str(), &solve_opts.heuristic) != VL_OK) return report_error("solve");
    solve_opts.time_limit_seconds = solve_timeout;
    vl_formula* f = nullptr;
    if (vl_formula_read(solve_path.c_str(), &f) != VL_OK) return report_error(solve_path.c_str());
    for (size_t i = 0; i < vl_formula_num_warnings(f); ++i) std::printf("c warning: %s\n", vl_formula_warning(f, i));
    vl_result* r = nullptr;
    if (vl_solve(f, &solve_opts, &r) != VL_OK) {
      vl_formula_free(f);
      return report_error("solve");
    }
    vl_stats st;
    vl_result_stats(r, &st);
    std::printf("c decisions %llu conflicts %llu propagations %llu restarts %llu seconds %.3f\n",
                static_cast<unsigned long long>(st.decisions), static_cast<unsigned long long>(st.conflicts),
                static_cast<unsigned long long>(st.propagations), static_cast<unsigned long long>(st.restarts),
                st.seconds);
    vl_outcome outcome = vl_result_outcome(r);
    if (outcome == VL_SAT) {
      std::printf("s SATISFIABLE\n");
      if (print_model) {
        std::string line = "v";
        for (uint32_t v = 1; v <= vl_formula_num_vars(f); ++v) {
          line += ' ';
          if (vl_result_value(r, v) == 0) line += '-';
          line += std::to_string(v);
          if (line.size() > 72) {
            std::printf("%s\n", line.c_str());
            line = "v";
          }
        }
        std::printf("%s 0\n", line.c_str());
      }
    } else if (outcome == VL_UNSAT) {
      std::printf("s UNSATISFIABLE\n");
    } else {
      std::printf("s UNKNOWN\n");
    }
    vl_result_free(r);
    vl_formula_free(f);
    return static_cast<int>(outcome);
  }

  if (*gen_cmd) {
    vl_formula* f = nullptr;
    vl_communities* c = nullptr;
    if (*gen_random) {
      if (vl_gen_random(gen_n, gen_m, gen_k, gen_seed, &f) != VL_OK) return report_error("gen random");
    } else {
      if (vl_gen_planted(&planted, &f, &c) != VL_OK) return report_error("gen planted");
    }
    int rc = 0;
    if (vl_formula_write(f, gen_out.c_str()) != VL_OK) rc = report_error(gen_out.c_str());
    if (c && rc == 0) {
      std::string path = planted_comm.empty() ? strip_cnf(gen_out) + ".comm" : planted_comm;
      if (vl_communities_write(c, path.c_str()) != VL_OK) rc = report_error(path.c_str());
    }
    vl_communities_free(c);
    vl_formula_free(f);
    return rc;
  }

  if (*comm_cmd) {
    vl_formula* f = nullptr;
    if (vl_formula_read(comm_in.c_str(), &f) != VL_OK) return report_error(comm_in.c_str());
    int rc = 0;
    vl_communities* c = nullptr;
    double q = 0.0;
    if (vl_louvain(f, louvain_seed, louvain_limit, &c) != VL_OK || vl_modularity(f, c, &q) != VL_OK) {
      rc = report_error("louvain");
    } else if (vl_communities_write(c, comm_out.c_str()) != VL_OK) {
      rc = report_error(comm_out.c_str());
    } else {
      std::printf("communities %u modularity %.6f\n", vl_communities_count(c), q);
    }
    if (rc == 0 && !vig_out.empty() && vl_formula_write_vig(f, vig_out.c_str()) != VL_OK) {
      rc = report_error(vig_out.c_str());
    }
    vl_communities_free(c);
    vl_formula_free(f);
    return rc;
  }

  if (*exp_cmd) {
    exp.experiment = exp_kind.c_str();
    exp.instances_dir = exp_instances.c_str();
    exp.communities_dir = exp_communities.empty() ? nullptr : exp_communities.c_str();
    exp.heuristics = exp_heuristics.c_str();
    exp.record_timing = exp_no_timing ? 0 : 1;
    vl_report* report = nullptr;
    if (vl_run_experiment(&exp, &report) != VL_OK) return report_error("experiment");
    int rc = 0;
    if (vl_report_write(report, VL_REPORT_JSON, exp_report.c_str()) != VL_OK) rc = report_error(exp_report.c_str());
    if (rc == 0 && !exp_csv.empty() && vl_report_write(report, VL_REPORT_CSV, exp_csv.c_str()) != VL_OK) {
      rc = report_error(exp_csv.c_str());
    }
    if (rc == 0 && !exp_cactus.empty() && vl_report_write(report, VL_REPORT_CACTUS, exp_cactus.c_str()) != VL_OK) {
      rc = report_error(exp_cactus.c_str());
    }
    if (rc == 0) std::printf("%zu runs written to %s\n", vl_report_num_records(report), exp_report.c_str());
    vl_report_free(report);
    return rc;
  }
  return 0;
}
