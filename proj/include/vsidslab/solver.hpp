#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "vsidslab/analysis.hpp"
#include "vsidslab/branching.hpp"
#include "vsidslab/cnf.hpp"

namespace vsidslab {

struct SolverConfig {
  // Luby restarts: the i-th restart interval is luby(i) * restart_base conflicts.
  bool restarts = true;
  std::uint64_t restart_base = 100;
  bool clause_deletion = true;
  bool phase_saving = true;
  // Iterations (decisions plus conflicts) between sample hooks.
  std::uint64_t sample_interval = 5000;
  std::uint64_t seed = 0;
  HeuristicParams heuristic;
  // Zero means unlimited.
  double time_limit_seconds = 0.0;
  std::uint64_t conflict_limit = 0;
  // Record every decision variable in SatResult::decision_log.
  bool record_decisions = false;
  // Check every learnt clause against a truth table of the input (only
  // honored when the formula has at most 20 variables; for tests).
  bool validate_learnts = false;
};

/// Throws std::invalid_argument on out-of-range settings.
void validate(const SolverConfig& config);

enum class SolveStatus { sat, unsat, unknown };

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  std::uint64_t reductions = 0;
  std::uint64_t learnt_clauses = 0;
  std::uint64_t deleted_clauses = 0;
  std::uint64_t samples = 0;
  double seconds = 0.0;

  std::uint64_t iterations() const { return decisions + conflicts; }
};

struct SatResult {
  SolveStatus status = SolveStatus::unknown;
  // model[slot(v)] is the value of v when status == sat.
  std::vector<bool> model;
  SolverStats stats;
  std::vector<Var> decision_log;
};

/// Luby sequence 1,1,2,1,1,2,4,... for index i >= 0.
std::uint64_t luby(std::uint64_t i);

struct TrailEntry {
  Lit lit;
  std::uint32_t level = 0;
  // Index of the reason clause, or nullopt for decisions and level-0 units.
  std::optional<std::uint32_t> reason;
};

struct DecisionEvent {
  Var var;
  std::uint64_t iteration = 0;
};

struct SampleEvent {
  std::uint64_t iteration = 0;
  std::uint64_t conflicts = 0;
  AssignmentView assignment;
  const BranchingHeuristic* heuristic = nullptr;
};

/// Observers invoked synchronously on the solver thread. Hooks must not mutate
/// solver or heuristic state.
struct InstrumentationHooks {
  std::function<void(const DecisionEvent&)> on_decision;
  std::function<void(const ConflictAnalysis&)> on_conflict;
  std::function<void(const SampleEvent&)> on_sample;
};

/// Learnt-clause summary used when selecting clauses to keep.
struct LearntInfo {
  std::uint32_t lbd = 0;
  double activity = 0.0;
  bool locked = false;
};

/// Indices of clauses kept by a database reduction: all locked clauses plus
/// the better half of the unlocked ones, ordered by LBD then activity.
std::vector<std::size_t> select_retained(std::span<const LearntInfo> clauses, bool clause_deletion);

class Solver {
 public:
  /// The heuristic must be sized for formula.num_vars and outlive the solver.
  Solver(const Formula& formula, SolverConfig config, BranchingHeuristic& heuristic);

  SatResult solve(const InstrumentationHooks& hooks = {});

  // Step-level interface, mainly for tests.

  /// False if the root level is already inconsistent.
  bool root_consistent() const { return ok_; }
  void decide(Lit lit);
  /// Runs unit propagation to fixpoint. Returns the conflicting clause index.
  std::optional<std::uint32_t> propagate();
  ConflictAnalysis analyze(std::uint32_t conflict);
  void backtrack(std::uint32_t level);
  /// Adds a learnt clause (asserting literal first), enqueues the asserting
  /// literal and returns its index (nullopt for units).
  std::optional<std::uint32_t> learn(const ConflictAnalysis& analysis);

  std::uint32_t decision_level() const { return static_cast<std::uint32_t>(trail_lim_.size()); }
  std::span<const TrailEntry> trail() const { return trail_; }
  /// -1 unassigned, 0 false, 1 true.
  std::int8_t value(Var v) const { return assigns_[slot(v)]; }
  std::int8_t value(Lit lit) const;
  std::uint32_t level(Var v) const { return level_[slot(v)]; }
  AssignmentView assignment() const { return AssignmentView(assigns_); }
  std::vector<Lit> clause_literals(std::uint32_t index) const;
  std::size_t num_learnts() const;
  const SolverStats& stats() const { return stats_; }

 private:
  struct StoredClause {
    std::vector<std::uint32_t> lits;  // internal encoding 2*slot + negated
    bool learnt = false;
    bool removed = false;
    std::uint32_t lbd = 0;
    double activity = 0.0;
    std::uint64_t timestamp = 0;
  };
  struct Watcher {
    std::uint32_t clause;
    std::uint32_t blocker;
  };

  static std::uint32_t encode(Lit lit) { return static_cast<std::uint32_t>(2 * slot(lit.var) + (lit.negated ? 1 : 0)); }
  static Lit decode(std::uint32_t x) { return Lit{var_at(x >> 1), (x & 1) != 0}; }
  std::int8_t lit_value(std::uint32_t x) const {
    std::int8_t a = assigns_[x >> 1];
    return a < 0 ? a : static_cast<std::int8_t>(a ^ static_cast<std::int8_t>(x & 1));
  }

  std::uint32_t add_clause(std::vector<std::uint32_t> lits, bool learnt, std::uint32_t lbd, std::uint64_t timestamp);
  void attach(std::uint32_t index);
  void enqueue(std::uint32_t lit, std::optional<std::uint32_t> reason);
  bool locked(std::uint32_t index) const;
  void bump_clause(std::uint32_t index);
  void reduce_db();
  bool check_model() const;
  void validate_learnt(const Clause& learnt) const;
  bool out_of_budget() const;

  const Formula& formula_;
  SolverConfig config_;
  BranchingHeuristic& heuristic_;
  std::mt19937_64 rng_;
  bool ok_ = true;

  std::vector<StoredClause> clauses_;
  std::vector<std::uint32_t> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<std::uint32_t> level_;
  std::vector<std::optional<std::uint32_t>> reason_;
  std::vector<std::uint8_t> saved_phase_;
  std::vector<TrailEntry> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<std::uint8_t> seen_;
  std::vector<std::uint32_t> level_stamp_;
  std::uint32_t stamp_ = 0;

  double clause_inc_ = 1.0;
  double max_learnts_ = 0.0;
  double adjust_confl_ = 100.0;
  std::uint64_t adjust_countdown_ = 100;

  SolverStats stats_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::uint64_t> truth_table_;  // satisfying assignments, validate_learnts only
};

/// Convenience wrapper: builds the heuristic from config.heuristic and solves.
SatResult solve(const Formula& formula, const SolverConfig& config, const InstrumentationHooks& hooks = {});

}  // namespace vsidslab
