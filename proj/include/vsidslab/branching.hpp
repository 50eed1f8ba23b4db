#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "vsidslab/analysis.hpp"
#include "vsidslab/cnf.hpp"

namespace vsidslab {

enum class HeuristicKind { cvsids, mvsids, adaptvsids, random };

std::string_view to_string(HeuristicKind kind);
std::optional<HeuristicKind> parse_heuristic(std::string_view name);

struct HeuristicParams {
  HeuristicKind kind = HeuristicKind::mvsids;
  double decay = 0.95;
  double fast_decay = 0.75;
  double slow_decay = 0.99;
  // Weight of the newest LBD in the LBD moving average. 0 freezes the average
  // at the first learnt clause's LBD.
  double lbd_smoothing = 0.05;
  // cVSIDS only. A unit learnt clause is asserted at level 0 and never picked
  // again, so skipping its bump does not change any decision.
  bool bump_unit_learnts = true;
};

/// Throws std::invalid_argument if a decay is outside (0,1) or the smoothing
/// weight is outside [0,1).
void validate(const HeuristicParams& params);

/// Per-variable activities with the growing-bump-quantum decay scheme: a decay
/// by f divides the quantum by f instead of multiplying every activity. The
/// normalized score of a variable is raw / quantum, which equals the activity
/// of a direct implementation that multiplies all scores on every decay.
class ActivityTable {
 public:
  static constexpr double kRescaleThreshold = 1e100;
  // 2^-332, about 1.1e-100. A power of two keeps rescaling exact.
  static constexpr int kRescaleExponent = -332;

  explicit ActivityTable(std::size_t num_vars = 0);

  std::size_t num_vars() const { return raw_.size(); }

  void bump(Var v);
  void decay(double factor);
  /// Overwrites normalized scores (e.g. with centrality seeds).
  void seed(std::span<const double> scores);

  double score(Var v) const { return raw_[slot(v)] / quantum_; }
  double raw(Var v) const { return raw_[slot(v)]; }
  double bump_quantum() const { return quantum_; }
  std::size_t rescale_count() const { return rescales_; }
  std::vector<double> scores() const;

  /// Strict ranking order: higher activity first, lower index on ties.
  bool ranks_before(Var a, Var b) const {
    double ra = raw_[slot(a)];
    double rb = raw_[slot(b)];
    return ra > rb || (ra == rb && a.index < b.index);
  }

 private:
  void rescale();

  std::vector<double> raw_;
  double quantum_ = 1.0;
  std::size_t rescales_ = 0;
};

struct RankedVar {
  Var var;
  double score = 0.0;
};

/// Variables in decreasing score order (ties by index), scores normalized by
/// the current bump quantum.
std::vector<RankedVar> ranking(const ActivityTable& table);

/// Closed form s_n = (1-f) * sum_k delta_k f^(n-k).
double normalized_vsids(std::span<const std::uint8_t> deltas, double f);
/// One exponential-moving-average step s_n = (1-f) delta + f s_{n-1}.
double normalized_vsids_recursive(double s_prev, std::uint8_t delta, double f);

/// Moving average of learnt-clause LBDs driving the adaptive decay choice.
struct AdaptState {
  double lbdema = 0.0;
  bool initialized = false;
  double lbd_smoothing = 0.05;
  double fast_decay = 0.75;
  double slow_decay = 0.99;

  /// Decay for a clause with this LBD, compared against the average before
  /// the clause is folded in. Initializes the average on first use.
  double decay_for(std::uint32_t lbd);
  void observe(std::uint32_t lbd);
};

class BranchingHeuristic {
 public:
  virtual ~BranchingHeuristic() = default;

  virtual HeuristicKind kind() const = 0;
  /// Chooses an unassigned variable. At least one must exist.
  virtual Var pick(const AssignmentView& assignment, std::mt19937_64& rng) = 0;
  virtual void on_conflict(const ConflictAnalysis& analysis) = 0;
  /// Called for every variable the solver unassigns.
  virtual void on_unassign(Var) {}
  /// Variables bumped by the most recent on_conflict call.
  virtual std::span<const Var> last_bumped() const { return {}; }
  /// Activity table, or nullptr for heuristics without one.
  virtual const ActivityTable* activities() const { return nullptr; }
  /// Last decay factor applied, or 0 if none.
  virtual double last_decay() const { return 0.0; }
};

class VsidsHeuristic final : public BranchingHeuristic {
 public:
  VsidsHeuristic(std::size_t num_vars, const HeuristicParams& params);

  HeuristicKind kind() const override { return params_.kind; }
  Var pick(const AssignmentView& assignment, std::mt19937_64& rng) override;
  void on_conflict(const ConflictAnalysis& analysis) override;
  void on_unassign(Var v) override;
  std::span<const Var> last_bumped() const override { return bumped_; }
  const ActivityTable* activities() const override { return &table_; }
  double last_decay() const override { return last_decay_; }

  void seed(std::span<const double> scores);
  const AdaptState& adapt_state() const { return adapt_; }

 private:
  void heap_insert(std::uint32_t s);
  void heap_up(std::size_t pos);
  void heap_down(std::size_t pos);
  std::uint32_t heap_pop();
  bool before(std::uint32_t a, std::uint32_t b) const { return table_.ranks_before(var_at(a), var_at(b)); }
  void bump(Var v);

  HeuristicParams params_;
  ActivityTable table_;
  AdaptState adapt_;
  std::vector<std::uint32_t> heap_;
  std::vector<std::int64_t> heap_pos_;  // -1 when not in heap
  std::vector<Var> bumped_;
  double last_decay_ = 0.0;
};

class RandomHeuristic final : public BranchingHeuristic {
 public:
  explicit RandomHeuristic(std::size_t num_vars) : num_vars_(num_vars) {}

  HeuristicKind kind() const override { return HeuristicKind::random; }
  Var pick(const AssignmentView& assignment, std::mt19937_64& rng) override;
  void on_conflict(const ConflictAnalysis&) override {}

 private:
  std::size_t num_vars_;
};

std::unique_ptr<BranchingHeuristic> make_heuristic(std::size_t num_vars, const HeuristicParams& params);

}  // namespace vsidslab
