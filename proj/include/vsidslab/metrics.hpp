#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vsidslab/cnf.hpp"

namespace vsidslab {

/// 1-based ranks by increasing value; ties share their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Sample Pearson correlation; nullopt when either side has zero variance or
/// fewer than two values.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of average-rank vectors.
std::optional<double> spearman(std::span<const double> a, std::span<const double> b);

/// tanh(mean(atanh(clamp(rho)))) with |rho| clamped to 0.999999.
/// Throws std::invalid_argument on an empty list.
double fisher_mean(std::span<const double> rhos);

/// 1-based position of `var` in the centrality ranking restricted to
/// unassigned variables (ties by lower index). `assigned` is indexed by slot.
std::size_t unassigned_rank(Var var, std::span<const double> centrality, std::span<const std::uint8_t> assigned);

/// 1 if unassigned_rank(var) <= k, else 0.
int top_k(Var var, std::span<const double> centrality, std::span<const std::uint8_t> assigned, std::size_t k);

/// Gini coefficient sum_ij |x_i - x_j| / (2 n sum x); 0 if the sum is 0.
double gini(std::span<const double> values);

/// Pick and bridge counters for one solver run.
struct FocusCounters {
  std::vector<std::uint64_t> picks_from;             // per community
  std::vector<std::uint32_t> decision_community_log;  // community of each decision
  std::uint64_t num_vars = 0;
  std::uint64_t bridge_vars = 0;
  std::uint64_t picks = 0;
  std::uint64_t bridge_picks = 0;
  std::uint64_t bumps = 0;
  std::uint64_t bridge_bumps = 0;
  std::uint64_t learnt_occurrences = 0;
  std::uint64_t bridge_learnt_occurrences = 0;

  FocusCounters() = default;
  FocusCounters(std::span<const std::uint32_t> community_of, std::uint32_t num_communities,
                std::span<const std::uint8_t> bridge);

  void record_decision(Var v);
  void record_bumps(std::span<const Var> vars);
  void record_learnt(const Clause& learnt);

 private:
  std::span<const std::uint32_t> community_of_;
  std::span<const std::uint8_t> bridge_;
};

/// Gini over picks_from(i) / size(i) for every community, zero-pick ones
/// included. Throws std::invalid_argument when there were no decisions.
double spatial_score(std::span<const std::uint64_t> picks_from, std::span<const std::size_t> community_sizes);

/// Window size ceil(0.1 * num_communities).
std::size_t temporal_window(std::uint32_t num_communities);

/// Fraction of decisions whose community is among the communities of the
/// previous window-size decisions (checked before the decision enters the
/// window). Throws std::invalid_argument on an empty log.
double temporal_score(std::span<const std::uint32_t> decision_communities, std::uint32_t num_communities);

struct BridgePercentages {
  std::optional<double> variables;
  std::optional<double> picked;
  std::optional<double> bumped;
  std::optional<double> learnt;
};

BridgePercentages bridge_percentages(const FocusCounters& counters);

}  // namespace vsidslab
