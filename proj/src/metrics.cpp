#include "vsidslab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace vsidslab {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 hold 1-based ranks i+1..j.
    double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx;
    double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  double r = sxy / (std::sqrt(sxx) * std::sqrt(syy));
  return std::clamp(r, -1.0, 1.0);
}

std::optional<double> spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("spearman: length mismatch");
  auto ra = average_ranks(a);
  auto rb = average_ranks(b);
  return pearson(ra, rb);
}

double fisher_mean(std::span<const double> rhos) {
  if (rhos.empty()) throw std::invalid_argument("fisher_mean of an empty list");
  constexpr double kClamp = 0.999999;
  double sum = 0.0;
  for (double r : rhos) sum += std::atanh(std::clamp(r, -kClamp, kClamp));
  return std::tanh(sum / static_cast<double>(rhos.size()));
}

std::size_t unassigned_rank(Var var, std::span<const double> centrality, std::span<const std::uint8_t> assigned) {
  const double c = centrality[slot(var)];
  std::size_t ahead = 0;
  for (std::size_t u = 0; u < centrality.size(); ++u) {
    if (u == slot(var) || (!assigned.empty() && assigned[u])) continue;
    if (centrality[u] > c || (centrality[u] == c && u < slot(var))) ++ahead;
  }
  return ahead + 1;
}

int top_k(Var var, std::span<const double> centrality, std::span<const std::uint8_t> assigned, std::size_t k) {
  return unassigned_rank(var, centrality, assigned) <= k ? 1 : 0;
}

double gini(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("gini of an empty list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  if (total <= 0.0) return 0.0;
  // sum_ij |x_i - x_j| = 2 sum_i (2i - n - 1) x_(i) for ascending x, 1-based i.
  double weighted = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    weighted += (2.0 * static_cast<double>(i + 1) - static_cast<double>(n) - 1.0) * sorted[i];
  }
  return weighted / (static_cast<double>(n) * total);
}

FocusCounters::FocusCounters(std::span<const std::uint32_t> community_of, std::uint32_t num_communities,
                             std::span<const std::uint8_t> bridge)
    : picks_from(num_communities, 0), num_vars(community_of.size()), community_of_(community_of), bridge_(bridge) {
  bridge_vars = static_cast<std::uint64_t>(std::count(bridge.begin(), bridge.end(), std::uint8_t{1}));
}

void FocusCounters::record_decision(Var v) {
  ++picks;
  const auto c = community_of_[slot(v)];
  ++picks_from[c];
  decision_community_log.push_back(c);
  if (bridge_[slot(v)]) ++bridge_picks;
}

void FocusCounters::record_bumps(std::span<const Var> vars) {
  for (Var v : vars) {
    ++bumps;
    if (bridge_[slot(v)]) ++bridge_bumps;
  }
}

void FocusCounters::record_learnt(const Clause& learnt) {
  for (const auto& lit : learnt.literals) {
    ++learnt_occurrences;
    if (bridge_[slot(lit.var)]) ++bridge_learnt_occurrences;
  }
}

double spatial_score(std::span<const std::uint64_t> picks_from, std::span<const std::size_t> community_sizes) {
  if (picks_from.size() != community_sizes.size()) throw std::invalid_argument("spatial_score: size mismatch");
  std::uint64_t total = std::accumulate(picks_from.begin(), picks_from.end(), std::uint64_t{0});
  if (total == 0) throw std::invalid_argument("spatial_score needs at least one decision");
  std::vector<double> cs(picks_from.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    cs[i] = community_sizes[i] == 0 ? 0.0 : static_cast<double>(picks_from[i]) / static_cast<double>(community_sizes[i]);
  }
  return gini(cs);
}

std::size_t temporal_window(std::uint32_t num_communities) {
  return (static_cast<std::size_t>(num_communities) + 9) / 10;
}

double temporal_score(std::span<const std::uint32_t> decision_communities, std::uint32_t num_communities) {
  if (decision_communities.empty()) throw std::invalid_argument("temporal_score needs at least one decision");
  const std::size_t ws = std::max<std::size_t>(temporal_window(num_communities), 1);
  std::unordered_map<std::uint32_t, std::size_t> window;
  std::uint64_t hits = 0;
  for (std::size_t d = 0; d < decision_communities.size(); ++d) {
    const auto c = decision_communities[d];
    if (window.count(c)) ++hits;
    ++window[c];
    if (d >= ws) {
      auto old = decision_communities[d - ws];
      if (--window[old] == 0) window.erase(old);
    }
  }
  return static_cast<double>(hits) / static_cast<double>(decision_communities.size());
}

BridgePercentages bridge_percentages(const FocusCounters& counters) {
  auto pct = [](std::uint64_t part, std::uint64_t whole) -> std::optional<double> {
    if (whole == 0) return std::nullopt;
    return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
  };
  return BridgePercentages{pct(counters.bridge_vars, counters.num_vars), pct(counters.bridge_picks, counters.picks),
                           pct(counters.bridge_bumps, counters.bumps),
                           pct(counters.bridge_learnt_occurrences, counters.learnt_occurrences)};
}

}  // namespace vsidslab
