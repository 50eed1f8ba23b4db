#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <unordered_map>
#include <vector>

#include "vsidslab/cnf.hpp"

namespace vsidslab {

/// Undirected edge between variable slots u < v.
struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double weight = 0.0;
};

/// Immutable weighted undirected graph over variable slots, CSR layout.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// Edges are merged by endpoint pair (weights summed); self-loops rejected.
  WeightedGraph(std::size_t num_vertices, std::vector<Edge> edges);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::span<const Edge> edges() const { return edges_; }
  double total_weight() const { return total_weight_; }

  struct Neighbor {
    std::uint32_t vertex;
    double weight;
  };
  std::span<const Neighbor> neighbors(std::size_t vertex) const {
    return {adjacency_.data() + offsets_[vertex], offsets_[vertex + 1] - offsets_[vertex]};
  }
  /// Weight of edge (u,v), 0 if absent.
  double weight(std::size_t u, std::size_t v) const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  double total_weight_ = 0.0;
};

/// Variable incidence graph: each clause is a clique whose edges weigh
/// 1/(|c|-1). Unit clauses add nothing.
WeightedGraph build_vig(const Formula& formula);

void write_edge_csv(const WeightedGraph& graph, std::ostream& out);

/// Temporal variable incidence graph. A clause of age a contributes
/// alpha^a / (|c|-1) to each of its pairs. Decay is lazy: stored weights are
/// multiplied by a global scale that shrinks by alpha on every advance.
class Tvig {
 public:
  static constexpr double kRescaleThreshold = 1e-100;

  explicit Tvig(std::size_t num_vars, double alpha = 0.95);

  /// Adds every clause of the formula at the current time (normally 0).
  void add_formula(const Formula& formula);
  /// Throws std::invalid_argument unless clause.timestamp == current_time().
  void add_clause(const Clause& clause);
  void advance();

  std::size_t num_vars() const { return num_vars_; }
  double alpha() const { return alpha_; }
  std::uint64_t current_time() const { return time_; }
  double global_scale() const { return scale_; }
  std::size_t rescale_count() const { return rescales_; }
  std::size_t num_edges() const { return weights_.size(); }

  double effective_weight(Var a, Var b) const;
  WeightedGraph snapshot() const;
  /// Weighted degree of every variable, kept in per-variable lazy sums so
  /// variables with equal clause histories get bit-identical values.
  std::vector<double> degrees() const;

 private:
  static std::uint64_t key(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  std::size_t num_vars_;
  double alpha_;
  std::uint64_t time_ = 0;
  double scale_ = 1.0;
  std::size_t rescales_ = 0;
  std::unordered_map<std::uint64_t, double> weights_;
  std::vector<double> degree_;
};

}  // namespace vsidslab
