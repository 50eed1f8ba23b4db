#include "vsidslab/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace vsidslab {

WeightedGraph::WeightedGraph(std::size_t num_vertices, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("self-loop in graph");
    if (e.u >= num_vertices || e.v >= num_vertices) throw std::invalid_argument("edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (const auto& e : edges) {
    if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
      edges_.back().weight += e.weight;
    } else {
      edges_.push_back(e);
    }
  }

  std::vector<std::size_t> degree(num_vertices, 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
    total_weight_ += e.weight;
  }
  offsets_.assign(num_vertices + 1, 0);
  for (std::size_t i = 0; i < num_vertices; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = Neighbor{e.v, e.weight};
    adjacency_[fill[e.v]++] = Neighbor{e.u, e.weight};
  }
}

double WeightedGraph::weight(std::size_t u, std::size_t v) const {
  for (const auto& nb : neighbors(u)) {
    if (nb.vertex == v) return nb.weight;
  }
  return 0.0;
}

WeightedGraph build_vig(const Formula& formula) {
  std::vector<Edge> edges;
  for (const auto& clause : formula.clauses) {
    const std::size_t k = clause.size();
    if (k < 2) continue;
    const double w = 1.0 / static_cast<double>(k - 1);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        edges.push_back(Edge{static_cast<std::uint32_t>(slot(clause.literals[i].var)),
                             static_cast<std::uint32_t>(slot(clause.literals[j].var)), w});
      }
    }
  }
  return WeightedGraph(formula.num_vars, std::move(edges));
}

void write_edge_csv(const WeightedGraph& graph, std::ostream& out) {
  out << "var1,var2,weight\n";
  out.precision(17);
  for (const auto& e : graph.edges()) out << (e.u + 1) << ',' << (e.v + 1) << ',' << e.weight << '\n';
}

Tvig::Tvig(std::size_t num_vars, double alpha) : num_vars_(num_vars), alpha_(alpha), degree_(num_vars, 0.0) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0,1]");
}

void Tvig::add_formula(const Formula& formula) {
  for (const auto& clause : formula.clauses) {
    Clause stamped{clause.literals, time_, clause.lbd};
    add_clause(stamped);
  }
}

void Tvig::add_clause(const Clause& clause) {
  if (clause.timestamp != time_) throw std::invalid_argument("clause timestamp does not match graph time");
  const std::size_t k = clause.size();
  if (k < 2) return;
  const double w = (1.0 / static_cast<double>(k - 1)) / scale_;
  for (std::size_t i = 0; i < k; ++i) {
    auto a = static_cast<std::uint32_t>(slot(clause.literals[i].var));
    for (std::size_t j = i + 1; j < k; ++j) {
      auto b = static_cast<std::uint32_t>(slot(clause.literals[j].var));
      if (a == b) throw std::invalid_argument("clause repeats a variable");
      weights_[key(a, b)] += w;
    }
  }
  // (|c|-1) pairs of weight 1/(|c|-1) each.
  const double unit = 1.0 / scale_;
  for (const auto& lit : clause.literals) degree_[slot(lit.var)] += unit;
}

void Tvig::advance() {
  ++time_;
  scale_ *= alpha_;
  if (scale_ < kRescaleThreshold) {
    for (auto& [k, w] : weights_) w *= scale_;
    for (auto& d : degree_) d *= scale_;
    scale_ = 1.0;
    ++rescales_;
  }
}

double Tvig::effective_weight(Var a, Var b) const {
  auto it = weights_.find(key(static_cast<std::uint32_t>(slot(a)), static_cast<std::uint32_t>(slot(b))));
  return it == weights_.end() ? 0.0 : it->second * scale_;
}

std::vector<double> Tvig::degrees() const {
  std::vector<double> out(degree_);
  for (auto& d : out) d *= scale_;
  return out;
}

WeightedGraph Tvig::snapshot() const {
  std::vector<Edge> edges;
  edges.reserve(weights_.size());
  for (const auto& [k, w] : weights_) {
    edges.push_back(Edge{static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k & 0xFFFFFFFFu), w * scale_});
  }
  return WeightedGraph(num_vars_, std::move(edges));
}

}  // namespace vsidslab
