#include "vsidslab/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vsidslab {

namespace {

double norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

std::vector<std::size_t> components(const WeightedGraph& graph) {
  std::vector<std::size_t> parent(graph.num_vertices());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& e : graph.edges()) {
    auto a = find(e.u);
    auto b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = find(i);
  return parent;
}

}  // namespace

std::string_view to_string(CentralityKind kind) {
  switch (kind) {
    case CentralityKind::tdc: return "tdc";
    case CentralityKind::tec: return "tec";
    case CentralityKind::dc: return "dc";
    case CentralityKind::ec: return "ec";
  }
  return "unknown";
}

CentralityVector degree_centrality(const WeightedGraph& graph, CentralityKind kind, std::uint64_t sample_time) {
  CentralityVector out;
  out.kind = kind;
  out.sample_time = sample_time;
  out.scores.assign(graph.num_vertices(), 0.0);
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
    double sum = 0.0;
    for (const auto& nb : graph.neighbors(v)) sum += nb.weight;
    out.scores[v] = sum;
  }
  return out;
}

CentralityVector eigenvector_centrality(const WeightedGraph& graph, int iterations, CentralityKind kind,
                                        std::uint64_t sample_time, std::span<const std::uint8_t> incident) {
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  const std::size_t n = graph.num_vertices();
  CentralityVector out;
  out.kind = kind;
  out.sample_time = sample_time;
  out.scores.assign(n, 0.0);
  if (n == 0) return out;

  if (graph.edges().empty()) {
    out.degenerate = true;
    std::size_t count = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (incident.empty() || incident[v]) ++count;
    }
    if (count == 0) return out;
    const double u = 1.0 / std::sqrt(static_cast<double>(count));
    for (std::size_t v = 0; v < n; ++v) {
      if (incident.empty() || incident[v]) out.scores[v] = u;
    }
    return out;
  }

  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> next(n);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t v = 0; v < n; ++v) {
      // Iterating on A + I keeps the limit but breaks the +-lambda tie of
      // bipartite graphs, where plain A oscillates between two vectors.
      double sum = x[v];
      for (const auto& nb : graph.neighbors(v)) sum += nb.weight * x[nb.vertex];
      next[v] = sum;
    }
    double len = norm(next);
    if (len == 0.0) break;
    for (std::size_t v = 0; v < n; ++v) x[v] = next[v] / len;
  }
  out.scores = std::move(x);

  auto comp = components(graph);
  std::size_t top = static_cast<std::size_t>(std::max_element(out.scores.begin(), out.scores.end()) - out.scores.begin());
  double in = 0.0;
  double all = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    double sq = out.scores[v] * out.scores[v];
    all += sq;
    if (comp[v] == comp[top]) in += sq;
  }
  out.dominant_component_mass = all > 0.0 ? in / all : 1.0;
  return out;
}

std::vector<std::uint8_t> incident_vars(const Formula& formula) {
  std::vector<std::uint8_t> mask(formula.num_vars, 0);
  for (const auto& c : formula.clauses) {
    for (const auto& lit : c.literals) mask[slot(lit.var)] = 1;
  }
  return mask;
}

}  // namespace vsidslab
