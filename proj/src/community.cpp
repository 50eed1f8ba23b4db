#include "vsidslab/community.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>

namespace vsidslab {

std::vector<std::size_t> CommunityAssignment::sizes() const {
  std::vector<std::size_t> out(num_communities, 0);
  for (auto c : community_of) ++out[c];
  return out;
}

std::vector<std::uint32_t> densify(std::span<const std::uint32_t> labels, std::uint32_t* num_communities) {
  std::unordered_map<std::uint32_t, std::uint32_t> ids;
  std::vector<std::uint32_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(labels[i], static_cast<std::uint32_t>(ids.size()));
    out[i] = it->second;
  }
  if (num_communities) *num_communities = static_cast<std::uint32_t>(ids.size());
  return out;
}

double modularity(const WeightedGraph& graph, std::span<const std::uint32_t> community_of) {
  const double m = graph.total_weight();
  if (m <= 0.0) return 0.0;
  std::uint32_t count = 0;
  for (auto c : community_of) count = std::max(count, c + 1);
  std::vector<double> in(count, 0.0);
  std::vector<double> tot(count, 0.0);
  for (const auto& e : graph.edges()) {
    tot[community_of[e.u]] += e.weight;
    tot[community_of[e.v]] += e.weight;
    if (community_of[e.u] == community_of[e.v]) in[community_of[e.u]] += 2.0 * e.weight;
  }
  double q = 0.0;
  for (std::uint32_t c = 0; c < count; ++c) {
    double share = tot[c] / (2.0 * m);
    q += in[c] / (2.0 * m) - share * share;
  }
  return q;
}

namespace {

// Symmetric matrix A with explicit diagonal; degree k_i = sum_j A_ij.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // off-diagonal
  std::vector<double> loop;                                        // A_ii
  std::vector<double> degree;
  double two_m = 0.0;

  std::size_t size() const { return adj.size(); }
};

LevelGraph from_graph(const WeightedGraph& graph) {
  LevelGraph g;
  const std::size_t n = graph.num_vertices();
  g.adj.resize(n);
  g.loop.assign(n, 0.0);
  g.degree.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& nb : graph.neighbors(v)) {
      g.adj[v].emplace_back(nb.vertex, nb.weight);
      g.degree[v] += nb.weight;
    }
  }
  g.two_m = 2.0 * graph.total_weight();
  return g;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<std::uint32_t>& comm, std::uint32_t count) {
  LevelGraph out;
  out.adj.resize(count);
  out.loop.assign(count, 0.0);
  out.degree.assign(count, 0.0);
  out.two_m = g.two_m;
  std::vector<std::unordered_map<std::uint32_t, double>> acc(count);
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::uint32_t cv = comm[v];
    out.loop[cv] += g.loop[v];
    out.degree[cv] += g.degree[v];
    for (const auto& [u, w] : g.adj[v]) {
      std::uint32_t cu = comm[u];
      if (cu == cv) {
        out.loop[cv] += w;  // both directions are visited, matching sum over i,j in C
      } else {
        acc[cv][cu] += w;
      }
    }
  }
  for (std::uint32_t c = 0; c < count; ++c) {
    out.adj[c].assign(acc[c].begin(), acc[c].end());
    std::sort(out.adj[c].begin(), out.adj[c].end());
  }
  return out;
}

// One round of local moving. Returns true if any vertex moved.
bool local_moving(const LevelGraph& g, std::vector<std::uint32_t>& comm, std::mt19937_64& rng,
                  const std::chrono::steady_clock::time_point& deadline, bool limited) {
  const std::size_t n = g.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) tot[comm[v]] += g.degree[v];
  std::vector<double> link(n, 0.0);
  std::vector<std::uint32_t> touched;
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);

  bool any_move = false;
  bool moved = true;
  while (moved) {
    if (limited && std::chrono::steady_clock::now() > deadline) throw LouvainTimeout();
    moved = false;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::uint32_t v : order) {
      const std::uint32_t own = comm[v];
      const double k = g.degree[v];
      for (const auto& [u, w] : g.adj[v]) {
        if (link[comm[u]] == 0.0) touched.push_back(comm[u]);
        link[comm[u]] += w;
      }
      tot[own] -= k;
      double best_gain = link[own] - tot[own] * k / g.two_m;
      std::uint32_t best = own;
      for (std::uint32_t c : touched) {
        double gain = link[c] - tot[c] * k / g.two_m;
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best = c;
        }
      }
      tot[best] += k;
      comm[v] = best;
      if (best != own) moved = any_move = true;
      for (std::uint32_t c : touched) link[c] = 0.0;
      link[own] = 0.0;
      touched.clear();
    }
  }
  return any_move;
}

}  // namespace

namespace {

// Local moving and aggregation from singletons; returns the final membership.
std::vector<std::uint32_t> louvain_run(const WeightedGraph& graph, std::mt19937_64& rng,
                                       std::chrono::steady_clock::time_point deadline, bool limited,
                                       std::vector<double>* level_modularity) {
  const std::size_t n = graph.num_vertices();
  LevelGraph level = from_graph(graph);
  std::vector<std::uint32_t> membership(n);
  std::iota(membership.begin(), membership.end(), 0u);
  if (level_modularity) level_modularity->push_back(modularity(graph, membership));

  while (true) {
    std::vector<std::uint32_t> comm(level.size());
    std::iota(comm.begin(), comm.end(), 0u);
    if (!local_moving(level, comm, rng, deadline, limited)) break;
    std::uint32_t count = 0;
    comm = densify(comm, &count);
    for (auto& m : membership) m = comm[m];
    if (level_modularity) level_modularity->push_back(modularity(graph, membership));
    if (count == level.size()) break;
    level = aggregate(level, comm, count);
  }
  return membership;
}

}  // namespace

CommunityAssignment louvain(const WeightedGraph& graph, const LouvainOptions& options, LouvainTrace* trace) {
  const std::size_t n = graph.num_vertices();
  CommunityAssignment out;
  out.community_of.resize(n);
  std::iota(out.community_of.begin(), out.community_of.end(), 0u);
  out.num_communities = static_cast<std::uint32_t>(n);
  if (graph.edges().empty() || n == 0) {
    out.modularity = 0.0;
    return out;
  }

  const bool limited = options.time_limit_seconds > 0.0;
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(limited ? options.time_limit_seconds : 0.0));
  std::mt19937_64 rng(options.seed);
  auto membership = louvain_run(graph, rng, deadline, limited, trace ? &trace->level_modularity : nullptr);
  out.community_of = densify(membership, &out.num_communities);
  out.modularity = modularity(graph, out.community_of);
  return out;
}

std::vector<std::uint8_t> bridge_variables(const Formula& formula, std::span<const std::uint32_t> community_of) {
  std::vector<std::uint8_t> bridge(formula.num_vars, 0);
  for (const auto& clause : formula.clauses) {
    if (clause.size() < 2) continue;
    const auto first = community_of[slot(clause.literals.front().var)];
    bool mixed = std::any_of(clause.literals.begin(), clause.literals.end(),
                             [&](const Lit& l) { return community_of[slot(l.var)] != first; });
    if (!mixed) continue;
    for (const auto& lit : clause.literals) bridge[slot(lit.var)] = 1;
  }
  return bridge;
}

void write_communities(std::ostream& out, const CommunityAssignment& assignment) {
  for (std::size_t i = 0; i < assignment.community_of.size(); ++i) {
    out << (i + 1) << ' ' << assignment.community_of[i] << '\n';
  }
}

CommunityAssignment read_communities(std::istream& in, std::uint32_t num_vars) {
  std::vector<std::int64_t> labels(num_vars, -1);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::int64_t var = 0;
    std::int64_t comm = 0;
    std::string rest;
    if (!(fields >> var >> comm) || (fields >> rest)) {
      throw std::runtime_error("community file line " + std::to_string(line_no) + ": expected '<var> <community>'");
    }
    if (var < 1 || var > num_vars || comm < 0 || comm > 0xFFFFFFFFll) {
      throw std::runtime_error("community file line " + std::to_string(line_no) + ": value out of range");
    }
    if (labels[var - 1] >= 0) {
      throw std::runtime_error("community file line " + std::to_string(line_no) + ": variable listed twice");
    }
    labels[var - 1] = comm;
  }
  std::vector<std::uint32_t> raw(num_vars);
  for (std::size_t i = 0; i < num_vars; ++i) {
    if (labels[i] < 0) throw std::runtime_error("community file misses variable " + std::to_string(i + 1));
    raw[i] = static_cast<std::uint32_t>(labels[i]);
  }
  // Keep the file's relative id order while making ids dense.
  std::vector<std::uint32_t> ids(raw);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  CommunityAssignment out;
  out.community_of.resize(num_vars);
  for (std::size_t i = 0; i < num_vars; ++i) {
    out.community_of[i] = static_cast<std::uint32_t>(std::lower_bound(ids.begin(), ids.end(), raw[i]) - ids.begin());
  }
  out.num_communities = static_cast<std::uint32_t>(ids.size());
  return out;
}

}  // namespace vsidslab
