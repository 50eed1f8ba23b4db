#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "vsidslab/cnf.hpp"
#include "vsidslab/graph.hpp"

namespace vsidslab {

struct CommunityAssignment {
  std::vector<std::uint32_t> community_of;  // indexed by variable slot, ids dense from 0
  std::uint32_t num_communities = 0;
  double modularity = 0.0;

  /// Number of variables per community.
  std::vector<std::size_t> sizes() const;
};

/// Renumbers labels densely in order of first appearance.
std::vector<std::uint32_t> densify(std::span<const std::uint32_t> labels, std::uint32_t* num_communities = nullptr);

/// Weighted Newman modularity sum_c (in_c/2m - (tot_c/2m)^2); 0 for an
/// edgeless graph.
double modularity(const WeightedGraph& graph, std::span<const std::uint32_t> community_of);

struct LouvainOptions {
  std::uint64_t seed = 0;
  // Zero means unlimited.
  double time_limit_seconds = 60.0;
};

class LouvainTimeout : public std::runtime_error {
 public:
  LouvainTimeout() : std::runtime_error("louvain exceeded its time limit") {}
};

struct LouvainTrace {
  // Modularity of the original graph after each aggregation level.
  std::vector<double> level_modularity;
};

/// Louvain method: local moving in seeded random order, then aggregation,
/// until a level makes no move. Throws LouvainTimeout past the time limit.
CommunityAssignment louvain(const WeightedGraph& graph, const LouvainOptions& options = {},
                            LouvainTrace* trace = nullptr);

/// Mask over variable slots: 1 if the variable shares an input clause with a
/// variable of another community.
std::vector<std::uint8_t> bridge_variables(const Formula& formula, std::span<const std::uint32_t> community_of);

/// One line per variable: "<var_index> <community_id>".
void write_communities(std::ostream& out, const CommunityAssignment& assignment);
/// Reads the format above; every variable 1..num_vars must appear once.
/// Modularity is left at 0. Throws std::runtime_error on malformed input.
CommunityAssignment read_communities(std::istream& in, std::uint32_t num_vars);

}  // namespace vsidslab
