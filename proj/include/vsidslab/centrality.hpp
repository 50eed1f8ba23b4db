#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vsidslab/cnf.hpp"
#include "vsidslab/graph.hpp"

namespace vsidslab {

// tdc/tec are the same computations as dc/ec, over a temporal graph.
enum class CentralityKind { tdc, tec, dc, ec };

std::string_view to_string(CentralityKind kind);

struct CentralityVector {
  std::vector<double> scores;  // indexed by variable slot
  CentralityKind kind = CentralityKind::dc;
  std::uint64_t sample_time = 0;
  // Eigenvector only: set when the graph had no edges.
  bool degenerate = false;
  // Eigenvector only: squared-norm share of the connected component holding
  // the top-scored vertex.
  double dominant_component_mass = 1.0;
};

/// Weighted degree of every vertex.
CentralityVector degree_centrality(const WeightedGraph& graph, CentralityKind kind = CentralityKind::dc,
                                   std::uint64_t sample_time = 0);

/// Power iteration on the weighted adjacency matrix (shifted by the identity)
/// from the uniform vector, normalized to unit Euclidean length after every
/// step. For an edgeless graph
/// returns the uniform unit vector over `incident` (all vertices if empty),
/// flagged degenerate.
CentralityVector eigenvector_centrality(const WeightedGraph& graph, int iterations = 100,
                                        CentralityKind kind = CentralityKind::ec, std::uint64_t sample_time = 0,
                                        std::span<const std::uint8_t> incident = {});

/// Mask of variables occurring in at least one clause.
std::vector<std::uint8_t> incident_vars(const Formula& formula);

}  // namespace vsidslab
