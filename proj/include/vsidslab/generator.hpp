#pragma once

#include <cstdint>

#include "vsidslab/cnf.hpp"
#include "vsidslab/community.hpp"

namespace vsidslab {

/// m clauses over k distinct uniformly drawn variables with uniform
/// polarities. Throws std::invalid_argument unless 1 <= k <= n.
Formula gen_random_ksat(std::uint32_t num_vars, std::uint32_t num_clauses, std::uint32_t clause_len,
                        std::uint64_t seed);

struct PlantedConfig {
  std::uint32_t num_vars = 400;
  std::uint32_t num_communities = 4;
  std::uint32_t clause_len = 3;
  std::uint32_t num_clauses = 1700;
  // Probability that a clause draws all its variables from one block.
  double intra_probability = 0.95;
  std::uint64_t seed = 0;
};

struct PlantedInstance {
  Formula formula;
  CommunityAssignment planted;
};

/// Variables are split into equal consecutive blocks (the remainder joins the
/// last block). Each clause lies inside one random block with probability p,
/// otherwise its variables are drawn from all variables. Duplicate clauses are
/// resampled. The planted assignment's modularity is left at 0.
PlantedInstance gen_planted_community(const PlantedConfig& config);

}  // namespace vsidslab
