#include "vsidslab/generator.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace vsidslab {

namespace {

// k distinct variables from slots [first, first+count) with random signs.
std::vector<Lit> draw_clause(std::mt19937_64& rng, std::uint32_t first, std::uint32_t count, std::uint32_t k) {
  std::uniform_int_distribution<std::uint32_t> pick(0, count - 1);
  std::bernoulli_distribution sign(0.5);
  std::vector<Lit> lits;
  lits.reserve(k);
  while (lits.size() < k) {
    Var v = var_at(first + pick(rng));
    bool dup = std::any_of(lits.begin(), lits.end(), [&](const Lit& l) { return l.var == v; });
    if (dup) continue;
    lits.push_back(Lit{v, sign(rng)});
  }
  std::sort(lits.begin(), lits.end());
  return lits;
}

}  // namespace

Formula gen_random_ksat(std::uint32_t num_vars, std::uint32_t num_clauses, std::uint32_t clause_len,
                        std::uint64_t seed) {
  if (clause_len < 1 || clause_len > num_vars) throw std::invalid_argument("clause length must lie in [1, num_vars]");
  std::mt19937_64 rng(seed);
  Formula f;
  f.num_vars = num_vars;
  f.clauses.reserve(num_clauses);
  for (std::uint32_t i = 0; i < num_clauses; ++i) {
    f.clauses.push_back(Clause{draw_clause(rng, 0, num_vars, clause_len), 0, std::nullopt});
  }
  return f;
}

PlantedInstance gen_planted_community(const PlantedConfig& cfg) {
  if (cfg.clause_len < 2) throw std::invalid_argument("clause length must be >= 2");
  if (cfg.num_communities < 1 || cfg.num_communities > cfg.num_vars) {
    throw std::invalid_argument("community count must lie in [1, num_vars]");
  }
  if (!(cfg.intra_probability >= 0.0 && cfg.intra_probability <= 1.0)) {
    throw std::invalid_argument("intra probability must lie in [0,1]");
  }
  if (cfg.clause_len > cfg.num_vars) throw std::invalid_argument("clause length exceeds variable count");
  const std::uint32_t block = cfg.num_vars / cfg.num_communities;
  if (cfg.intra_probability > 0.0 && block < cfg.clause_len) {
    throw std::invalid_argument("community block smaller than clause length");
  }

  PlantedInstance out;
  out.planted.num_communities = cfg.num_communities;
  out.planted.community_of.resize(cfg.num_vars);
  for (std::uint32_t s = 0; s < cfg.num_vars; ++s) {
    out.planted.community_of[s] = std::min(s / block, cfg.num_communities - 1);
  }

  std::mt19937_64 rng(cfg.seed);
  std::bernoulli_distribution intra(cfg.intra_probability);
  std::uniform_int_distribution<std::uint32_t> which(0, cfg.num_communities - 1);
  std::set<std::vector<Lit>> seen;
  out.formula.num_vars = cfg.num_vars;
  out.formula.clauses.reserve(cfg.num_clauses);
  std::size_t attempts = 0;
  const std::size_t max_attempts = static_cast<std::size_t>(cfg.num_clauses) * 1000 + 1000;
  while (out.formula.clauses.size() < cfg.num_clauses) {
    if (++attempts > max_attempts) throw std::invalid_argument("cannot draw enough distinct clauses");
    std::vector<Lit> lits;
    if (intra(rng)) {
      std::uint32_t b = which(rng);
      std::uint32_t first = b * block;
      std::uint32_t count = b + 1 == cfg.num_communities ? cfg.num_vars - first : block;
      lits = draw_clause(rng, first, count, cfg.clause_len);
    } else {
      lits = draw_clause(rng, 0, cfg.num_vars, cfg.clause_len);
    }
    if (!seen.insert(lits).second) continue;
    out.formula.clauses.push_back(Clause{std::move(lits), 0, std::nullopt});
  }
  return out;
}

}  // namespace vsidslab
