#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "vsidslab/community.hpp"
#include "vsidslab/generator.hpp"
#include "vsidslab/solver.hpp"

using namespace vsidslab;

namespace {

std::set<std::uint32_t> vars_of(const Clause& c) {
  std::set<std::uint32_t> s;
  for (const auto& l : c.literals) s.insert(l.var.index);
  return s;
}

// Connected components of the VIG restricted to variables that occur.
std::size_t occupied_components(const Formula& f) {
  std::vector<std::uint32_t> parent(f.num_vars);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::uint8_t> used(f.num_vars, 0);
  for (const auto& c : f.clauses) {
    for (const auto& l : c.literals) {
      used[slot(l.var)] = 1;
      parent[find(static_cast<std::uint32_t>(slot(l.var)))] = find(static_cast<std::uint32_t>(slot(c.literals[0].var)));
    }
  }
  std::set<std::uint32_t> roots;
  for (std::uint32_t v = 0; v < f.num_vars; ++v) {
    if (used[v]) roots.insert(find(v));
  }
  return roots.size();
}

}  // namespace

TEST_CASE("random k-SAT shape and determinism") {
  auto f = gen_random_ksat(20, 85, 3, 1);
  CHECK(f.num_vars == 20);
  REQUIRE(f.clauses.size() == 85);
  for (const auto& c : f.clauses) {
    CHECK(c.size() == 3);
    CHECK(vars_of(c).size() == 3);
    for (const auto& l : c.literals) CHECK((l.var.index >= 1 && l.var.index <= 20));
  }
  CHECK(write_dimacs(f) == write_dimacs(gen_random_ksat(20, 85, 3, 1)));
  CHECK(write_dimacs(f) != write_dimacs(gen_random_ksat(20, 85, 3, 2)));
  CHECK_THROWS_AS(gen_random_ksat(2, 5, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_random_ksat(5, 5, 0, 0), std::invalid_argument);
}

TEST_CASE("random k-SAT polarities are balanced") {
  auto f = gen_random_ksat(100, 2000, 3, 7);
  std::size_t neg = 0;
  for (const auto& c : f.clauses) {
    for (const auto& l : c.literals) neg += l.negated;
  }
  CHECK(neg > 2800);
  CHECK(neg < 3200);
}

TEST_CASE("satisfiable fraction drops across the threshold") {
  auto fraction = [](double ratio) {
    int sat = 0;
    for (int s = 0; s < 100; ++s) {
      auto f = gen_random_ksat(50, static_cast<std::uint32_t>(ratio * 50), 3, static_cast<std::uint64_t>(1000 * ratio) + static_cast<std::uint64_t>(s));
      SolverConfig cfg;
      cfg.seed = static_cast<std::uint64_t>(s);
      auto r = solve(f, cfg);
      REQUIRE(r.status != SolveStatus::unknown);
      sat += r.status == SolveStatus::sat;
    }
    return sat / 100.0;
  };
  double low = fraction(3.0), mid = fraction(4.26), high = fraction(6.0);
  CHECK(low >= 0.9);
  CHECK(high <= 0.1);
  CHECK(low > mid);
  CHECK(mid > high);
}

TEST_CASE("planted instances") {
  PlantedConfig cfg{100, 4, 3, 300, 0.7, 3};
  auto inst = gen_planted_community(cfg);
  CHECK(inst.formula.num_vars == 100);
  CHECK(inst.formula.clauses.size() == 300);
  CHECK(inst.planted.num_communities == 4);
  CHECK(inst.planted.sizes() == std::vector<std::size_t>{25, 25, 25, 25});
  std::set<std::set<std::uint32_t>> distinct;
  for (const auto& c : inst.formula.clauses) {
    CHECK(vars_of(c).size() == 3);
    std::set<std::uint32_t> lits;
    for (const auto& l : c.literals) lits.insert(2 * l.var.index + l.negated);
    CHECK(distinct.insert(lits).second);
  }
  CHECK(write_dimacs(inst.formula) == write_dimacs(gen_planted_community(cfg).formula));

  PlantedConfig odd{10, 3, 3, 10, 1.0, 0};
  CHECK(gen_planted_community(odd).planted.sizes() == std::vector<std::size_t>{3, 3, 4});
  PlantedConfig tiny{6, 3, 3, 5, 0.5, 0};
  CHECK_THROWS_AS(gen_planted_community(tiny), std::invalid_argument);
  PlantedConfig bad_p{6, 2, 3, 5, 1.5, 0};
  CHECK_THROWS_AS(gen_planted_community(bad_p), std::invalid_argument);
}

TEST_CASE("p = 1 keeps every clause inside its block") {
  auto inst = gen_planted_community(PlantedConfig{200, 5, 3, 900, 1.0, 4});
  const auto& comm = inst.planted.community_of;
  for (const auto& c : inst.formula.clauses) {
    for (const auto& l : c.literals) CHECK(comm[slot(l.var)] == comm[slot(c.literals[0].var)]);
  }
  CHECK(occupied_components(inst.formula) == 5);
  auto b = bridge_variables(inst.formula, comm);
  CHECK(std::count(b.begin(), b.end(), 1) == 0);
}

TEST_CASE("p = 0 with singleton blocks makes nearly every variable a bridge") {
  auto inst = gen_planted_community(PlantedConfig{60, 60, 2, 200, 0.0, 5});
  auto b = bridge_variables(inst.formula, inst.planted.community_of);
  std::vector<std::uint8_t> occurs(60, 0);
  for (const auto& c : inst.formula.clauses) {
    for (const auto& l : c.literals) occurs[slot(l.var)] = 1;
  }
  // Every 2-clause joins two distinct singleton blocks, so a direct scan says
  // every occurring variable is a bridge.
  for (std::size_t v = 0; v < 60; ++v) CHECK(b[v] == occurs[v]);
}

TEST_CASE("p = 0.95 gives high Louvain modularity") {
  auto inst = gen_planted_community(PlantedConfig{400, 4, 3, 1700, 0.95, 11});
  auto r = louvain(build_vig(inst.formula));
  CHECK(r.modularity >= 0.5);
}
