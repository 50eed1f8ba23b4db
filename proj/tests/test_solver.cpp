#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "vsidslab/generator.hpp"
#include "vsidslab/solver.hpp"

using namespace vsidslab;

namespace {

Lit pos(std::uint32_t v) { return Lit{Var{v}, false}; }
Lit neg(std::uint32_t v) { return Lit{Var{v}, true}; }

Formula make(std::uint32_t n, std::vector<std::vector<int>> clauses) {
  Formula f;
  f.num_vars = n;
  for (auto& c : clauses) {
    Clause cl;
    for (int x : c) cl.literals.push_back(Lit::from_dimacs(x));
    f.clauses.push_back(cl);
  }
  return f;
}

}  // namespace

TEST_CASE("luby sequence") {
  std::vector<std::uint64_t> expect{1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8, 1};
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(luby(i) == expect[i]);
}

TEST_CASE("trivial instances") {
  CHECK(solve(make(1, {{1}, {-1}}), {}).status == SolveStatus::unsat);
  auto r = solve(make(2, {{1, 2}}), {});
  REQUIRE(r.status == SolveStatus::sat);
  CHECK((r.model[0] || r.model[1]));
  CHECK(solve(make(0, {}), {}).status == SolveStatus::sat);
  CHECK(solve(make(2, {{1, 2}, {}}), {}).status == SolveStatus::unsat);
}

TEST_CASE("random 3-SAT n=20 m=85 matches truth table") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto f = gen_random_ksat(20, 85, 3, seed);
    SolverConfig cfg;
    cfg.seed = seed;
    cfg.heuristic.kind = static_cast<HeuristicKind>(seed % 4);
    cfg.validate_learnts = seed < 20;
    auto r = solve(f, cfg);
    bool expected = oracle::brute_force_sat(f);
    CHECK(r.status == (expected ? SolveStatus::sat : SolveStatus::unsat));
    if (r.status == SolveStatus::sat) CHECK(satisfies(f, r.model));
  }
}

TEST_CASE("propagate: binary clause under a decision") {
  auto f = make(2, {{1, 2}});
  auto h = make_heuristic(2, {});
  Solver s(f, {}, *h);
  s.decide(neg(1));
  CHECK_FALSE(s.propagate().has_value());
  CHECK(s.value(Var{2}) == 1);
  CHECK(s.level(Var{2}) == 1);
  REQUIRE(s.trail().size() == 2);
  CHECK(s.trail()[1].reason.has_value());
  CHECK_FALSE(s.trail()[0].reason.has_value());
}

TEST_CASE("root-level contradiction") {
  auto f = make(1, {{1}, {-1}});
  auto h = make_heuristic(1, {});
  Solver s(f, {}, *h);
  CHECK_FALSE(s.root_consistent());
}

TEST_CASE("propagation closure matches a naive propagator") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    auto f = gen_random_ksat(30, 60 + round % 80, 2 + round % 3, round);
    auto h = make_heuristic(f.num_vars, {});
    Solver s(f, {}, *h);
    std::vector<int> values(f.num_vars, -1);
    bool naive_ok = oracle::naive_propagate(f, values);
    CHECK(naive_ok == s.root_consistent());
    if (!naive_ok) continue;
    for (std::uint32_t v = 1; v <= f.num_vars; ++v) CHECK(s.value(Var{v}) == values[v - 1]);
    while (true) {
      std::vector<std::uint32_t> free;
      for (std::uint32_t v = 1; v <= f.num_vars; ++v) {
        if (s.value(Var{v}) < 0) free.push_back(v);
      }
      if (free.empty()) break;
      Lit d{Var{free[rng() % free.size()]}, (rng() & 1) != 0};
      s.decide(d);
      values[slot(d.var)] = d.negated ? 0 : 1;
      auto conflict = s.propagate();
      bool ok = oracle::naive_propagate(f, values);
      REQUIRE(ok == !conflict.has_value());
      if (conflict) break;
      for (std::uint32_t v = 1; v <= f.num_vars; ++v) REQUIRE(s.value(Var{v}) == values[v - 1]);
    }
  }
}

TEST_CASE("analyze: single-decision conflict") {
  auto f = make(2, {{-1, 2}, {-1, -2}});
  auto h = make_heuristic(2, {});
  Solver s(f, {}, *h);
  s.decide(pos(1));
  auto c = s.propagate();
  REQUIRE(c.has_value());
  auto a = s.analyze(*c);
  CHECK(a.learnt.literals == std::vector<Lit>{neg(1)});
  CHECK(a.backjump_level == 0);
  CHECK(a.lbd == 1);
}

TEST_CASE("analyze: lbd counts distinct levels {3,3,7} -> 2") {
  // x3 implies y (var 8) at level 3; x7 then forces a conflict on a (var 9).
  auto f = make(9, {{-3, 8}, {-3, -8, -7, 9}, {-3, -8, -7, -9}});
  auto h = make_heuristic(9, {});
  Solver s(f, {}, *h);
  for (std::uint32_t v = 1; v <= 7; ++v) {
    s.decide(pos(v));
    auto c = s.propagate();
    if (v < 7) REQUIRE_FALSE(c.has_value());
    if (v == 7) {
      REQUIRE(c.has_value());
      auto a = s.analyze(*c);
      std::set<Lit> lits(a.learnt.literals.begin(), a.learnt.literals.end());
      CHECK(lits == std::set<Lit>{neg(3), neg(8), neg(7)});
      CHECK(a.learnt.literals[0] == neg(7));
      CHECK(a.lbd == 2);
      CHECK(a.backjump_level == 3);
    }
  }
}

TEST_CASE("step-level CDCL loop: analysis invariants and learnt-clause implication") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto f = gen_random_ksat(12, 55, 3, seed);
    HeuristicParams hp;
    hp.kind = HeuristicKind::mvsids;
    auto h = make_heuristic(f.num_vars, hp);
    Solver s(f, {}, *h);
    if (!s.root_consistent()) continue;
    std::mt19937_64 rng(seed);
    int steps = 0;
    while (steps++ < 2000) {
      auto c = s.propagate();
      if (c) {
        if (s.decision_level() == 0) {
          CHECK_FALSE(oracle::brute_force_sat(f));
          break;
        }
        auto a = s.analyze(*c);
        std::set<Var> resolved(a.resolved_vars.begin(), a.resolved_vars.end());
        CHECK(resolved.size() == a.resolved_vars.size());
        std::set<std::uint32_t> levels;
        for (const auto& l : a.learnt.literals) {
          CHECK(resolved.count(l.var) == 1);
          CHECK(s.value(l) == 0);
          levels.insert(s.level(l.var));
        }
        CHECK(a.lbd == levels.size());
        CHECK(s.level(a.learnt.literals[0].var) == s.decision_level());
        std::uint32_t second = 0;
        for (std::size_t k = 1; k < a.learnt.literals.size(); ++k) {
          CHECK(s.level(a.learnt.literals[k].var) < s.decision_level());
          second = std::max(second, s.level(a.learnt.literals[k].var));
        }
        CHECK(a.backjump_level == second);
        CHECK(oracle::implies(f, a.learnt.literals));
        h->on_conflict(a);
        s.backtrack(a.backjump_level);
        s.learn(a);
        CHECK(s.value(a.learnt.literals[0]) == 1);
        continue;
      }
      auto trail = s.trail();
      if (trail.size() == f.num_vars) {
        CHECK(oracle::brute_force_sat(f));
        break;
      }
      // Trail invariants: single assignment, non-decreasing levels.
      std::set<Var> seen;
      for (std::size_t i = 0; i < trail.size(); ++i) {
        CHECK(seen.insert(trail[i].lit.var).second);
        if (i > 0) CHECK(trail[i].level >= trail[i - 1].level);
      }
      Var v = h->pick(s.assignment(), rng);
      s.decide(Lit{v, true});
    }
  }
}

TEST_CASE("select_retained") {
  std::mt19937_64 rng(3);
  std::vector<LearntInfo> info(100);
  for (auto& c : info) {
    c.lbd = 1 + static_cast<std::uint32_t>(rng() % 10);
    c.activity = static_cast<double>(rng() % 1000);
  }
  auto all = select_retained(info, false);
  CHECK(all.size() == 100);

  auto kept = select_retained(info, true);
  CHECK(kept.size() == 50);
  // Oracle: full sort by (lbd asc, activity desc, index asc), first half.
  std::vector<std::size_t> idx(100);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (info[a].lbd != info[b].lbd) return info[a].lbd < info[b].lbd;
    if (info[a].activity != info[b].activity) return info[a].activity > info[b].activity;
    return a < b;
  });
  std::vector<std::size_t> expect(idx.begin(), idx.begin() + 50);
  std::sort(expect.begin(), expect.end());
  CHECK(kept == expect);
  std::uint32_t max_kept = 0, min_removed = 100;
  std::set<std::size_t> ks(kept.begin(), kept.end());
  for (std::size_t i = 0; i < 100; ++i) {
    if (ks.count(i)) {
      max_kept = std::max(max_kept, info[i].lbd);
    } else {
      min_removed = std::min(min_removed, info[i].lbd);
    }
  }
  CHECK(max_kept <= min_removed);

  for (auto& c : info) c.locked = true;
  CHECK(select_retained(info, true).size() == 100);
}

TEST_CASE("deletion runs and keeps answers correct") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto f = gen_random_ksat(120, 511, 3, seed);
    SolverConfig cfg;
    cfg.seed = seed;
    auto r = solve(f, cfg);
    REQUIRE(r.status != SolveStatus::unknown);
    if (r.status == SolveStatus::sat) CHECK(satisfies(f, r.model));
    cfg.clause_deletion = false;
    auto r2 = solve(f, cfg);
    CHECK(r2.stats.reductions == 0);
    CHECK(r2.status == r.status);
  }
}

TEST_CASE("sampling fires exactly at multiples of the interval") {
  auto f = gen_random_ksat(100, 426, 3, 11);
  SolverConfig cfg;
  cfg.sample_interval = 37;
  std::vector<std::uint64_t> times;
  std::uint64_t decisions = 0, conflicts = 0;
  InstrumentationHooks hooks;
  hooks.on_sample = [&](const SampleEvent& e) { times.push_back(e.iteration); };
  hooks.on_decision = [&](const DecisionEvent&) { ++decisions; };
  hooks.on_conflict = [&](const ConflictAnalysis& a) {
    ++conflicts;
    CHECK(a.learnt.timestamp == conflicts);
  };
  auto r = solve(f, cfg, hooks);
  CHECK(r.stats.decisions == decisions);
  CHECK(r.stats.iterations() == r.stats.decisions + r.stats.conflicts);
  // A level-0 conflict ends the run without analysis.
  CHECK(r.stats.conflicts - conflicts <= 1);
  CHECK(times.size() == r.stats.iterations() / 37);
  CHECK(r.stats.samples == times.size());
  for (std::size_t i = 0; i < times.size(); ++i) CHECK(times[i] == 37 * (i + 1));
}

TEST_CASE("determinism and budgets") {
  auto f = gen_random_ksat(150, 640, 3, 5);
  SolverConfig cfg;
  cfg.record_decisions = true;
  cfg.seed = 9;
  cfg.heuristic.kind = HeuristicKind::random;
  auto a = solve(f, cfg);
  auto b = solve(f, cfg);
  CHECK(a.decision_log == b.decision_log);
  CHECK(a.status == b.status);
  cfg.conflict_limit = 10;
  auto c = solve(f, cfg);
  CHECK(c.status == SolveStatus::unknown);
  CHECK(c.stats.conflicts == 10);
  SolverConfig bad;
  bad.sample_interval = 0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}
