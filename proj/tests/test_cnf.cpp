#include "doctest.h"
#include "vsidslab/cnf.hpp"
#include "vsidslab/generator.hpp"

using namespace vsidslab;

namespace {
Lit pos(std::uint32_t v) { return Lit{Var{v}, false}; }
Lit neg(std::uint32_t v) { return Lit{Var{v}, true}; }
}  // namespace

TEST_CASE("parse: basic clause") {
  auto r = parse_dimacs("p cnf 2 1\n1 -2 0");
  CHECK(r.formula.num_vars == 2);
  REQUIRE(r.formula.clauses.size() == 1);
  CHECK(r.formula.clauses[0].literals == std::vector<Lit>{pos(1), neg(2)});
  CHECK(r.formula.clauses[0].timestamp == 0);
  CHECK_FALSE(r.formula.clauses[0].lbd.has_value());
  CHECK(r.warnings.empty());
}

TEST_CASE("parse: tautology dropped with a warning") {
  auto r = parse_dimacs("p cnf 1 1\n1 -1 0");
  CHECK(r.formula.num_vars == 1);
  CHECK(r.formula.clauses.empty());
  CHECK(r.warnings.size() == 1);
}

TEST_CASE("parse: duplicate literals merged") {
  auto r = parse_dimacs("p cnf 2 1\n1 1 -2 0");
  REQUIRE(r.formula.clauses.size() == 1);
  CHECK(r.formula.clauses[0].literals == std::vector<Lit>{pos(1), neg(2)});
}

TEST_CASE("parse: comments, multi-line clauses and percent terminator") {
  auto r = parse_dimacs("c hello\nc world\np cnf 3 2\n1 2\n 3 0 -1\n-3 0\n%\n0\n");
  REQUIRE(r.formula.clauses.size() == 2);
  CHECK(r.formula.clauses[0].literals == std::vector<Lit>{pos(1), pos(2), pos(3)});
  CHECK(r.formula.clauses[1].literals == std::vector<Lit>{neg(1), neg(3)});
}

TEST_CASE("parse: clause count mismatch warns") {
  auto r = parse_dimacs("p cnf 2 3\n1 0\n2 0\n");
  CHECK(r.formula.clauses.size() == 2);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("declares 3") != std::string::npos);
}

TEST_CASE("parse: empty clause kept") {
  auto r = parse_dimacs("p cnf 1 2\n0\n1 0\n");
  CHECK(has_empty_clause(r.formula));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs(""), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 3 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2\n1 2 0\n"), ParseError);
  try {
    parse_dimacs("p cnf 2 1\n\n1 -7 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("write_dimacs") {
  Formula f{2, {Clause{{pos(1), neg(2)}, 0, std::nullopt}}};
  CHECK(write_dimacs(f) == "p cnf 2 1\n1 -2 0\n");
  CHECK(write_dimacs(Formula{}) == "p cnf 0 0\n");
}

TEST_CASE("write/parse round trip on generated formulas") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto f = gen_random_ksat(30, 120, 1 + seed % 5, seed);
    auto r = parse_dimacs(write_dimacs(f));
    CHECK(r.formula == f);
    CHECK(r.warnings.empty());
  }
}

TEST_CASE("parsed clauses never repeat a variable") {
  auto r = parse_dimacs("p cnf 4 3\n1 2 1 2 -3 0\n4 4 4 0\n-1 -1 2 0\n");
  for (const auto& c : r.formula.clauses) {
    for (std::size_t i = 1; i < c.literals.size(); ++i) CHECK(c.literals[i].var != c.literals[i - 1].var);
  }
}

TEST_CASE("satisfies") {
  auto f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n").formula;
  CHECK(satisfies(f, {false, true}));
  CHECK_FALSE(satisfies(f, {true, true}));
  CHECK_FALSE(satisfies(f, {false, false}));
}
