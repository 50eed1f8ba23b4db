#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vsidslab {

/// A propositional variable in DIMACS numbering (1-based).
struct Var {
  std::uint32_t index = 0;

  constexpr auto operator<=>(const Var&) const = default;
};

/// Zero-based slot of a variable, for indexing per-variable arrays.
constexpr std::size_t slot(Var v) { return v.index - 1; }
constexpr Var var_at(std::size_t slot) { return Var{static_cast<std::uint32_t>(slot + 1)}; }

struct Lit {
  Var var;
  bool negated = false;

  constexpr auto operator<=>(const Lit&) const = default;

  constexpr Lit operator~() const { return Lit{var, !negated}; }
  constexpr std::int64_t dimacs() const {
    return negated ? -static_cast<std::int64_t>(var.index) : static_cast<std::int64_t>(var.index);
  }
  static constexpr Lit from_dimacs(std::int64_t value) {
    return Lit{Var{static_cast<std::uint32_t>(value < 0 ? -value : value)}, value < 0};
  }
};

struct Clause {
  std::vector<Lit> literals;
  // Conflict count when the clause was learnt; 0 for input clauses.
  std::uint64_t timestamp = 0;
  std::optional<std::uint32_t> lbd;

  std::size_t size() const { return literals.size(); }
  bool operator==(const Clause&) const = default;
};

struct Formula {
  std::uint32_t num_vars = 0;
  std::vector<Clause> clauses;

  bool operator==(const Formula&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ParseResult {
  Formula formula;
  std::vector<std::string> warnings;
};

/// Parses DIMACS CNF. Duplicate literals are merged and tautologies dropped;
/// a clause-count mismatch with the header is reported as a warning.
ParseResult parse_dimacs(std::string_view text);

/// Reads and parses a DIMACS file from disk. Throws std::runtime_error if the
/// file cannot be opened.
ParseResult read_dimacs_file(const std::string& path);

std::string write_dimacs(const Formula& formula);

/// Removes duplicate literals in place. Returns false when the clause is a
/// tautology (the clause is then left in an unspecified order).
bool normalize_clause(std::vector<Lit>& literals);

bool has_empty_clause(const Formula& formula);

/// True iff `assignment[slot(v)]` satisfies every clause.
bool satisfies(const Formula& formula, const std::vector<bool>& assignment);

}  // namespace vsidslab
