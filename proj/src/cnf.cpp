#include "vsidslab/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace vsidslab {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<std::int64_t> to_int(std::string_view token) {
  std::int64_t value = 0;
  const char* first = token.data();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

}  // namespace

bool normalize_clause(std::vector<Lit>& literals) {
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  for (std::size_t i = 1; i < literals.size(); ++i) {
    if (literals[i].var == literals[i - 1].var) return false;
  }
  return true;
}

ParseResult parse_dimacs(std::string_view text) {
  ParseResult result;
  bool have_header = false;
  std::uint64_t declared_clauses = 0;
  std::vector<Lit> pending;
  bool pending_open = false;
  std::size_t tautologies = 0;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto tokens = split_tokens(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tokens.front().front() == 'c') {
      if (end == text.size()) break;
      continue;
    }
    if (tokens.front() == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (tokens.size() != 4 || tokens[1] != "cnf") throw ParseError(line_no, "malformed header");
      auto vars = to_int(tokens[2]);
      auto clauses = to_int(tokens[3]);
      if (!vars || !clauses || *vars < 0 || *clauses < 0 || *vars > 0xFFFFFFF) {
        throw ParseError(line_no, "malformed header");
      }
      result.formula.num_vars = static_cast<std::uint32_t>(*vars);
      declared_clauses = static_cast<std::uint64_t>(*clauses);
      have_header = true;
      if (end == text.size()) break;
      continue;
    }
    // "%" terminates some SATLIB benchmark files.
    if (tokens.front() == "%") break;
    if (!have_header) throw ParseError(line_no, "clause before header");

    for (auto token : tokens) {
      auto value = to_int(token);
      if (!value) throw ParseError(line_no, "non-integer token '" + std::string(token) + "'");
      if (*value == 0) {
        if (normalize_clause(pending)) {
          result.formula.clauses.push_back(Clause{std::move(pending), 0, std::nullopt});
        } else {
          ++tautologies;
        }
        pending.clear();
        pending_open = false;
        continue;
      }
      auto magnitude = *value < 0 ? -*value : *value;
      if (magnitude > static_cast<std::int64_t>(result.formula.num_vars)) {
        throw ParseError(line_no, "literal " + std::to_string(*value) + " exceeds declared variable count");
      }
      pending.push_back(Lit::from_dimacs(*value));
      pending_open = true;
    }
    if (end == text.size()) break;
  }

  if (!have_header) throw ParseError(line_no, "missing 'p cnf' header");
  if (pending_open) throw ParseError(line_no, "unterminated final clause");

  std::uint64_t seen = result.formula.clauses.size() + tautologies;
  if (seen != declared_clauses) {
    result.warnings.push_back("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                              std::to_string(seen));
  }
  if (tautologies > 0) {
    result.warnings.push_back("dropped " + std::to_string(tautologies) + " tautological clause(s)");
  }
  return result;
}

ParseResult read_dimacs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_dimacs(buffer.str());
}

std::string write_dimacs(const Formula& formula) {
  std::string out = "p cnf " + std::to_string(formula.num_vars) + " " + std::to_string(formula.clauses.size()) + "\n";
  for (const auto& clause : formula.clauses) {
    for (const auto& lit : clause.literals) {
      out += std::to_string(lit.dimacs());
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

bool has_empty_clause(const Formula& formula) {
  return std::any_of(formula.clauses.begin(), formula.clauses.end(),
                     [](const Clause& c) { return c.literals.empty(); });
}

bool satisfies(const Formula& formula, const std::vector<bool>& assignment) {
  for (const auto& clause : formula.clauses) {
    bool sat = false;
    for (const auto& lit : clause.literals) {
      if (assignment[slot(lit.var)] != lit.negated) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace vsidslab
