#include "vsidslab/solver.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vsidslab {

namespace {

constexpr double kClauseDecay = 0.999;
constexpr double kClauseRescale = 1e20;
constexpr double kLearntSizeFactor = 1.0 / 3.0;
constexpr double kLearntSizeInc = 1.1;
constexpr double kAdjustInc = 1.5;

}  // namespace

void validate(const SolverConfig& config) {
  if (config.sample_interval < 1) throw std::invalid_argument("sample interval must be >= 1");
  if (config.restart_base < 1) throw std::invalid_argument("restart base must be >= 1");
  if (config.time_limit_seconds < 0.0) throw std::invalid_argument("time limit must be >= 0");
  validate(config.heuristic);
}

std::uint64_t luby(std::uint64_t i) {
  // Find the finite subsequence containing index i and its size.
  std::uint64_t size = 1;
  std::uint64_t seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i = i % size;
  }
  return std::uint64_t{1} << seq;
}

std::vector<std::size_t> select_retained(std::span<const LearntInfo> clauses, bool clause_deletion) {
  std::vector<std::size_t> kept;
  if (!clause_deletion) {
    kept.resize(clauses.size());
    std::iota(kept.begin(), kept.end(), std::size_t{0});
    return kept;
  }
  std::vector<std::size_t> unlocked;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (clauses[i].locked) {
      kept.push_back(i);
    } else {
      unlocked.push_back(i);
    }
  }
  std::stable_sort(unlocked.begin(), unlocked.end(), [&](std::size_t a, std::size_t b) {
    if (clauses[a].lbd != clauses[b].lbd) return clauses[a].lbd < clauses[b].lbd;
    return clauses[a].activity > clauses[b].activity;
  });
  std::size_t keep = unlocked.size() - unlocked.size() / 2;
  kept.insert(kept.end(), unlocked.begin(), unlocked.begin() + static_cast<std::ptrdiff_t>(keep));
  std::sort(kept.begin(), kept.end());
  return kept;
}

Solver::Solver(const Formula& formula, SolverConfig config, BranchingHeuristic& heuristic)
    : formula_(formula), config_(config), heuristic_(heuristic), rng_(config.seed) {
  validate(config_);
  const std::size_t n = formula.num_vars;
  watches_.resize(2 * n);
  assigns_.assign(n, -1);
  level_.assign(n, 0);
  reason_.assign(n, std::nullopt);
  saved_phase_.assign(n, 0);
  seen_.assign(n, 0);
  level_stamp_.assign(n + 1, 0);

  std::vector<std::uint32_t> units;
  for (const auto& clause : formula.clauses) {
    std::vector<std::uint32_t> lits;
    lits.reserve(clause.literals.size());
    for (const auto& lit : clause.literals) {
      if (lit.var.index < 1 || lit.var.index > n) throw std::invalid_argument("literal outside variable range");
      lits.push_back(encode(lit));
    }
    if (lits.empty()) {
      ok_ = false;
    } else if (lits.size() == 1) {
      units.push_back(lits[0]);
    } else {
      attach(add_clause(std::move(lits), false, 0, 0));
    }
  }
  for (std::uint32_t u : units) {
    std::int8_t v = lit_value(u);
    if (v == 0) ok_ = false;
    if (v < 0) enqueue(u, std::nullopt);
  }
  if (ok_ && propagate()) ok_ = false;
  max_learnts_ = static_cast<double>(clauses_.size()) * kLearntSizeFactor;
}

std::int8_t Solver::value(Lit lit) const { return lit_value(encode(lit)); }

std::vector<Lit> Solver::clause_literals(std::uint32_t index) const {
  std::vector<Lit> out;
  for (std::uint32_t x : clauses_[index].lits) out.push_back(decode(x));
  return out;
}

std::size_t Solver::num_learnts() const { return learnts_.size(); }

std::uint32_t Solver::add_clause(std::vector<std::uint32_t> lits, bool learnt, std::uint32_t lbd,
                                 std::uint64_t timestamp) {
  StoredClause c;
  c.lits = std::move(lits);
  c.learnt = learnt;
  c.lbd = lbd;
  c.timestamp = timestamp;
  clauses_.push_back(std::move(c));
  auto index = static_cast<std::uint32_t>(clauses_.size() - 1);
  if (learnt) learnts_.push_back(index);
  return index;
}

void Solver::attach(std::uint32_t index) {
  const auto& c = clauses_[index];
  watches_[c.lits[0]].push_back(Watcher{index, c.lits[1]});
  watches_[c.lits[1]].push_back(Watcher{index, c.lits[0]});
}

void Solver::enqueue(std::uint32_t lit, std::optional<std::uint32_t> reason) {
  std::uint32_t v = lit >> 1;
  assigns_[v] = static_cast<std::int8_t>((lit & 1) ? 0 : 1);
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(TrailEntry{decode(lit), decision_level(), reason});
}

void Solver::decide(Lit lit) {
  if (value(lit.var) >= 0) throw std::logic_error("decision on an assigned variable");
  trail_lim_.push_back(trail_.size());
  enqueue(encode(lit), std::nullopt);
}

std::optional<std::uint32_t> Solver::propagate() {
  while (qhead_ < trail_.size()) {
    std::uint32_t p = encode(trail_[qhead_++].lit);
    std::uint32_t false_lit = p ^ 1;
    ++stats_.propagations;
    auto& ws = watches_[false_lit];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i++];
      if (lit_value(w.blocker) == 1) {
        ws[j++] = w;
        continue;
      }
      auto& c = clauses_[w.clause];
      if (c.removed) continue;
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      std::uint32_t first = c.lits[0];
      if (first != w.blocker && lit_value(first) == 1) {
        ws[j++] = Watcher{w.clause, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.lits.size(); ++k) {
        if (lit_value(c.lits[k]) != 0) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[c.lits[1]].push_back(Watcher{w.clause, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = Watcher{w.clause, first};
      if (lit_value(first) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return w.clause;
      }
      enqueue(first, w.clause);
    }
    ws.resize(j);
  }
  return std::nullopt;
}

void Solver::bump_clause(std::uint32_t index) {
  auto& c = clauses_[index];
  if (!c.learnt) return;
  c.activity += clause_inc_;
  if (c.activity > kClauseRescale) {
    for (std::uint32_t l : learnts_) clauses_[l].activity *= 1.0 / kClauseRescale;
    clause_inc_ *= 1.0 / kClauseRescale;
  }
}

ConflictAnalysis Solver::analyze(std::uint32_t conflict) {
  if (decision_level() == 0) throw std::logic_error("analyze called on a root-level conflict");
  ConflictAnalysis out;
  std::vector<std::uint32_t> learnt(1, 0);
  std::vector<std::uint32_t> resolved;
  int path = 0;
  std::optional<std::uint32_t> p;
  std::size_t index = trail_.size();
  std::optional<std::uint32_t> confl = conflict;

  do {
    bump_clause(*confl);
    const auto& c = clauses_[*confl];
    for (std::size_t k = p ? 1 : 0; k < c.lits.size(); ++k) {
      std::uint32_t q = c.lits[k];
      std::uint32_t v = q >> 1;
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        resolved.push_back(v);
        if (level_[v] >= decision_level()) {
          ++path;
        } else {
          learnt.push_back(q);
        }
      }
    }
    do {
      --index;
    } while (!seen_[slot(trail_[index].lit.var)]);
    p = encode(trail_[index].lit);
    confl = reason_[*p >> 1];
    seen_[*p >> 1] = 0;
    --path;
  } while (path > 0);
  learnt[0] = *p ^ 1;

  for (std::uint32_t v : resolved) seen_[v] = 0;

  std::uint32_t backjump = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k) {
      if (level_[learnt[k] >> 1] > level_[learnt[max_i] >> 1]) max_i = k;
    }
    std::swap(learnt[1], learnt[max_i]);
    backjump = level_[learnt[1] >> 1];
  }

  ++stamp_;
  std::uint32_t lbd = 0;
  for (std::uint32_t q : learnt) {
    std::uint32_t lv = level_[q >> 1];
    if (level_stamp_[lv] != stamp_) {
      level_stamp_[lv] = stamp_;
      ++lbd;
    }
  }

  out.learnt.literals.reserve(learnt.size());
  for (std::uint32_t q : learnt) out.learnt.literals.push_back(decode(q));
  out.learnt.timestamp = stats_.conflicts;
  out.learnt.lbd = lbd;
  out.lbd = lbd;
  out.backjump_level = backjump;
  out.resolved_vars.reserve(resolved.size());
  for (std::uint32_t v : resolved) out.resolved_vars.push_back(var_at(v));
  return out;
}

void Solver::backtrack(std::uint32_t level) {
  if (decision_level() <= level) return;
  const std::size_t keep = trail_lim_[level];
  for (std::size_t i = trail_.size(); i-- > keep;) {
    std::uint32_t v = static_cast<std::uint32_t>(slot(trail_[i].lit.var));
    if (config_.phase_saving) saved_phase_[v] = assigns_[v] == 1 ? 1 : 0;
    assigns_[v] = -1;
    reason_[v] = std::nullopt;
    heuristic_.on_unassign(var_at(v));
  }
  trail_.resize(keep);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

std::optional<std::uint32_t> Solver::learn(const ConflictAnalysis& analysis) {
  std::vector<std::uint32_t> lits;
  lits.reserve(analysis.learnt.size());
  for (const auto& lit : analysis.learnt.literals) lits.push_back(encode(lit));
  ++stats_.learnt_clauses;
  if (lits.size() == 1) {
    enqueue(lits[0], std::nullopt);
    return std::nullopt;
  }
  std::uint32_t first = lits[0];
  auto index = add_clause(std::move(lits), true, analysis.lbd, analysis.learnt.timestamp);
  attach(index);
  bump_clause(index);
  enqueue(first, index);
  return index;
}

bool Solver::locked(std::uint32_t index) const {
  const auto& c = clauses_[index];
  std::uint32_t v = c.lits[0] >> 1;
  return reason_[v] && *reason_[v] == index && lit_value(c.lits[0]) == 1;
}

void Solver::reduce_db() {
  std::vector<LearntInfo> info;
  info.reserve(learnts_.size());
  for (std::uint32_t index : learnts_) {
    const auto& c = clauses_[index];
    info.push_back(LearntInfo{c.lbd, c.activity, locked(index)});
  }
  auto kept = select_retained(info, config_.clause_deletion);
  std::vector<std::uint8_t> keep(learnts_.size(), 0);
  for (std::size_t k : kept) keep[k] = 1;
  std::vector<std::uint32_t> survivors;
  survivors.reserve(kept.size());
  for (std::size_t k = 0; k < learnts_.size(); ++k) {
    if (keep[k]) {
      survivors.push_back(learnts_[k]);
    } else {
      auto& c = clauses_[learnts_[k]];
      c.removed = true;
      c.lits.clear();
      c.lits.shrink_to_fit();
      ++stats_.deleted_clauses;
    }
  }
  learnts_ = std::move(survivors);
  ++stats_.reductions;
}

bool Solver::check_model() const {
  std::vector<bool> model(assigns_.size());
  for (std::size_t i = 0; i < assigns_.size(); ++i) model[i] = assigns_[i] == 1;
  return satisfies(formula_, model);
}

void Solver::validate_learnt(const Clause& learnt) const {
  for (std::uint64_t bits : truth_table_) {
    bool sat = false;
    for (const auto& lit : learnt.literals) {
      bool value = ((bits >> slot(lit.var)) & 1) != 0;
      if (value != lit.negated) {
        sat = true;
        break;
      }
    }
    if (!sat) throw std::logic_error("learnt clause not implied by the input formula");
  }
}

bool Solver::out_of_budget() const {
  if (config_.conflict_limit > 0 && stats_.conflicts >= config_.conflict_limit) return true;
  if (config_.time_limit_seconds > 0.0) {
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    if (elapsed.count() >= config_.time_limit_seconds) return true;
  }
  return false;
}

SatResult Solver::solve(const InstrumentationHooks& hooks) {
  start_ = std::chrono::steady_clock::now();
  SatResult result;
  auto finish = [&](SolveStatus status) {
    result.status = status;
    stats_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    result.stats = stats_;
    return result;
  };
  if (!ok_) return finish(SolveStatus::unsat);

  const std::size_t n = formula_.num_vars;
  if (config_.validate_learnts && n <= 20) {
    truth_table_.clear();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      std::vector<bool> a(n);
      for (std::size_t i = 0; i < n; ++i) a[i] = ((bits >> i) & 1) != 0;
      if (satisfies(formula_, a)) truth_table_.push_back(bits);
    }
  }

  auto tick = [&]() {
    if (stats_.iterations() % config_.sample_interval == 0) {
      ++stats_.samples;
      if (hooks.on_sample) {
        hooks.on_sample(SampleEvent{stats_.iterations(), stats_.conflicts, assignment(), &heuristic_});
      }
    }
  };

  std::uint64_t restart_index = 0;
  std::uint64_t restart_limit = luby(restart_index) * config_.restart_base;
  std::uint64_t conflicts_since_restart = 0;

  while (true) {
    auto conflict = propagate();
    if (conflict) {
      ++stats_.conflicts;
      ++conflicts_since_restart;
      if (decision_level() == 0) return finish(SolveStatus::unsat);
      ConflictAnalysis analysis = analyze(*conflict);
      heuristic_.on_conflict(analysis);
      backtrack(analysis.backjump_level);
      learn(analysis);
      clause_inc_ /= kClauseDecay;
      if (config_.validate_learnts && n <= 20) validate_learnt(analysis.learnt);
      if (hooks.on_conflict) hooks.on_conflict(analysis);
      tick();
      if (--adjust_countdown_ == 0) {
        adjust_confl_ *= kAdjustInc;
        adjust_countdown_ = static_cast<std::uint64_t>(adjust_confl_);
        max_learnts_ *= kLearntSizeInc;
      }
      if (out_of_budget()) return finish(SolveStatus::unknown);
      continue;
    }

    if (config_.restarts && conflicts_since_restart >= restart_limit) {
      backtrack(0);
      ++stats_.restarts;
      ++restart_index;
      restart_limit = luby(restart_index) * config_.restart_base;
      conflicts_since_restart = 0;
    }
    if (config_.clause_deletion &&
        static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >= max_learnts_) {
      reduce_db();
    }
    if (trail_.size() == n) {
      if (!check_model()) throw std::logic_error("internal error: model does not satisfy the formula");
      result.model.resize(n);
      for (std::size_t i = 0; i < n; ++i) result.model[i] = assigns_[i] == 1;
      return finish(SolveStatus::sat);
    }

    Var v = heuristic_.pick(assignment(), rng_);
    ++stats_.decisions;
    if (config_.record_decisions) result.decision_log.push_back(v);
    if (hooks.on_decision) hooks.on_decision(DecisionEvent{v, stats_.iterations()});
    tick();
    bool negated = config_.phase_saving ? saved_phase_[slot(v)] == 0 : true;
    decide(Lit{v, negated});
    if (config_.time_limit_seconds > 0.0 && (stats_.decisions & 255) == 0 && out_of_budget()) {
      return finish(SolveStatus::unknown);
    }
  }
}

SatResult solve(const Formula& formula, const SolverConfig& config, const InstrumentationHooks& hooks) {
  auto heuristic = make_heuristic(formula.num_vars, config.heuristic);
  Solver solver(formula, config, *heuristic);
  return solver.solve(hooks);
}

}  // namespace vsidslab
