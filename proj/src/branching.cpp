#include "vsidslab/branching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vsidslab {

std::string_view to_string(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::cvsids: return "cvsids";
    case HeuristicKind::mvsids: return "mvsids";
    case HeuristicKind::adaptvsids: return "adaptvsids";
    case HeuristicKind::random: return "random";
  }
  return "unknown";
}

std::optional<HeuristicKind> parse_heuristic(std::string_view name) {
  if (name == "cvsids") return HeuristicKind::cvsids;
  if (name == "mvsids") return HeuristicKind::mvsids;
  if (name == "adaptvsids") return HeuristicKind::adaptvsids;
  if (name == "random") return HeuristicKind::random;
  return std::nullopt;
}

void validate(const HeuristicParams& params) {
  auto in_unit = [](double f) { return f > 0.0 && f < 1.0; };
  if (!in_unit(params.decay)) throw std::invalid_argument("decay must lie in (0,1)");
  if (!in_unit(params.fast_decay)) throw std::invalid_argument("fast decay must lie in (0,1)");
  if (!in_unit(params.slow_decay)) throw std::invalid_argument("slow decay must lie in (0,1)");
  if (!(params.lbd_smoothing >= 0.0 && params.lbd_smoothing < 1.0)) {
    throw std::invalid_argument("lbd smoothing must lie in [0,1)");
  }
}

// ---------------------------------------------------------------------------
// ActivityTable

ActivityTable::ActivityTable(std::size_t num_vars) : raw_(num_vars, 0.0) {}

void ActivityTable::bump(Var v) {
  double& a = raw_[slot(v)];
  a += quantum_;
  if (a >= kRescaleThreshold) rescale();
}

void ActivityTable::decay(double factor) {
  quantum_ /= factor;
  if (quantum_ >= kRescaleThreshold) rescale();
}

void ActivityTable::seed(std::span<const double> scores) {
  if (scores.size() != raw_.size()) throw std::invalid_argument("seed size does not match variable count");
  for (std::size_t i = 0; i < raw_.size(); ++i) {
    if (!(scores[i] >= 0.0) || !std::isfinite(scores[i])) throw std::invalid_argument("seed scores must be finite and >= 0");
    raw_[i] = scores[i] * quantum_;
  }
  while (std::any_of(raw_.begin(), raw_.end(), [](double a) { return a >= kRescaleThreshold; })) rescale();
}

void ActivityTable::rescale() {
  for (double& a : raw_) a = std::ldexp(a, kRescaleExponent);
  quantum_ = std::ldexp(quantum_, kRescaleExponent);
  ++rescales_;
}

std::vector<double> ActivityTable::scores() const {
  std::vector<double> out(raw_.size());
  for (std::size_t i = 0; i < raw_.size(); ++i) out[i] = raw_[i] / quantum_;
  return out;
}

std::vector<RankedVar> ranking(const ActivityTable& table) {
  std::vector<RankedVar> out(table.num_vars());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = RankedVar{var_at(i), table.score(var_at(i))};
  std::stable_sort(out.begin(), out.end(),
                   [&](const RankedVar& a, const RankedVar& b) { return table.ranks_before(a.var, b.var); });
  return out;
}

// ---------------------------------------------------------------------------
// Normalized VSIDS

double normalized_vsids(std::span<const std::uint8_t> deltas, double f) {
  const std::size_t n = deltas.size();
  double sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (deltas[k - 1] != 0) sum += std::pow(f, static_cast<double>(n - k));
  }
  return (1.0 - f) * sum;
}

double normalized_vsids_recursive(double s_prev, std::uint8_t delta, double f) {
  return (1.0 - f) * static_cast<double>(delta != 0) + f * s_prev;
}

// ---------------------------------------------------------------------------
// AdaptState

double AdaptState::decay_for(std::uint32_t lbd) {
  if (!initialized) {
    lbdema = static_cast<double>(lbd);
    initialized = true;
  }
  return static_cast<double>(lbd) > lbdema ? fast_decay : slow_decay;
}

void AdaptState::observe(std::uint32_t lbd) {
  if (!initialized) {
    lbdema = static_cast<double>(lbd);
    initialized = true;
    return;
  }
  lbdema = (1.0 - lbd_smoothing) * lbdema + lbd_smoothing * static_cast<double>(lbd);
}

// ---------------------------------------------------------------------------
// VsidsHeuristic

VsidsHeuristic::VsidsHeuristic(std::size_t num_vars, const HeuristicParams& params)
    : params_(params), table_(num_vars), heap_pos_(num_vars, -1) {
  validate(params_);
  if (params_.kind == HeuristicKind::random) throw std::invalid_argument("VsidsHeuristic cannot be random");
  adapt_.lbd_smoothing = params_.lbd_smoothing;
  adapt_.fast_decay = params_.fast_decay;
  adapt_.slow_decay = params_.slow_decay;
  heap_.reserve(num_vars);
  for (std::uint32_t s = 0; s < num_vars; ++s) heap_insert(s);
}

void VsidsHeuristic::seed(std::span<const double> scores) {
  table_.seed(scores);
  heap_.clear();
  std::fill(heap_pos_.begin(), heap_pos_.end(), -1);
  for (std::uint32_t s = 0; s < table_.num_vars(); ++s) heap_insert(s);
}

Var VsidsHeuristic::pick(const AssignmentView& assignment, std::mt19937_64&) {
  while (!heap_.empty()) {
    std::uint32_t top = heap_pop();
    if (!assignment.assigned(var_at(top))) {
      // Stays out of the heap until the solver unassigns it.
      return var_at(top);
    }
  }
  throw std::logic_error("pick called with every variable assigned");
}

void VsidsHeuristic::on_unassign(Var v) {
  if (heap_pos_[slot(v)] < 0) heap_insert(static_cast<std::uint32_t>(slot(v)));
}

void VsidsHeuristic::bump(Var v) {
  table_.bump(v);
  auto pos = heap_pos_[slot(v)];
  if (pos >= 0) heap_up(static_cast<std::size_t>(pos));
}

void VsidsHeuristic::on_conflict(const ConflictAnalysis& analysis) {
  bumped_.clear();
  double decay = params_.decay;
  switch (params_.kind) {
    case HeuristicKind::cvsids:
      if (analysis.learnt.size() > 1 || params_.bump_unit_learnts) {
        for (const auto& lit : analysis.learnt.literals) bumped_.push_back(lit.var);
      }
      break;
    case HeuristicKind::mvsids:
      bumped_.assign(analysis.resolved_vars.begin(), analysis.resolved_vars.end());
      break;
    case HeuristicKind::adaptvsids:
      bumped_.assign(analysis.resolved_vars.begin(), analysis.resolved_vars.end());
      decay = adapt_.decay_for(analysis.lbd);
      adapt_.observe(analysis.lbd);
      break;
    case HeuristicKind::random:
      break;
  }
  // Decay first so the newest bump enters at full weight; scores then follow
  // a_n = f * a_{n-1} + delta_n.
  table_.decay(decay);
  last_decay_ = decay;
  for (Var v : bumped_) bump(v);
}

void VsidsHeuristic::heap_insert(std::uint32_t s) {
  heap_pos_[s] = static_cast<std::int64_t>(heap_.size());
  heap_.push_back(s);
  heap_up(heap_.size() - 1);
}

void VsidsHeuristic::heap_up(std::size_t pos) {
  std::uint32_t x = heap_[pos];
  while (pos > 0) {
    std::size_t parent = (pos - 1) / 2;
    if (!before(x, heap_[parent])) break;
    heap_[pos] = heap_[parent];
    heap_pos_[heap_[pos]] = static_cast<std::int64_t>(pos);
    pos = parent;
  }
  heap_[pos] = x;
  heap_pos_[x] = static_cast<std::int64_t>(pos);
}

void VsidsHeuristic::heap_down(std::size_t pos) {
  std::uint32_t x = heap_[pos];
  const std::size_t n = heap_.size();
  while (true) {
    std::size_t child = 2 * pos + 1;
    if (child >= n) break;
    if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
    if (!before(heap_[child], x)) break;
    heap_[pos] = heap_[child];
    heap_pos_[heap_[pos]] = static_cast<std::int64_t>(pos);
    pos = child;
  }
  heap_[pos] = x;
  heap_pos_[x] = static_cast<std::int64_t>(pos);
}

std::uint32_t VsidsHeuristic::heap_pop() {
  std::uint32_t top = heap_.front();
  heap_pos_[top] = -1;
  std::uint32_t last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

// ---------------------------------------------------------------------------
// RandomHeuristic

Var RandomHeuristic::pick(const AssignmentView& assignment, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> any(0, num_vars_ - 1);
  for (int attempt = 0; attempt < 32; ++attempt) {
    Var v = var_at(any(rng));
    if (!assignment.assigned(v)) return v;
  }
  std::vector<std::uint32_t> free;
  for (std::size_t s = 0; s < num_vars_; ++s) {
    if (!assignment.assigned(var_at(s))) free.push_back(static_cast<std::uint32_t>(s));
  }
  if (free.empty()) throw std::logic_error("pick called with every variable assigned");
  std::uniform_int_distribution<std::size_t> among(0, free.size() - 1);
  return var_at(free[among(rng)]);
}

std::unique_ptr<BranchingHeuristic> make_heuristic(std::size_t num_vars, const HeuristicParams& params) {
  if (params.kind == HeuristicKind::random) return std::make_unique<RandomHeuristic>(num_vars);
  return std::make_unique<VsidsHeuristic>(num_vars, params);
}

}  // namespace vsidslab
