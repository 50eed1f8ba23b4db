#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vsidslab/cnf.hpp"

namespace vsidslab {

/// Result of first-UIP conflict analysis.
struct ConflictAnalysis {
  Clause learnt;  // asserting literal first
  std::uint32_t backjump_level = 0;
  // Every variable traversed during resolution, deduplicated; contains the
  // learnt clause's variables.
  std::vector<Var> resolved_vars;
  std::uint32_t lbd = 0;
};

/// Read-only view of the solver's current assignment.
class AssignmentView {
 public:
  AssignmentView() = default;
  // values[i] is -1 (unassigned), 0 (false) or 1 (true) for variable slot i.
  explicit AssignmentView(std::span<const std::int8_t> values) : values_(values) {}

  std::size_t num_vars() const { return values_.size(); }
  bool assigned(Var v) const { return values_[slot(v)] >= 0; }
  std::span<const std::int8_t> raw() const { return values_; }

 private:
  std::span<const std::int8_t> values_;
};

}  // namespace vsidslab
