#pragma once

#include <string>
#include <vector>

#include "qot/types.hpp"

namespace qot {

struct ValidationVerdict {
  std::vector<std::string> violations;

  bool valid() const { return violations.empty(); }
};

/// Number of provider calls a run of this shape makes:
/// 1 step-generation + n question-generation + sum(m_i) answers + 1 synthesis.
/// Throws MismatchedChains when `chains` does not line up with `plan`.
int total_calls(const StepPlan& plan, const std::vector<QaChain>& chains);

/// Reports every violated RunRecord invariant; never throws.
ValidationVerdict validate_run_record(const RunRecord& record);

}  // namespace qot
