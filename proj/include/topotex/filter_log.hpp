#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "topotex/persistence.hpp"

namespace topotex {

/// One stage of a diagram filter, for diagnostics and reports.
struct FilterStep {
    std::string name;
    int pairs_before = 0;
    int pairs_after = 0;
    double cutoff = 0.0;  // threshold applied at this step, 0 when not applicable
};

struct FilterResult {
    Diagram diagram;
    std::vector<FilterStep> steps;
};

/// Raised when a diagram filter cannot keep the requested number of pairs;
/// carries the per-step counts so the caller can see where the pairs went.
class FilterError : public std::runtime_error {
  public:
    FilterError(const std::string& msg, std::vector<FilterStep> steps);
    const std::vector<FilterStep>& steps() const { return steps_; }

  private:
    std::vector<FilterStep> steps_;
};

}  // namespace topotex
