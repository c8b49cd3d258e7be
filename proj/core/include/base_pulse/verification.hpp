#pragma once

#include <string>
#include <vector>

namespace base_pulse {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Runs the invariant suite across all modules with fixed seeds. Deterministic
// and fast enough for CI (a few seconds).
[[nodiscard]] std::vector<CheckResult> run_verification();

}  // namespace base_pulse
