#pragma once

#include <string>
#include <vector>

namespace topotex {

struct VerifyOptions {
    double width_mm = 2.5;     // even pixel spacing for every overlap at the defaults below
    int pixels_depth = 1000;
    int pixels_roundness = 3200;
    double tol_pct = 5.0;
    int threads = 1;
};

struct VerifyCase {
    std::string quantity;  // e.g. "depth lifetime", "eps=0.5 death (mm)"
    double overlap = 0.0;
    int n = 0;
    double theory = 0.0;
    double measured = 0.0;
    double pct_diff = 0.0;
};

/// Generate nominal surfaces at overlaps {0, 0.25, 0.5} on a pixel-aligned
/// lattice and measure against closed-form theory: modal dim-0 lifetimes
/// (depth), and dim-1 births/deaths of the distance transform at section
/// heights 0.5 and 1.1 times the merge height (roundness; births only exist
/// at 1.1 where neighbors overlap, and r=0 has no 1.1 case because the grid
/// saturates above the merge height). Ten cases total.
std::vector<VerifyCase> run_verification(const VerifyOptions& opt);

/// The depth-only and roundness-only halves of run_verification, so callers
/// can time or gate them separately.
std::vector<VerifyCase> run_depth_verification(const VerifyOptions& opt);
std::vector<VerifyCase> run_roundness_verification(const VerifyOptions& opt);

bool verification_passed(const std::vector<VerifyCase>& cases, double tol_pct);
std::string verification_to_json(const std::vector<VerifyCase>& cases, double tol_pct);

}  // namespace topotex
