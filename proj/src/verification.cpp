#include "topotex/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "topotex/dtx.hpp"
#include "topotex/nominal.hpp"
#include "topotex/persistence.hpp"
#include "topotex/scoring.hpp"
#include "topotex/synth.hpp"

namespace topotex {

namespace {

struct LatticeSpec {
    double overlap;
    int n;
};

// Strike counts chosen so the lattice plus one strike radius still fits the
// frame at every overlap.
constexpr LatticeSpec kLattices[] = {{0.0, 5}, {0.25, 8}, {0.5, 19}};

// Snapping the lattice center to a pixel center keeps strike centers and neck
// midpoints on the integer grid (the defaults make the center spacing an even
// pixel count), so section radii quantize with sub-pixel error.
double center_px(int pixels) { return std::round(0.5 * (pixels - 1)); }

// Mode estimate for a near-degenerate sample set: mean of the samples in the
// fullest Rice bin (first bin on ties).
double modal_value(const std::vector<double>& samples) {
    if (samples.empty()) throw std::domain_error("modal value of an empty sample set");
    double lo = samples[0], hi = samples[0];
    for (double s : samples) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    double mean = 0.0;
    if (hi == lo) {
        for (double s : samples) mean += s;
        return mean / static_cast<double>(samples.size());
    }
    const int k = rice_bins(static_cast<long long>(samples.size()));
    const double w = (hi - lo) / k;
    std::vector<int> count(k, 0);
    std::vector<double> sum(k, 0.0);
    for (double s : samples) {
        int b = static_cast<int>((s - lo) / w);
        if (b >= k) b = k - 1;
        if (b < 0) b = 0;
        ++count[b];
        sum[b] += s;
    }
    int peak = 0;
    for (int b = 1; b < k; ++b)
        if (count[b] > count[peak]) peak = b;
    return sum[peak] / count[peak];
}

VerifyCase make_case(std::string quantity, double r, int n, double theory, double measured) {
    VerifyCase c;
    c.quantity = std::move(quantity);
    c.overlap = r;
    c.n = n;
    c.theory = theory;
    c.measured = measured;
    c.pct_diff = 100.0 * std::abs(measured - theory) / std::abs(theory);
    return c;
}

}  // namespace

std::vector<VerifyCase> run_depth_verification(const VerifyOptions& opt) {
    std::vector<VerifyCase> cases;
    for (const auto& spec : kLattices) {
        const ProcessParams params =
            ProcessParams::from_overlap(spec.overlap, spec.n, opt.width_mm, opt.pixels_depth);
        const ScalarGrid g = spherical_grid(params, center_px(opt.pixels_depth));
        const std::vector<double> lts = lifetimes(sublevel_h0(g), 0, false);
        cases.push_back(make_case("depth lifetime", spec.overlap, spec.n,
                                  merge_height(spec.overlap, 1.0), modal_value(lts)));
    }
    return cases;
}

std::vector<VerifyCase> run_roundness_verification(const VerifyOptions& opt) {
    std::vector<VerifyCase> cases;
    char name[48];
    for (const auto& spec : kLattices) {
        const ProcessParams params =
            ProcessParams::from_overlap(spec.overlap, spec.n, opt.width_mm, opt.pixels_roundness);
        const ScalarGrid g = spherical_grid(params, center_px(opt.pixels_roundness));
        const double R_mm = nominal_radius(params);
        const double px_mm = px_to_mm(1.0, opt.width_mm, opt.pixels_roundness);
        for (const double eps : {0.5, 1.1}) {
            // Above the merge height a zero-overlap grid has no background
            // left between strikes, so only overlapping lattices get eps > 1.
            if (eps > 1.0 && spec.overlap == 0.0) continue;
            const double t = eps * merge_height(spec.overlap, 1.0);
            const double T_mm = eps * merge_height(spec.overlap, R_mm);
            const Diagram dia = sublevel_h1(distance_transform(binarize(g, t)));
            std::vector<double> births, deaths;
            for (const auto& p : dia.pairs) {
                if (p.dim != 1 || p.essential()) continue;
                births.push_back(p.birth * px_mm);
                deaths.push_back(p.death * px_mm);
            }
            if (eps > 1.0) {
                std::snprintf(name, sizeof name, "eps=%.1f birth (mm)", eps);
                cases.push_back(make_case(name, spec.overlap, spec.n,
                                          intersection_height_a(T_mm, R_mm, spec.overlap),
                                          modal_value(births)));
            }
            std::snprintf(name, sizeof name, "eps=%.1f death (mm)", eps);
            cases.push_back(make_case(name, spec.overlap, spec.n, sigma_at(T_mm, R_mm),
                                      modal_value(deaths)));
        }
    }
    return cases;
}

std::vector<VerifyCase> run_verification(const VerifyOptions& opt) {
    std::vector<VerifyCase> cases = run_depth_verification(opt);
    std::vector<VerifyCase> roundness = run_roundness_verification(opt);
    cases.insert(cases.end(), roundness.begin(), roundness.end());
    return cases;
}

bool verification_passed(const std::vector<VerifyCase>& cases, double tol_pct) {
    for (const auto& c : cases)
        if (!(c.pct_diff <= tol_pct)) return false;
    return !cases.empty();
}

std::string verification_to_json(const std::vector<VerifyCase>& cases, double tol_pct) {
    nlohmann::ordered_json j;
    j["tol_pct"] = tol_pct;
    j["passed"] = verification_passed(cases, tol_pct);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : cases) {
        arr.push_back({{"quantity", c.quantity},
                       {"overlap", c.overlap},
                       {"n", c.n},
                       {"theory", c.theory},
                       {"measured", c.measured},
                       {"pct_diff", c.pct_diff}});
    }
    j["cases"] = arr;
    return j.dump(2) + "\n";
}

}  // namespace topotex
