#include "topotex/noise_study.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>

#include "topotex/distribution.hpp"
#include "topotex/dtx.hpp"
#include "topotex/persistence.hpp"
#include "topotex/reference.hpp"
#include "topotex/scoring.hpp"
#include "topotex/synth.hpp"

namespace topotex {

namespace {

// Finite lifetimes of the distance-transform loops at one threshold; empty
// when the section has no black pixels or no loops at all.
std::vector<double> loop_lifetimes(const ScalarGrid& g, double t) {
    const BinaryGrid b = binarize(g, t);
    bool any_black = false;
    for (std::uint8_t v : b.values)
        if (!v) {
            any_black = true;
            break;
        }
    if (!any_black) return {};
    return lifetimes(sublevel_h1(distance_transform(b)), 1, false);
}

// Lifetime distribution of a noisy section, keeping only as many loops
// (largest lifetime first) as the clean section has at this threshold; any
// surplus is pixel-scale speckle. A loop-free section is a point mass at 0,
// the zero-lifetime limit of a vanishing strike section.
LifetimeDistribution loop_distribution(const ScalarGrid& g, double t, size_t n_keep) {
    if (n_keep == 0) return LifetimeDistribution::point_mass(0.0);
    std::vector<double> lts = loop_lifetimes(g, t);
    if (lts.empty()) return LifetimeDistribution::point_mass(0.0);
    if (lts.size() > n_keep) {
        std::nth_element(lts.begin(), lts.begin() + static_cast<std::ptrdiff_t>(n_keep) - 1,
                         lts.end(), std::greater<>());
        lts.resize(n_keep);
    }
    return LifetimeDistribution::from_samples(lts);
}

struct Stats {
    double mean = 0.0;
    double sd = 0.0;
};

Stats stats_of(const std::vector<double>& xs) {
    Stats s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return s;
}

}  // namespace

NoiseStudyResult run_noise_study(const NoiseStudyOptions& opt) {
    if (opt.trials < 1) throw std::invalid_argument("noise study needs at least one trial");
    if (opt.bumps_per_side < 1) throw std::invalid_argument("need at least one bump per side");
    if (opt.supersample < 1) throw std::invalid_argument("supersample factor must be positive");
    if (opt.n_thresholds < 2) throw std::invalid_argument("need at least two thresholds");
    if (opt.snr_db.empty()) throw std::invalid_argument("empty SNR sweep");

    const int n_strikes = opt.bumps_per_side * opt.bumps_per_side;
    const int s = opt.supersample;
    const double sigma_hi = opt.bump_sigma_px > 0.0 ? opt.bump_sigma_px * s : opt.bump_sigma_px;
    const ScalarGrid clean_hi =
        gaussian_bump_surface(opt.bumps_per_side, sigma_hi, opt.pixels * s);
    auto ingest = [&](const ScalarGrid& hi) {
        ScalarGrid g = downsample(hi, opt.pixels, opt.pixels);
        g.width_mm = static_cast<double>(opt.pixels);
        return g;
    };
    const ScalarGrid clean = ingest(clean_hi);
    const double r_eff = 0.5 * static_cast<double>(opt.pixels) / opt.bumps_per_side;
    const double pi = std::acos(-1.0);

    const Diagram d0_clean = sublevel_h0(clean);
    const FilterResult den_clean = denoise_depth_diagram(d0_clean, n_strikes);
    const LifetimeDistribution depth_nominal =
        LifetimeDistribution::from_samples(lifetimes(den_clean.diagram, 0, false));

    const FilterResult fm = filter_minima(d0_clean, n_strikes, false);
    const double h_r = reference_height(fm.diagram);

    std::vector<double> ts(static_cast<size_t>(opt.n_thresholds));
    std::vector<LifetimeDistribution> loop_nominal(ts.size());
    std::vector<size_t> loop_count(ts.size());
    for (size_t k = 0; k < ts.size(); ++k) {
        ts[k] = h_r + (1.0 - h_r) * (static_cast<double>(k) + 1) / opt.n_thresholds;
        const std::vector<double> lts = loop_lifetimes(clean, ts[k]);
        loop_count[k] = lts.size();
        loop_nominal[k] = lts.empty() ? LifetimeDistribution::point_mass(0.0)
                                      : LifetimeDistribution::from_samples(lts);
    }

    auto roundness_of = [&](const ScalarGrid& g) {
        double area = 0.0;
        double prev_t = 0.0, prev_e = 0.0;
        for (size_t k = 0; k < ts.size(); ++k) {
            const double e = emd(loop_distribution(g, ts[k], loop_count[k]), loop_nominal[k]);
            if (k > 0) area += 0.5 * (prev_e + e) * (ts[k] - prev_t);
            prev_t = ts[k];
            prev_e = e;
        }
        const double rg = area / (1.0 - h_r);
        return 1.0 - 4.0 * rg / (pi * r_eff);
    };

    auto depth_of = [&](const ScalarGrid& g) {
        const FilterResult den = denoise_depth_diagram(sublevel_h0(g), n_strikes);
        const std::vector<double> lts = lifetimes(den.diagram, 0, false);
        return 1.0 - emd(LifetimeDistribution::from_samples(lts), depth_nominal);
    };

    NoiseStudyResult result;
    result.depth_clean = depth_of(clean);
    result.roundness_clean = roundness_of(clean);

    for (double snr : opt.snr_db) {
        std::vector<double> depth_scores(static_cast<size_t>(opt.trials));
        std::vector<double> round_scores(static_cast<size_t>(opt.trials));
        auto run_trial = [&](int trial) {
            const ScalarGrid noisy = ingest(
                add_gaussian_noise(clean_hi, snr, opt.base_seed + static_cast<std::uint64_t>(trial)));
            depth_scores[static_cast<size_t>(trial)] = depth_of(noisy);
            round_scores[static_cast<size_t>(trial)] = roundness_of(noisy);
        };
        const int nt = std::min(opt.threads < 1 ? 1 : opt.threads, opt.trials);
        if (nt <= 1) {
            for (int trial = 0; trial < opt.trials; ++trial) run_trial(trial);
        } else {
            std::vector<std::exception_ptr> errors(static_cast<size_t>(nt));
            std::vector<std::thread> pool;
            for (int w = 0; w < nt; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        for (int trial = w; trial < opt.trials; trial += nt) run_trial(trial);
                    } catch (...) {
                        errors[static_cast<size_t>(w)] = std::current_exception();
                    }
                });
            }
            for (auto& th : pool) th.join();
            for (const auto& e : errors)
                if (e) std::rethrow_exception(e);
        }
        NoiseStudyRow row;
        row.snr_db = snr;
        const Stats ds = stats_of(depth_scores), rs = stats_of(round_scores);
        row.depth_mean = ds.mean;
        row.depth_std = ds.sd;
        row.roundness_mean = rs.mean;
        row.roundness_std = rs.sd;
        result.rows.push_back(row);
    }
    return result;
}

std::string noise_study_to_csv(const NoiseStudyResult& r) {
    std::string out = "score,snr_db,mean,std\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "depth,inf,%.17g,0\n", r.depth_clean);
    out += buf;
    std::snprintf(buf, sizeof buf, "roundness,inf,%.17g,0\n", r.roundness_clean);
    out += buf;
    for (const auto& row : r.rows) {
        std::snprintf(buf, sizeof buf, "depth,%.17g,%.17g,%.17g\n", row.snr_db, row.depth_mean,
                      row.depth_std);
        out += buf;
        std::snprintf(buf, sizeof buf, "roundness,%.17g,%.17g,%.17g\n", row.snr_db,
                      row.roundness_mean, row.roundness_std);
        out += buf;
    }
    return out;
}

}  // namespace topotex
