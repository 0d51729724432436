#include "topotex/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "topotex/dtx.hpp"

namespace topotex {

FilterError::FilterError(const std::string& msg, std::vector<FilterStep> steps)
    : std::runtime_error(msg), steps_(std::move(steps)) {}

int rice_bins(long long n) {
    if (n < 1) throw std::invalid_argument("histogram needs at least one sample");
    long long k = std::llround(2.0 * std::cbrt(static_cast<double>(n)));
    if (k < 1) k = 1;
    while (k * k * k < 8 * n) ++k;
    while (k > 1 && (k - 1) * (k - 1) * (k - 1) >= 8 * n) --k;
    return static_cast<int>(k);
}

double rice_lifetime_cutoff(const std::vector<double>& lifetimes, int limit) {
    if (limit < 1) throw std::invalid_argument("bin occupancy limit must be positive");
    if (lifetimes.empty()) return 0.0;
    const auto [mn_it, mx_it] = std::minmax_element(lifetimes.begin(), lifetimes.end());
    const double lo = *mn_it, hi = *mx_it;
    const long long n = static_cast<long long>(lifetimes.size());
    if (hi == lo) {
        return n > limit ? std::nextafter(hi, std::numeric_limits<double>::infinity()) : lo;
    }
    const int k = rice_bins(n);
    const double w = (hi - lo) / k;
    std::vector<int> count(k, 0);
    for (double x : lifetimes) {
        int b = static_cast<int>((x - lo) / w);
        if (b >= k) b = k - 1;
        if (b < 0) b = 0;
        ++count[b];
    }
    double cutoff = lo;
    for (int b = 0; b < k; ++b)
        if (count[b] > limit) cutoff = lo + (b + 1) * w;
    return cutoff;
}

FilterResult denoise_depth_diagram(const Diagram& d, int n_strikes) {
    if (n_strikes < 1) throw std::invalid_argument("strike count must be positive");
    std::vector<PersistencePair> finite, essential;
    for (const auto& p : d.pairs) {
        if (p.dim != 0) continue;
        (p.essential() ? essential : finite).push_back(p);
    }
    const int before = static_cast<int>(finite.size() + essential.size());

    std::vector<double> lts;
    lts.reserve(finite.size());
    for (const auto& p : finite) lts.push_back(p.lifetime());
    const double cutoff = rice_lifetime_cutoff(lts, n_strikes);
    std::erase_if(finite, [&](const PersistencePair& p) { return p.lifetime() < cutoff; });

    std::vector<FilterStep> steps;
    steps.push_back({"lifetime_cutoff", before, static_cast<int>(finite.size() + essential.size()),
                     cutoff});

    std::sort(finite.begin(), finite.end(), [](const PersistencePair& a, const PersistencePair& b) {
        return std::tie(a.birth, a.death, a.birth_row, a.birth_col) <
               std::tie(b.birth, b.death, b.birth_row, b.birth_col);
    });
    const int fin_before = static_cast<int>(finite.size() + essential.size());
    const size_t fin_keep =
        n_strikes > static_cast<int>(essential.size())
            ? static_cast<size_t>(n_strikes - static_cast<int>(essential.size()))
            : size_t{0};
    double trim_cutoff = 0.0;
    if (finite.size() > fin_keep) {
        trim_cutoff = finite[fin_keep].birth;
        finite.resize(fin_keep);
    }
    steps.push_back({"birth_trim", fin_before, static_cast<int>(finite.size() + essential.size()),
                     trim_cutoff});

    if (finite.empty() && essential.empty())
        throw FilterError("no pairs survive depth denoising", steps);

    FilterResult out;
    out.diagram.rows = d.rows;
    out.diagram.cols = d.cols;
    out.diagram.pairs = std::move(finite);
    out.diagram.pairs.insert(out.diagram.pairs.end(), essential.begin(), essential.end());
    out.steps = std::move(steps);
    return out;
}

double depth_score(const std::vector<double>& lifetimes, const LifetimeDistribution& nominal) {
    if (lifetimes.empty()) throw std::domain_error("depth score needs at least one lifetime");
    for (double l : lifetimes)
        if (!(l >= 0.0 && l <= 1.0))
            throw std::domain_error("depth lifetimes must lie in [0, 1]; normalize the map first");
    return 1.0 - emd(LifetimeDistribution::from_samples(lifetimes), nominal);
}

RoundnessCurve roundness_curve(const ScalarGrid& g, const NominalModel& model, double h_r,
                               int n_thresholds, double depth_scale_mm, int threads) {
    validate(g, "roundness curve");
    if (!(h_r >= 0.0 && h_r < 1.0))
        throw std::invalid_argument("reference height must lie in [0, 1)");
    if (n_thresholds < 1) throw std::invalid_argument("need at least one threshold");
    if (threads < 1) threads = 1;
    const double scale = depth_scale_mm > 0.0 ? depth_scale_mm : model.R;
    const double px_mm = px_to_mm(1.0, g.width_mm, g.cols);

    struct Slot {
        RoundnessSample sample;
        bool skipped = false;
    };
    std::vector<Slot> slots(static_cast<size_t>(n_thresholds));

    auto run = [&](int k) {
        const double t = h_r + (1.0 - h_r) * (k + 1) / n_thresholds;
        Slot& slot = slots[static_cast<size_t>(k)];
        slot.sample.t = t;
        BinaryGrid b = binarize(g, t);
        if (std::find(b.values.begin(), b.values.end(), std::uint8_t{0}) == b.values.end()) {
            slot.skipped = true;
            return;
        }
        const Diagram dia = sublevel_h1(distance_transform(b));
        std::vector<double> lts = lifetimes(dia, 1, false);
        for (double& l : lts) l *= px_mm;
        const LifetimeDistribution measured =
            lts.empty() ? LifetimeDistribution::point_mass(0.0)
                        : LifetimeDistribution::from_samples(lts);
        const LifetimeDistribution nominal =
            expected_roundness_distribution((t - h_r) * scale, model);
        slot.sample.emd_mm = emd(measured, nominal);
    };

    const int nt = std::min(threads, n_thresholds);
    if (nt <= 1) {
        for (int k = 0; k < n_thresholds; ++k) run(k);
    } else {
        std::vector<std::exception_ptr> errors(static_cast<size_t>(nt));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(nt));
        for (int w = 0; w < nt; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int k = w; k < n_thresholds; k += nt) run(k);
                } catch (...) {
                    errors[static_cast<size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    RoundnessCurve curve;
    curve.reference_height = h_r;
    for (const Slot& s : slots) {
        if (s.skipped)
            curve.skipped.push_back(s.sample.t);
        else
            curve.samples.push_back(s.sample);
    }
    return curve;
}

double generalized_roundness(const RoundnessCurve& curve) {
    if (curve.samples.size() < 2)
        throw std::invalid_argument("generalized roundness needs at least two curve samples");
    if (!(curve.reference_height < 1.0))
        throw std::invalid_argument("reference height must lie below 1");
    double area = 0.0;
    for (size_t k = 1; k < curve.samples.size(); ++k) {
        const auto& a = curve.samples[k - 1];
        const auto& b = curve.samples[k];
        area += 0.5 * (a.emd_mm + b.emd_mm) * (b.t - a.t);
    }
    return area / (1.0 - curve.reference_height);
}

double spherical_roundness(double rg, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("strike radius must be positive");
    return 1.0 - 4.0 * rg / (std::acos(-1.0) * R);
}

}  // namespace topotex
