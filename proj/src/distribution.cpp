#include "topotex/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace topotex {

namespace {

LifetimeDistribution sort_and_merge(std::vector<double> pts, std::vector<double> w) {
    std::vector<size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return pts[a] < pts[b]; });
    LifetimeDistribution d;
    for (size_t k : idx) {
        if (w[k] == 0.0) continue;
        if (!d.points.empty() && d.points.back() == pts[k]) {
            d.weights.back() += w[k];
        } else {
            d.points.push_back(pts[k]);
            d.weights.push_back(w[k]);
        }
    }
    return d;
}

}  // namespace

LifetimeDistribution LifetimeDistribution::point_mass(double x) {
    LifetimeDistribution d;
    d.points.push_back(x);
    d.weights.push_back(1.0);
    return d;
}

LifetimeDistribution LifetimeDistribution::from_samples(const std::vector<double>& samples) {
    if (samples.empty()) throw std::domain_error("empty sample set has no distribution");
    for (double s : samples)
        if (!std::isfinite(s)) throw std::domain_error("distribution sample is not finite");
    const double w = 1.0 / static_cast<double>(samples.size());
    return sort_and_merge(samples, std::vector<double>(samples.size(), w));
}

LifetimeDistribution LifetimeDistribution::from_weighted(std::vector<double> pts,
                                                         std::vector<double> w) {
    if (pts.size() != w.size())
        throw std::invalid_argument("distribution points/weights size mismatch");
    if (pts.empty()) throw std::domain_error("empty weighted distribution");
    double total = 0.0;
    for (size_t k = 0; k < w.size(); ++k) {
        if (!std::isfinite(pts[k]) || !std::isfinite(w[k]) || w[k] < 0.0)
            throw std::invalid_argument("distribution weights must be finite and nonnegative");
        total += w[k];
    }
    if (total <= 0.0) throw std::invalid_argument("distribution weights sum to zero");
    for (double& x : w) x /= total;
    return sort_and_merge(std::move(pts), std::move(w));
}

double emd(const LifetimeDistribution& u, const LifetimeDistribution& v) {
    if (u.empty() || v.empty()) throw std::domain_error("emd of an empty distribution");
    // Integral of |F_u - F_v| over the merged support: walk both supports in
    // order, carrying the CDF difference across each gap.
    size_t iu = 0, iv = 0;
    double fu = 0.0, fv = 0.0;
    double prev = std::min(u.points[0], v.points[0]);
    double total = 0.0;
    while (iu < u.points.size() || iv < v.points.size()) {
        double x;
        if (iu == u.points.size())
            x = v.points[iv];
        else if (iv == v.points.size())
            x = u.points[iu];
        else
            x = std::min(u.points[iu], v.points[iv]);
        total += std::abs(fu - fv) * (x - prev);
        while (iu < u.points.size() && u.points[iu] == x) fu += u.weights[iu++];
        while (iv < v.points.size() && v.points[iv] == x) fv += v.weights[iv++];
        prev = x;
    }
    return total;
}

}  // namespace topotex
