#pragma once

#include <vector>

namespace topotex {

/// Discrete distribution on the real line: support points with nonnegative
/// weights summing to 1. Points are kept sorted ascending with duplicates merged.
struct LifetimeDistribution {
    std::vector<double> points;
    std::vector<double> weights;

    static LifetimeDistribution point_mass(double x);
    /// Empirical distribution: each sample gets weight 1/n.
    static LifetimeDistribution from_samples(const std::vector<double>& samples);
    /// Arbitrary weighted atoms; weights are normalized to sum 1.
    static LifetimeDistribution from_weighted(std::vector<double> pts, std::vector<double> w);

    bool empty() const { return points.empty(); }
};

/// 1-Wasserstein distance between two distributions on the line: the integral
/// of |F_u - F_v| over the merged support.
double emd(const LifetimeDistribution& u, const LifetimeDistribution& v);

}  // namespace topotex
