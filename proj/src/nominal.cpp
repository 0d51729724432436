#include "topotex/nominal.hpp"

#include <cmath>
#include <stdexcept>

namespace topotex {

namespace {

void check_overlap(double r) {
    if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("overlap must lie in [0, 1)");
}

void check_radius(double R) {
    if (!(R > 0.0)) throw std::invalid_argument("strike radius must be positive");
}

}  // namespace

double nominal_radius(const ProcessParams& params) {
    if (!(params.frequency_hz > 0.0)) throw std::invalid_argument("frequency must be positive");
    if (!(params.speed_x_mm_min > 0.0)) throw std::invalid_argument("feed speed must be positive");
    return params.speed_x_mm_min / (120.0 * params.frequency_hz);
}

double merge_height(double r, double R) {
    check_overlap(r);
    check_radius(R);
    return R * (1.0 - std::sqrt((2.0 - r) * r));
}

double sigma_at(double T, double R) {
    check_radius(R);
    if (!(T >= 0.0 && T <= 2.0 * R)) throw std::domain_error("section height outside [0, 2R]");
    return std::sqrt((2.0 * R - T) * T);
}

double intersection_height_a(double T, double R, double r) {
    check_overlap(r);
    check_radius(R);
    if (!(T >= 0.0 && T <= 2.0 * R)) throw std::domain_error("section height outside [0, 2R]");
    const double half_gap = R * (1.0 - r);
    double a2 = (2.0 * R - T) * T - half_gap * half_gap;
    // T exactly at the merge height gives a2 = 0 in exact arithmetic; absorb
    // the roundoff residue instead of rejecting it.
    if (a2 < 0.0) {
        if (a2 < -1e-12 * R * R)
            throw std::domain_error("section below the merge height: circles are disjoint");
        a2 = 0.0;
    }
    return std::sqrt(a2);
}

double diagonal_height(double r, double R) {
    check_overlap(r);
    check_radius(R);
    const double arg = 1.0 - 2.0 * (1.0 - r) * (1.0 - r);
    if (arg < 0.0) return R;
    return R * (1.0 - std::sqrt(arg));
}

double critical_overlap() { return (2.0 - std::sqrt(2.0)) / 2.0; }

double px_to_mm(double n_p, double W, int P) {
    if (P <= 0) throw std::invalid_argument("pixel count must be positive");
    if (!(W > 0.0)) throw std::invalid_argument("image width must be positive");
    return n_p * W / static_cast<double>(P);
}

NominalModel NominalModel::square(double r, int n, double R) {
    check_overlap(r);
    check_radius(R);
    if (n < 1) throw std::invalid_argument("strike grid must have at least one strike per side");
    NominalModel m;
    m.R = R;
    m.r_x = r;
    m.r_y = r;
    m.p = n;
    m.q = n;
    return m;
}

NominalModel NominalModel::from_params(const ProcessParams& params) {
    NominalModel m;
    m.R = nominal_radius(params);
    m.r_x = params.overlap_x;
    m.r_y = params.overlap_y;
    m.p = params.strikes_per_side;
    m.q = params.strikes_per_side;
    check_overlap(m.r_x);
    check_overlap(m.r_y);
    if (m.p < 1) throw std::invalid_argument("strike grid must have at least one strike per side");
    return m;
}

LifetimeDistribution expected_depth_distribution(const NominalModel& m) {
    const double hx = merge_height(m.r_x, 1.0);
    const double hy = merge_height(m.r_y, 1.0);
    if (hx == hy) return LifetimeDistribution::point_mass(hx);
    const double total = static_cast<double>(m.p + m.q);
    return LifetimeDistribution::from_weighted({hx, hy}, {m.p / total, m.q / total});
}

LifetimeDistribution expected_roundness_distribution(double T, const NominalModel& m) {
    if (!(T >= 0.0)) throw std::domain_error("section height must be nonnegative");
    const double r = m.r_x;
    if (r > critical_overlap() && T > diagonal_height(r, m.R))
        return LifetimeDistribution::point_mass(0.0);
    const double sigma = sigma_at(T, m.R);
    if (T < merge_height(r, m.R)) return LifetimeDistribution::point_mass(sigma);
    const double a = intersection_height_a(T, m.R, r);
    const double n2 = static_cast<double>(m.strike_count());
    return LifetimeDistribution::from_weighted({sigma, sigma - a}, {1.0 / n2, (n2 - 1.0) / n2});
}

}  // namespace topotex
