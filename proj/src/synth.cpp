#include "topotex/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "topotex/nominal.hpp"

namespace topotex {

ProcessParams ProcessParams::from_overlap(double r, int n, double width_mm, int pixels) {
    if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("overlap must lie in [0, 1)");
    if (n < 1) throw std::invalid_argument("strikes per side must be positive");
    ProcessParams p;
    p.speed_x_mm_min = 3000.0 * (1.0 - r);
    p.speed_y_mm_min = p.speed_x_mm_min;
    p.overlap_x = r;
    p.overlap_y = r;
    p.strikes_per_side = n;
    p.width_mm = width_mm;
    p.pixels = pixels;
    return p;
}

ScalarGrid spherical_grid(const ProcessParams& params, std::optional<double> lattice_center_px) {
    if (params.pixels < 1) throw std::invalid_argument("pixels must be positive");
    if (!(params.width_mm > 0.0)) throw std::invalid_argument("width_mm must be positive");
    if (params.strikes_per_side < 1) throw std::invalid_argument("strikes per side must be positive");
    for (double r : {params.overlap_x, params.overlap_y})
        if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("overlap must lie in [0, 1)");

    const double R = nominal_radius(params);
    const int n = params.strikes_per_side;
    const int P = params.pixels;
    const double W = params.width_mm;
    const double px = W / P;
    const double dx = 2.0 * R * (1.0 - params.overlap_x);
    const double dy = 2.0 * R * (1.0 - params.overlap_y);
    const double center = lattice_center_px ? (*lattice_center_px + 0.5) * px : 0.5 * W;

    const double half_span_x = 0.5 * (n - 1) * dx;
    const double half_span_y = 0.5 * (n - 1) * dy;
    const double slack = px;
    if (center - std::max(half_span_x, half_span_y) - R < -slack ||
        center + std::max(half_span_x, half_span_y) + R > W + slack)
        throw std::invalid_argument("strike lattice does not fit in the image");

    ScalarGrid g;
    g.rows = P;
    g.cols = P;
    g.width_mm = W;
    g.depth_scale = R;
    g.values.resize(static_cast<size_t>(P) * P);

    // The cap profile falls monotonically with distance, so only the nearest
    // lattice center can set the minimum; find it per axis.
    auto nearest_offset = [n](double coord, double center0, double spacing) {
        double k = std::round((coord - center0) / spacing + 0.5 * (n - 1));
        k = std::clamp(k, 0.0, static_cast<double>(n - 1));
        return coord - (center0 + (k - 0.5 * (n - 1)) * spacing);
    };

    std::vector<double> off_x(P), off_y(P);
    for (int j = 0; j < P; ++j) off_x[j] = nearest_offset((j + 0.5) * px, center, dx);
    for (int i = 0; i < P; ++i) off_y[i] = nearest_offset((i + 0.5) * px, center, dy);

    const double R2 = R * R;
    for (int i = 0; i < P; ++i) {
        const double oy2 = off_y[i] * off_y[i];
        double* row = g.values.data() + static_cast<size_t>(i) * P;
        for (int j = 0; j < P; ++j) {
            const double rho2 = off_x[j] * off_x[j] + oy2;
            row[j] = rho2 >= R2 ? 1.0 : (R - std::sqrt(R2 - rho2)) / R;
        }
    }
    return g;
}

ScalarGrid gaussian_bump_surface(int bumps_per_side, double bump_sigma_px, int pixels) {
    if (bumps_per_side < 1) throw std::invalid_argument("bumps_per_side must be positive");
    if (pixels < 1) throw std::invalid_argument("pixels must be positive");
    const int m = bumps_per_side;
    const int P = pixels;
    const double spacing = static_cast<double>(P) / m;
    const double sigma = bump_sigma_px > 0.0 ? bump_sigma_px : spacing / 6.0;
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    const double mid = 0.5 * (P - 1);

    // A full m x m lattice of isotropic Gaussians factors into per-axis sums.
    auto axis_sum = [&](double coord) {
        double s = 0.0;
        for (int k = 0; k < m; ++k) {
            const double d = coord - (mid + (k - 0.5 * (m - 1)) * spacing);
            s += std::exp(-d * d * inv2s2);
        }
        return s;
    };
    std::vector<double> sx(P), sy(P);
    for (int j = 0; j < P; ++j) sx[j] = axis_sum(j);
    for (int i = 0; i < P; ++i) sy[i] = axis_sum(i);

    ScalarGrid g;
    g.rows = P;
    g.cols = P;
    g.width_mm = P;
    g.values.resize(static_cast<size_t>(P) * P);
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) g(i, j) = sy[i] * sx[j];
    g = normalize(g);
    for (double& v : g.values) v = 1.0 - v;
    return g;
}

ScalarGrid conic_field(const GeneralizedConic& conic, int pixels, double width_mm) {
    if (conic.foci_mm.empty()) throw std::invalid_argument("conic needs at least one focus");
    if (conic.foci_mm.size() != conic.weights.size())
        throw std::invalid_argument("conic foci/weights size mismatch");
    if (!(conic.p >= 1.0)) throw std::invalid_argument("conic norm order must be >= 1");
    if (std::all_of(conic.weights.begin(), conic.weights.end(),
                    [](double w) { return w == 0.0; }))
        throw std::invalid_argument("conic weights are all zero");
    if (pixels < 1) throw std::invalid_argument("pixels must be positive");
    if (!(width_mm > 0.0)) throw std::invalid_argument("width_mm must be positive");

    const double px = width_mm / pixels;
    ScalarGrid g;
    g.rows = pixels;
    g.cols = pixels;
    g.width_mm = width_mm;
    g.values.resize(static_cast<size_t>(pixels) * pixels);
    for (int i = 0; i < pixels; ++i) {
        const double y = (i + 0.5) * px;
        for (int j = 0; j < pixels; ++j) {
            const double x = (j + 0.5) * px;
            double rho = 0.0;
            for (size_t k = 0; k < conic.foci_mm.size(); ++k) {
                const double ax = std::abs(x - conic.foci_mm[k].first);
                const double ay = std::abs(y - conic.foci_mm[k].second);
                double norm;
                if (conic.p == 2.0) {
                    norm = std::hypot(ax, ay);
                } else if (conic.p == 1.0) {
                    norm = ax + ay;
                } else {
                    norm = std::pow(std::pow(ax, conic.p) + std::pow(ay, conic.p), 1.0 / conic.p);
                }
                rho += conic.weights[k] * norm;
            }
            g(i, j) = rho;
        }
    }
    return g;
}

ScalarGrid add_gaussian_noise(const ScalarGrid& g, double snr_db, std::uint64_t seed) {
    validate(g, "add_gaussian_noise");
    const double sigma = std::pow(10.0, -snr_db / 20.0);
    ScalarGrid out = g;
    if (sigma == 0.0) return out;

    // Box-Muller over mt19937_64 draws; both the engine and the transform are
    // pinned down so identical seeds give identical grids on any platform.
    std::mt19937_64 rng(seed);
    constexpr double k2_53 = 1.0 / 9007199254740992.0;  // 2^-53
    const double two_pi = 2.0 * std::acos(-1.0);
    size_t k = 0;
    const size_t total = out.values.size();
    while (k < total) {
        const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * k2_53;  // (0, 1]
        const double u2 = static_cast<double>(rng() >> 11) * k2_53;          // [0, 1)
        const double mag = sigma * std::sqrt(-2.0 * std::log(u1));
        out.values[k++] += mag * std::cos(two_pi * u2);
        if (k < total) out.values[k++] += mag * std::sin(two_pi * u2);
    }
    return out;
}

}  // namespace topotex
