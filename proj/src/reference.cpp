#include "topotex/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "topotex/scoring.hpp"

namespace topotex {

FilterResult filter_minima(const Diagram& d, int n_expected, bool drop_zero_births) {
    if (n_expected < 1) throw std::invalid_argument("expected minima count must be positive");
    std::vector<PersistencePair> pairs;
    for (const auto& p : d.pairs)
        if (p.dim == 0) pairs.push_back(p);
    std::vector<FilterStep> steps;

    std::vector<double> lts;
    for (const auto& p : pairs)
        if (!p.essential()) lts.push_back(p.lifetime());
    const double cutoff = rice_lifetime_cutoff(lts, n_expected);
    int before = static_cast<int>(pairs.size());
    std::erase_if(pairs, [&](const PersistencePair& p) {
        return !p.essential() && p.lifetime() < cutoff;
    });
    steps.push_back({"lifetime_cutoff", before, static_cast<int>(pairs.size()), cutoff});

    before = static_cast<int>(pairs.size());
    if (drop_zero_births)
        std::erase_if(pairs, [](const PersistencePair& p) { return p.birth == 0.0; });
    steps.push_back({"drop_zero_births", before, static_cast<int>(pairs.size()), 0.0});

    if (static_cast<int>(pairs.size()) < n_expected)
        throw FilterError("fewer minima than expected survive filtering", steps);

    std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
        const int ae = a.essential() ? 0 : 1, be = b.essential() ? 0 : 1;
        return std::tie(ae, a.birth, a.death, a.birth_row, a.birth_col) <
               std::tie(be, b.birth, b.death, b.birth_row, b.birth_col);
    });
    before = static_cast<int>(pairs.size());
    double trim_cutoff = 0.0;
    if (static_cast<int>(pairs.size()) > n_expected) {
        trim_cutoff = pairs[static_cast<size_t>(n_expected)].birth;
        pairs.resize(static_cast<size_t>(n_expected));
    }
    steps.push_back({"birth_trim", before, static_cast<int>(pairs.size()), trim_cutoff});

    FilterResult out;
    out.diagram.rows = d.rows;
    out.diagram.cols = d.cols;
    out.diagram.pairs = std::move(pairs);
    out.steps = std::move(steps);
    return out;
}

double reference_height(const Diagram& filtered) {
    double sum = 0.0;
    long long n = 0;
    for (const auto& p : filtered.pairs) {
        if (p.dim != 0) continue;
        sum += p.birth;
        ++n;
    }
    if (n == 0) throw std::domain_error("reference height of an empty diagram");
    return sum / static_cast<double>(n);
}

PlaneFit fit_plane(const std::vector<std::array<double, 3>>& points) {
    const size_t n = points.size();
    if (n < 3) throw std::invalid_argument("plane fit needs at least 3 points");
    double mx = 0.0, my = 0.0, mz = 0.0;
    for (const auto& p : points) {
        mx += p[0];
        my += p[1];
        mz += p[2];
    }
    mx /= n;
    my /= n;
    mz /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0, sxz = 0.0, syz = 0.0;
    for (const auto& p : points) {
        const double dx = p[0] - mx, dy = p[1] - my, dz = p[2] - mz;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
        sxz += dx * dz;
        syz += dy * dz;
    }
    const double det = sxx * syy - sxy * sxy;
    if (!(det > 1e-12 * (sxx * syy + sxy * sxy + 1e-300)))
        throw std::invalid_argument("plane fit points are collinear");
    PlaneFit fit;
    fit.c1 = (syy * sxz - sxy * syz) / det;
    fit.c2 = (sxx * syz - sxy * sxz) / det;
    fit.c0 = mz - fit.c1 * mx - fit.c2 * my;
    double ss = 0.0;
    for (const auto& p : points) {
        const double e = p[2] - (fit.c0 + fit.c1 * p[0] + fit.c2 * p[1]);
        ss += e * e;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

std::array<double, 2> slopes_physical(double c1, double c2, double depth_max_um, double W,
                                      int P) {
    if (!(depth_max_um > 0.0)) throw std::invalid_argument("maximum depth must be positive");
    if (!(W > 0.0)) throw std::invalid_argument("image width must be positive");
    if (P <= 0) throw std::invalid_argument("pixel count must be positive");
    const double k = depth_max_um * static_cast<double>(P) / W;
    return {c1 * k, c2 * k};
}

}  // namespace topotex
