#include "topotex/dtx.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace topotex {

namespace {

constexpr std::int64_t kFar = std::int64_t{1} << 50;

// Lower envelope of the parabolas q -> (q - j)^2 + f[j] (Felzenszwalb-
// Huttenlocher). f holds squared distances, so evaluation stays in exact
// integer arithmetic; only the envelope breakpoints use doubles.
void envelope_pass(const std::vector<std::int64_t>& f, std::vector<std::int64_t>& d,
                   std::vector<int>& v, std::vector<double>& z) {
    const int n = static_cast<int>(f.size());
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s;
        for (;;) {
            const int p = v[k];
            s = (static_cast<double>(f[q] - f[p]) +
                 static_cast<double>(static_cast<std::int64_t>(q) * q -
                                     static_cast<std::int64_t>(p) * p)) /
                (2.0 * (q - p));
            if (s > z[k]) break;
            --k;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const std::int64_t dq = q - v[k];
        d[q] = dq * dq + f[v[k]];
    }
}

}  // namespace

BinaryGrid binarize(const ScalarGrid& g, double T) {
    validate(g, "binarize");
    BinaryGrid b;
    b.rows = g.rows;
    b.cols = g.cols;
    b.values.resize(g.values.size());
    for (size_t k = 0; k < g.values.size(); ++k)
        b.values[k] = g.values[k] < T ? std::uint8_t{1} : std::uint8_t{0};
    return b;
}

ScalarGrid distance_transform(const BinaryGrid& b) {
    if (b.rows <= 0 || b.cols <= 0 || b.values.size() != static_cast<size_t>(b.rows) * b.cols)
        throw std::invalid_argument("binary grid dimensions do not match its data");
    const int rows = b.rows, cols = b.cols;

    // Vertical pass: integer distance to the nearest black pixel in the same
    // column, swept down then up; kFar marks columns with no black pixel.
    std::vector<std::int64_t> colsq(static_cast<size_t>(rows) * cols);
    bool any_black = false;
    for (int j = 0; j < cols; ++j) {
        std::int64_t d = kFar;
        for (int i = 0; i < rows; ++i) {
            if (!b.values[static_cast<size_t>(i) * cols + j]) {
                d = 0;
                any_black = true;
            } else if (d < kFar) {
                ++d;
            }
            colsq[static_cast<size_t>(i) * cols + j] = d;
        }
        d = kFar;
        for (int i = rows - 1; i >= 0; --i) {
            const size_t at = static_cast<size_t>(i) * cols + j;
            if (!b.values[at])
                d = 0;
            else if (d < kFar)
                ++d;
            if (d < colsq[at]) colsq[at] = d;
        }
    }
    if (!any_black) throw std::domain_error("distance transform of an all-white grid");
    for (std::int64_t& d : colsq)
        if (d < kFar) d *= d;

    // Horizontal pass: combine the squared column distances across each row.
    ScalarGrid out;
    out.rows = rows;
    out.cols = cols;
    out.width_mm = static_cast<double>(cols);
    out.values.resize(colsq.size());
    std::vector<std::int64_t> f(cols), d(cols);
    std::vector<int> v(cols);
    std::vector<double> z(static_cast<size_t>(cols) + 1);
    for (int i = 0; i < rows; ++i) {
        const size_t base = static_cast<size_t>(i) * cols;
        for (int j = 0; j < cols; ++j) f[j] = colsq[base + j];
        envelope_pass(f, d, v, z);
        for (int j = 0; j < cols; ++j) out.values[base + j] = std::sqrt(static_cast<double>(d[j]));
    }
    return out;
}

}  // namespace topotex
