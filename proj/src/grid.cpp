#include "topotex/grid.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace topotex {

namespace {

std::string lower_ext(const std::string& path) {
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::invalid_argument(where + ": " + what);
}

// PGM headers allow '#' comment lines anywhere between tokens.
int next_pgm_int(std::istream& in, const std::string& path) {
    for (;;) {
        int c = in.peek();
        if (c == EOF) fail(path, "truncated PGM header");
        if (std::isspace(c)) {
            in.get();
        } else if (c == '#') {
            std::string skip;
            std::getline(in, skip);
        } else {
            break;
        }
    }
    int value = 0;
    if (!(in >> value)) fail(path, "malformed PGM header");
    return value;
}

}  // namespace

void validate(const ScalarGrid& g, const char* where) {
    if (g.rows <= 0 || g.cols <= 0) fail(where, "grid has no pixels");
    if (g.values.size() != static_cast<size_t>(g.rows) * g.cols)
        fail(where, "value count does not match rows*cols");
    if (!(g.width_mm > 0.0)) fail(where, "width_mm must be positive");
    for (double v : g.values)
        if (!std::isfinite(v)) fail(where, "grid holds a non-finite value");
}

GridFormat format_from_path(const std::string& path) {
    std::string ext = lower_ext(path);
    if (ext == "csv") return GridFormat::Csv;
    if (ext == "pgm") return GridFormat::Pgm;
    fail(path, "cannot infer grid format from extension (expected .csv or .pgm)");
}

static ScalarGrid load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open for reading");
    ScalarGrid g;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::stringstream ss(line);
        std::string cell;
        int cols = 0;
        while (std::getline(ss, cell, ',')) {
            size_t used = 0;
            double v;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                fail(path, "non-numeric CSV cell '" + cell + "'");
            }
            g.values.push_back(v);
            ++cols;
        }
        if (g.rows == 0) {
            g.cols = cols;
        } else if (cols != g.cols) {
            fail(path, "ragged CSV row");
        }
        ++g.rows;
    }
    if (g.rows == 0) fail(path, "empty CSV grid");
    validate(g, path.c_str());
    return g;
}

static ScalarGrid load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open for reading");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) fail(path, "not a P2/P5 PGM");
    const bool binary = magic[1] == '5';
    int cols = next_pgm_int(in, path);
    int rows = next_pgm_int(in, path);
    int maxval = next_pgm_int(in, path);
    if (cols <= 0 || rows <= 0) fail(path, "non-positive PGM dimensions");
    if (maxval <= 0 || maxval > 65535) fail(path, "PGM maxval out of range");

    ScalarGrid g;
    g.rows = rows;
    g.cols = cols;
    g.values.resize(static_cast<size_t>(rows) * cols);
    if (binary) {
        in.get();  // single whitespace after maxval
        const int bytes = maxval < 256 ? 1 : 2;
        std::vector<unsigned char> raw(g.values.size() * bytes);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (in.gcount() != static_cast<std::streamsize>(raw.size()))
            fail(path, "truncated PGM pixel data");
        for (size_t k = 0; k < g.values.size(); ++k) {
            int s = bytes == 1 ? raw[k] : (raw[2 * k] << 8) | raw[2 * k + 1];
            g.values[k] = static_cast<double>(s) / maxval;
        }
    } else {
        for (size_t k = 0; k < g.values.size(); ++k) {
            int s = next_pgm_int(in, path);
            if (s < 0 || s > maxval) fail(path, "PGM sample out of range");
            g.values[k] = static_cast<double>(s) / maxval;
        }
    }
    validate(g, path.c_str());
    return g;
}

ScalarGrid load_grid(const std::string& path, GridFormat format) {
    return format == GridFormat::Csv ? load_csv(path) : load_pgm(path);
}

void save_grid(const ScalarGrid& g, const std::string& path, GridFormat format, int pgm_maxval) {
    validate(g, "save_grid");
    std::ofstream out(path, format == GridFormat::Pgm ? std::ios::binary : std::ios::out);
    if (!out) fail(path, "cannot open for writing");
    if (format == GridFormat::Csv) {
        char buf[40];
        std::string line;
        for (int i = 0; i < g.rows; ++i) {
            line.clear();
            for (int j = 0; j < g.cols; ++j) {
                std::snprintf(buf, sizeof(buf), "%.17g", g(i, j));
                if (j) line += ',';
                line += buf;
            }
            line += '\n';
            out << line;
        }
    } else {
        if (pgm_maxval != 255 && pgm_maxval != 65535) fail(path, "PGM maxval must be 255 or 65535");
        for (double v : g.values)
            if (v < 0.0 || v > 1.0) fail(path, "PGM output requires values in [0, 1]");
        out << "P5\n" << g.cols << " " << g.rows << "\n" << pgm_maxval << "\n";
        for (double v : g.values) {
            int s = static_cast<int>(std::lround(v * pgm_maxval));
            s = std::clamp(s, 0, pgm_maxval);
            if (pgm_maxval > 255) out.put(static_cast<char>((s >> 8) & 0xff));
            out.put(static_cast<char>(s & 0xff));
        }
    }
    if (!out) fail(path, "write failed");
}

ScalarGrid normalize(const ScalarGrid& g) {
    validate(g, "normalize");
    auto [mn_it, mx_it] = std::minmax_element(g.values.begin(), g.values.end());
    const double mn = *mn_it, mx = *mx_it;
    ScalarGrid out = g;
    if (mx == mn) {
        std::fill(out.values.begin(), out.values.end(), 0.0);
        out.depth_scale.reset();
        return out;
    }
    const double scale = 1.0 / (mx - mn);
    for (double& v : out.values) v = (v - mn) * scale;
    if (g.depth_scale) out.depth_scale = *g.depth_scale * (mx - mn);
    return out;
}

ScalarGrid downsample(const ScalarGrid& g, int target_rows, int target_cols) {
    validate(g, "downsample");
    if (target_rows <= 0 || target_cols <= 0) fail("downsample", "non-positive target size");
    if (target_rows > g.rows || target_cols > g.cols)
        fail("downsample", "target exceeds source resolution");
    if (target_rows == g.rows && target_cols == g.cols) return g;

    // Leading blocks take the base size; the remainder widens the trailing ones.
    auto bounds = [](int n, int parts) {
        std::vector<int> b(static_cast<size_t>(parts) + 1, 0);
        int base = n / parts, rem = n % parts;
        for (int k = 0; k < parts; ++k) b[k + 1] = b[k] + base + (k >= parts - rem ? 1 : 0);
        return b;
    };
    const std::vector<int> rb = bounds(g.rows, target_rows);
    const std::vector<int> cb = bounds(g.cols, target_cols);

    ScalarGrid out;
    out.rows = target_rows;
    out.cols = target_cols;
    out.width_mm = g.width_mm;
    out.depth_scale = g.depth_scale;
    out.values.resize(static_cast<size_t>(target_rows) * target_cols);
    for (int bi = 0; bi < target_rows; ++bi) {
        for (int bj = 0; bj < target_cols; ++bj) {
            double sum = 0.0;
            for (int i = rb[bi]; i < rb[bi + 1]; ++i)
                for (int j = cb[bj]; j < cb[bj + 1]; ++j) sum += g(i, j);
            const double count = static_cast<double>(rb[bi + 1] - rb[bi]) * (cb[bj + 1] - cb[bj]);
            out(bi, bj) = sum / count;
        }
    }
    return out;
}

}  // namespace topotex
