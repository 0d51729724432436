#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstdint>
#include <optional>

#include "topotex/analysis.hpp"
#include "topotex/dtx.hpp"
#include "topotex/grid.hpp"
#include "topotex/nominal.hpp"
#include "topotex/persistence.hpp"
#include "topotex/scoring.hpp"
#include "topotex/synth.hpp"

namespace py = pybind11;
using namespace topotex;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

ScalarGrid grid_from_array(const DoubleArray& a, double width_mm) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
    ScalarGrid g;
    g.rows = static_cast<int>(a.shape(0));
    g.cols = static_cast<int>(a.shape(1));
    g.width_mm = width_mm;
    g.values.assign(a.data(), a.data() + a.size());
    validate(g, "python input");
    return g;
}

py::array_t<double> array_from_grid(const ScalarGrid& g) {
    py::array_t<double> a({g.rows, g.cols});
    std::copy(g.values.begin(), g.values.end(), a.mutable_data());
    return a;
}

// Rows: dim, birth, death (inf for essential), birth_row, birth_col,
// death_row, death_col.
py::array_t<double> array_from_diagram(const Diagram& d) {
    py::array_t<double> a({static_cast<py::ssize_t>(d.pairs.size()), py::ssize_t{7}});
    double* out = a.mutable_data();
    for (const auto& p : d.pairs) {
        *out++ = static_cast<double>(p.dim);
        *out++ = p.birth;
        *out++ = p.death;
        *out++ = static_cast<double>(p.birth_row);
        *out++ = static_cast<double>(p.birth_col);
        *out++ = static_cast<double>(p.death_row);
        *out++ = static_cast<double>(p.death_col);
    }
    return a;
}

py::object opt_to_py(const std::optional<double>& v) {
    if (!v) return py::none();
    return py::float_(*v);
}

py::dict report_to_dict(const ScoreReport& r) {
    py::dict d;
    d["depth_score"] = opt_to_py(r.depth_score);
    d["roundness_generalized"] = opt_to_py(r.roundness_generalized);
    d["roundness_spherical"] = opt_to_py(r.roundness_spherical);
    d["reference_height"] = opt_to_py(r.reference_height);
    if (r.slopes_um_per_mm)
        d["slopes_um_per_mm"] = py::make_tuple((*r.slopes_um_per_mm)[0], (*r.slopes_um_per_mm)[1]);
    else
        d["slopes_um_per_mm"] = py::none();
    d["n_pairs_kept"] = r.n_pairs_kept ? py::object(py::int_(*r.n_pairs_kept)) : py::none();
    py::list log;
    for (const auto& s : r.filter_log) {
        py::dict e;
        e["name"] = s.name;
        e["pairs_before"] = s.pairs_before;
        e["pairs_after"] = s.pairs_after;
        e["cutoff"] = s.cutoff;
        log.append(e);
    }
    d["filter_log"] = log;
    return d;
}

AnalyzeOptions make_options(double overlap, int n, double depth_scale_mm, int n_thresholds,
                            int threads, bool keep_zero_births, int minima_max_res) {
    AnalyzeOptions opt;
    opt.overlap = overlap;
    opt.strikes_per_side = n;
    if (depth_scale_mm > 0.0) opt.depth_scale_mm = depth_scale_mm;
    opt.n_thresholds = n_thresholds;
    opt.threads = threads;
    opt.keep_zero_births = keep_zero_births;
    opt.minima_max_res = minima_max_res;
    return opt;
}

}  // namespace

PYBIND11_MODULE(_topotex, m) {
    m.doc() = "Topological scoring of patterned surface textures";

    m.def(
        "generate",
        [](double overlap, int n, int pixels, double width_mm, py::object lattice_center_px) {
            const ProcessParams params = ProcessParams::from_overlap(overlap, n, width_mm, pixels);
            std::optional<double> center;
            if (!lattice_center_px.is_none()) center = lattice_center_px.cast<double>();
            return array_from_grid(spherical_grid(params, center));
        },
        py::arg("overlap"), py::arg("n"), py::arg("pixels") = 1000, py::arg("width_mm") = 2.5,
        py::arg("lattice_center_px") = py::none(),
        "Nominal spherical-strike lattice depth map, values in [0, 1].");

    m.def(
        "gaussian_bumps",
        [](int bumps_per_side, double bump_sigma_px, int pixels) {
            return array_from_grid(gaussian_bump_surface(bumps_per_side, bump_sigma_px, pixels));
        },
        py::arg("bumps_per_side"), py::arg("bump_sigma_px") = -1.0, py::arg("pixels") = 300,
        "Smooth Gaussian-bump test surface, values in [0, 1].");

    m.def(
        "add_noise",
        [](const DoubleArray& a, double snr_db, std::uint64_t seed) {
            return array_from_grid(add_gaussian_noise(grid_from_array(a, 1.0), snr_db, seed));
        },
        py::arg("grid"), py::arg("snr_db"), py::arg("seed") = 0,
        "Additive Gaussian noise at the given amplitude SNR (dB).");

    m.def(
        "normalize",
        [](const DoubleArray& a) { return array_from_grid(normalize(grid_from_array(a, 1.0))); },
        py::arg("grid"), "Affine rescale to [0, 1].");

    m.def(
        "sublevel_h0",
        [](const DoubleArray& a, bool eight_connected) {
            return array_from_diagram(sublevel_h0(
                grid_from_array(a, 1.0), eight_connected ? Connectivity::Eight : Connectivity::Four));
        },
        py::arg("grid"), py::arg("eight_connected") = true,
        "Dim-0 sublevel pairs as rows [dim, birth, death, birth_row, birth_col, death_row, "
        "death_col].");

    m.def(
        "sublevel_h1",
        [](const DoubleArray& a, bool eight_connected) {
            return array_from_diagram(sublevel_h1(
                grid_from_array(a, 1.0), eight_connected ? Connectivity::Eight : Connectivity::Four));
        },
        py::arg("grid"), py::arg("eight_connected") = true,
        "Dim-1 sublevel pairs as rows [dim, birth, death, birth_row, birth_col, death_row, "
        "death_col].");

    m.def(
        "distance_transform",
        [](const DoubleArray& a, double threshold) {
            return array_from_grid(
                distance_transform(binarize(grid_from_array(a, 1.0), threshold)));
        },
        py::arg("grid"), py::arg("threshold"),
        "Exact Euclidean distance (px) to the nearest pixel at or above the threshold.");

    m.def(
        "emd",
        [](const std::vector<double>& u, const std::vector<double>& v) {
            return emd(LifetimeDistribution::from_samples(u),
                       LifetimeDistribution::from_samples(v));
        },
        py::arg("u"), py::arg("v"),
        "1-D Wasserstein distance between two empirical sample distributions.");

    m.def("rice_bins", &rice_bins, py::arg("n"));
    m.def("nominal_radius", [](double overlap) {
        return nominal_radius(ProcessParams::from_overlap(overlap, 1, 2.5, 1000));
    });
    m.def("merge_height", &merge_height, py::arg("r"), py::arg("R") = 1.0);
    m.def("sigma_at", &sigma_at, py::arg("T"), py::arg("R"));
    m.def("intersection_height_a", &intersection_height_a, py::arg("T"), py::arg("R"),
          py::arg("r"));
    m.def("diagonal_height", &diagonal_height, py::arg("r"), py::arg("R") = 1.0);
    m.def("critical_overlap", &critical_overlap);

    m.def(
        "analyze_depth",
        [](const DoubleArray& a, double overlap, int n, double width_mm) {
            const AnalyzeOptions opt = make_options(overlap, n, 0.0, 50, 1, false, 300);
            return report_to_dict(analyze_depth(grid_from_array(a, width_mm), opt));
        },
        py::arg("grid"), py::arg("overlap"), py::arg("n"), py::arg("width_mm") = 2.5,
        "Depth-consistency score report as a dict.");

    m.def(
        "analyze_roundness",
        [](const DoubleArray& a, double overlap, int n, double width_mm, double depth_scale_mm,
           int n_thresholds, int threads, bool keep_zero_births, int minima_max_res) {
            const AnalyzeOptions opt = make_options(overlap, n, depth_scale_mm, n_thresholds,
                                                    threads, keep_zero_births, minima_max_res);
            return report_to_dict(analyze_roundness(grid_from_array(a, width_mm), opt));
        },
        py::arg("grid"), py::arg("overlap"), py::arg("n"), py::arg("width_mm") = 2.5,
        py::arg("depth_scale_mm") = 0.0, py::arg("n_thresholds") = 50, py::arg("threads") = 1,
        py::arg("keep_zero_births") = false, py::arg("minima_max_res") = 300,
        "Roundness score report as a dict.");
}
