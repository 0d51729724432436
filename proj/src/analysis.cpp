#include "topotex/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace topotex {

namespace {

NominalModel model_from(const AnalyzeOptions& opt) {
    const ProcessParams params =
        ProcessParams::from_overlap(opt.overlap, opt.strikes_per_side, 2.5, 1000);
    return NominalModel::square(opt.overlap, opt.strikes_per_side, nominal_radius(params));
}

ScalarGrid minima_grid(const ScalarGrid& g, int max_res) {
    if (max_res < 1 || (g.rows <= max_res && g.cols <= max_res)) return g;
    return downsample(g, std::min(g.rows, max_res), std::min(g.cols, max_res));
}

nlohmann::ordered_json filter_log_json(const std::vector<FilterStep>& steps) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& s : steps) {
        a.push_back({{"name", s.name},
                     {"pairs_before", s.pairs_before},
                     {"pairs_after", s.pairs_after},
                     {"cutoff", s.cutoff}});
    }
    return a;
}

template <typename T>
nlohmann::json opt_json(const std::optional<T>& v) {
    if (!v) return nullptr;
    return *v;
}

}  // namespace

ScoreReport analyze_depth(const ScalarGrid& g, const AnalyzeOptions& opt) {
    const NominalModel model = model_from(opt);
    const ScalarGrid ng = normalize(g);
    const Diagram d0 = sublevel_h0(ng);
    FilterResult den = denoise_depth_diagram(d0, model.strike_count());
    const std::vector<double> lts = lifetimes(den.diagram, 0, false);

    ScoreReport rep;
    rep.depth_score = depth_score(lts, expected_depth_distribution(model));
    rep.n_pairs_kept = static_cast<int>(den.diagram.pairs.size());
    rep.filter_log = std::move(den.steps);
    return rep;
}

ScoreReport analyze_roundness(const ScalarGrid& g, const AnalyzeOptions& opt,
                              RoundnessCurve* curve_out) {
    const NominalModel model = model_from(opt);
    const ScalarGrid ng = normalize(g);

    const ScalarGrid mg = minima_grid(ng, opt.minima_max_res);
    FilterResult fm = filter_minima(sublevel_h0(mg),
                                    opt.expected_minima.value_or(model.strike_count()),
                                    !opt.keep_zero_births);
    const double h_r = reference_height(fm.diagram);

    RoundnessCurve curve = roundness_curve(ng, model, h_r, opt.n_thresholds,
                                           opt.depth_scale_mm.value_or(0.0), opt.threads);
    ScoreReport rep;
    rep.reference_height = h_r;
    rep.roundness_generalized = generalized_roundness(curve);
    rep.roundness_spherical = spherical_roundness(*rep.roundness_generalized, model.R);
    rep.n_pairs_kept = static_cast<int>(fm.diagram.pairs.size());
    rep.filter_log = fm.steps;

    if (opt.depth_max_um) {
        std::vector<std::array<double, 3>> pts;
        for (const auto& p : fm.diagram.pairs)
            pts.push_back({static_cast<double>(p.birth_col), static_cast<double>(p.birth_row),
                           p.birth});
        const PlaneFit fit = fit_plane(pts);
        rep.slopes_um_per_mm =
            slopes_physical(fit.c1, fit.c2, *opt.depth_max_um, mg.width_mm, mg.cols);
    }
    if (curve_out) *curve_out = std::move(curve);
    return rep;
}

SlopeReport analyze_slope(const ScalarGrid& g, const AnalyzeOptions& opt) {
    const NominalModel model = model_from(opt);
    const ScalarGrid ng = normalize(g);
    const ScalarGrid mg = minima_grid(ng, opt.minima_max_res);
    FilterResult fm = filter_minima(sublevel_h0(mg),
                                    opt.expected_minima.value_or(model.strike_count()),
                                    !opt.keep_zero_births);

    SlopeReport rep;
    rep.filter_log = fm.steps;
    for (const auto& p : fm.diagram.pairs)
        rep.minima.push_back({static_cast<double>(p.birth_row), static_cast<double>(p.birth_col),
                              p.birth});
    std::sort(rep.minima.begin(), rep.minima.end());

    std::vector<std::array<double, 3>> pts;
    for (const auto& m : rep.minima) pts.push_back({m[1], m[0], m[2]});
    rep.fit = fit_plane(pts);
    if (opt.depth_max_um)
        rep.slopes_um_per_mm =
            slopes_physical(rep.fit.c1, rep.fit.c2, *opt.depth_max_um, mg.width_mm, mg.cols);
    return rep;
}

std::string report_to_json(const ScoreReport& r) {
    nlohmann::ordered_json j;
    j["depth_score"] = opt_json(r.depth_score);
    j["roundness_generalized"] = opt_json(r.roundness_generalized);
    j["roundness_spherical"] = opt_json(r.roundness_spherical);
    j["reference_height"] = opt_json(r.reference_height);
    if (r.slopes_um_per_mm)
        j["slopes_um_per_mm"] = {(*r.slopes_um_per_mm)[0], (*r.slopes_um_per_mm)[1]};
    else
        j["slopes_um_per_mm"] = nullptr;
    j["n_pairs_kept"] = opt_json(r.n_pairs_kept);
    j["filter_log"] = filter_log_json(r.filter_log);
    return j.dump(2) + "\n";
}

std::string slope_report_to_json(const SlopeReport& r) {
    nlohmann::ordered_json j;
    j["c0"] = r.fit.c0;
    j["c1"] = r.fit.c1;
    j["c2"] = r.fit.c2;
    if (r.slopes_um_per_mm) {
        j["m_x"] = (*r.slopes_um_per_mm)[0];
        j["m_y"] = (*r.slopes_um_per_mm)[1];
    } else {
        j["m_x"] = nullptr;
        j["m_y"] = nullptr;
    }
    j["residual_rms"] = r.fit.residual_rms;
    nlohmann::ordered_json minima = nlohmann::ordered_json::array();
    for (const auto& m : r.minima)
        minima.push_back({static_cast<int>(m[0]), static_cast<int>(m[1]), m[2]});
    j["minima"] = minima;
    j["filter_log"] = filter_log_json(r.filter_log);
    return j.dump(2) + "\n";
}

std::string curve_to_csv(const RoundnessCurve& c) {
    std::string out = "threshold,emd_mm\n";
    char buf[80];
    for (const auto& s : c.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.t, s.emd_mm);
        out += buf;
    }
    return out;
}

}  // namespace topotex
