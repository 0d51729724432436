#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "topotex/analysis.hpp"
#include "topotex/dtx.hpp"
#include "topotex/grid.hpp"
#include "topotex/noise_study.hpp"
#include "topotex/nominal.hpp"
#include "topotex/synth.hpp"
#include "topotex/verification.hpp"

namespace {

using namespace topotex;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

ScalarGrid load_input(const std::string& path, double width_mm) {
    ScalarGrid g = load_grid(path, format_from_path(path));
    g.width_mm = width_mm;
    return g;
}

nlohmann::ordered_json distribution_json(const LifetimeDistribution& d) {
    return {{"points", d.points}, {"weights", d.weights}};
}

struct GenArgs {
    double overlap = 0.0;
    int n = 4;
    int pixels = 1000;
    double width_mm = 2.5;
    double snr_db = 0.0;
    bool has_snr = false;
    std::uint64_t seed = 0;
    double center_px = -1.0;
    bool has_center = false;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    const ProcessParams params = ProcessParams::from_overlap(a.overlap, a.n, a.width_mm, a.pixels);
    std::optional<double> center;
    if (a.has_center) center = a.center_px;
    ScalarGrid g = spherical_grid(params, center);
    if (a.has_snr) g = add_gaussian_noise(g, a.snr_db, a.seed);
    save_grid(g, a.out, format_from_path(a.out));
    std::fprintf(stdout, "wrote %s (%dx%d)\n", a.out.c_str(), g.rows, g.cols);
    return 0;
}

struct TheoryArgs {
    double overlap = 0.0;
    int n = 1;
    double radius_mm = 0.0;
    bool has_radius = false;
    double section_mm = 0.0;
    bool has_section = false;
    std::string report;
};

int cmd_theory(const TheoryArgs& a) {
    const ProcessParams base = ProcessParams::from_overlap(a.overlap, a.n, 2.5, 1000);
    const double R = a.has_radius ? a.radius_mm : nominal_radius(base);
    const NominalModel model = NominalModel::square(a.overlap, a.n, R);

    nlohmann::ordered_json j;
    j["overlap"] = a.overlap;
    j["strikes_per_side"] = a.n;
    j["nominal_radius_mm"] = R;
    j["strike_spacing_mm"] = 2.0 * R * (1.0 - a.overlap);
    j["merge_height_mm"] = merge_height(a.overlap, R);
    j["merge_height_normalized"] = merge_height(a.overlap, 1.0);
    j["diagonal_height_mm"] = diagonal_height(a.overlap, R);
    j["critical_overlap"] = critical_overlap();
    j["depth_distribution"] = distribution_json(expected_depth_distribution(model));
    if (a.has_section) {
        nlohmann::ordered_json s;
        s["height_mm"] = a.section_mm;
        s["sigma_mm"] = sigma_at(a.section_mm, R);
        if (a.section_mm >= merge_height(a.overlap, R))
            s["intersection_a_mm"] = intersection_height_a(a.section_mm, R, a.overlap);
        else
            s["intersection_a_mm"] = nullptr;
        s["roundness_distribution"] =
            distribution_json(expected_roundness_distribution(a.section_mm, model));
        j["section"] = s;
    } else {
        j["section"] = nullptr;
    }
    const std::string text = j.dump(2) + "\n";
    std::fputs(text.c_str(), stdout);
    if (!a.report.empty()) write_file(a.report, text);
    return 0;
}

struct VerifyArgs {
    VerifyOptions opt;
    std::string report;
};

int cmd_verify(const VerifyArgs& a) {
    const std::vector<VerifyCase> cases = run_verification(a.opt);
    std::fprintf(stdout, "%-22s %8s %4s %12s %12s %9s\n", "quantity", "overlap", "n", "theory",
                 "measured", "diff%");
    for (const auto& c : cases)
        std::fprintf(stdout, "%-22s %8.2f %4d %12.6g %12.6g %9.3f\n", c.quantity.c_str(),
                     c.overlap, c.n, c.theory, c.measured, c.pct_diff);
    const bool ok = verification_passed(cases, a.opt.tol_pct);
    std::fprintf(stdout, "verification %s (tolerance %.3g%%)\n", ok ? "PASSED" : "FAILED",
                 a.opt.tol_pct);
    if (!a.report.empty()) write_file(a.report, verification_to_json(cases, a.opt.tol_pct));
    return ok ? 0 : 1;
}

struct AnalyzeArgs {
    std::string in;
    double width_mm = 2.5;
    AnalyzeOptions opt;
    double depth_scale_mm = 0.0;
    bool has_depth_scale = false;
    double depth_max_um = 0.0;
    bool has_depth_max = false;
    std::string report;
    std::string curve;
    double dump_threshold = 0.0;
    bool has_dump_threshold = false;
    std::string out;
};

void finish_options(AnalyzeArgs& a) {
    if (a.has_depth_scale) a.opt.depth_scale_mm = a.depth_scale_mm;
    if (a.has_depth_max) a.opt.depth_max_um = a.depth_max_um;
}

int cmd_analyze_depth(AnalyzeArgs& a) {
    finish_options(a);
    const ScalarGrid g = load_input(a.in, a.width_mm);
    const ScoreReport rep = analyze_depth(g, a.opt);
    const std::string text = report_to_json(rep);
    std::fputs(text.c_str(), stdout);
    if (!a.report.empty()) write_file(a.report, text);
    return 0;
}

int cmd_analyze_roundness(AnalyzeArgs& a) {
    finish_options(a);
    const ScalarGrid g = load_input(a.in, a.width_mm);
    if (a.has_dump_threshold) {
        if (a.out.empty())
            throw CLI::ValidationError("--threshold needs --out for the transform dump");
        const ScalarGrid dt = distance_transform(binarize(normalize(g), a.dump_threshold));
        save_grid(dt, a.out, format_from_path(a.out));
        std::fprintf(stdout, "wrote %s (distance transform at t=%g)\n", a.out.c_str(),
                     a.dump_threshold);
    }
    RoundnessCurve curve;
    const ScoreReport rep = analyze_roundness(g, a.opt, &curve);
    const std::string text = report_to_json(rep);
    std::fputs(text.c_str(), stdout);
    if (!a.report.empty()) write_file(a.report, text);
    if (!a.curve.empty()) write_file(a.curve, curve_to_csv(curve));
    return 0;
}

struct SlopeArgs {
    std::string in;
    double width_mm = 2.5;
    int n_strikes = 0;
    AnalyzeOptions opt;
    double depth_max_um = 0.0;
    std::string report;
};

int cmd_slope(SlopeArgs& a) {
    a.opt.expected_minima = a.n_strikes;
    a.opt.depth_max_um = a.depth_max_um;
    const ScalarGrid g = load_input(a.in, a.width_mm);
    const SlopeReport rep = analyze_slope(g, a.opt);
    const std::string text = slope_report_to_json(rep);
    std::fputs(text.c_str(), stdout);
    if (!a.report.empty()) write_file(a.report, text);
    return 0;
}

struct NoiseArgs {
    NoiseStudyOptions opt;
    std::string out;
};

int cmd_noise_study(const NoiseArgs& a) {
    const NoiseStudyResult res = run_noise_study(a.opt);
    const std::string text = noise_study_to_csv(res);
    std::fputs(text.c_str(), stdout);
    if (!a.out.empty()) write_file(a.out, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"topotex: topological texture scoring for patterned surfaces"};
    app.require_subcommand(1);

    GenArgs gen;
    CLI::App* sub_gen = app.add_subcommand("gen", "generate a nominal strike-lattice depth map");
    sub_gen->add_option("--overlap", gen.overlap, "strike overlap ratio in [0,1)");
    sub_gen->add_option("--n", gen.n, "strikes per side");
    sub_gen->add_option("--pixels", gen.pixels, "image resolution (pixels per side)");
    sub_gen->add_option("--width-mm", gen.width_mm, "physical image width, mm");
    CLI::Option* gen_snr =
        sub_gen->add_option("--snr-db,--noise-snr-db", gen.snr_db, "add Gaussian noise at this SNR");
    sub_gen->add_option("--seed", gen.seed, "noise RNG seed");
    CLI::Option* gen_center = sub_gen->add_option("--lattice-center-px", gen.center_px,
                                                  "pin the lattice center to this pixel index");
    sub_gen->add_option("--out", gen.out, "output grid path (.csv or .pgm)")->required();

    TheoryArgs theory;
    CLI::App* sub_theory =
        app.add_subcommand("theory", "print closed-form nominal model quantities as JSON");
    sub_theory->add_option("--overlap", theory.overlap, "strike overlap ratio in [0,1)")
        ->required();
    sub_theory->add_option("--n", theory.n, "strikes per side");
    CLI::Option* theory_radius =
        sub_theory->add_option("--radius-mm", theory.radius_mm, "strike radius override, mm");
    CLI::Option* theory_section = sub_theory->add_option(
        "--section-height-mm", theory.section_mm, "also evaluate the section at this height");
    sub_theory->add_option("--report", theory.report, "write the JSON here too");

    VerifyArgs verify;
    CLI::App* sub_verify = app.add_subcommand(
        "verify", "check measured lifetimes against closed-form theory on nominal grids");
    sub_verify->add_option("--tol", verify.opt.tol_pct, "max percent difference");
    sub_verify->add_option("--pixels", verify.opt.pixels_depth, "depth-check resolution");
    sub_verify->add_option("--pixels-roundness", verify.opt.pixels_roundness,
                           "roundness-check resolution");
    sub_verify->add_option("--width-mm", verify.opt.width_mm, "physical image width, mm");
    sub_verify->add_option("--threads", verify.opt.threads, "worker threads");
    sub_verify->add_option("--report", verify.report, "write the JSON verification table here");

    AnalyzeArgs adepth, around;
    CLI::App* sub_analyze = app.add_subcommand("analyze", "score a measured depth map");
    sub_analyze->require_subcommand(1);
    CLI::App* sub_adepth =
        sub_analyze->add_subcommand("depth", "indentation-depth consistency score");
    CLI::App* sub_around = sub_analyze->add_subcommand("roundness", "strike roundness scores");
    sub_adepth->add_option("--in", adepth.in, "input grid (.csv or .pgm)")->required();
    sub_adepth->add_option("--overlap", adepth.opt.overlap, "nominal overlap ratio")->required();
    sub_adepth->add_option("--n", adepth.opt.strikes_per_side, "strikes per side")->required();
    sub_adepth->add_option("--width-mm", adepth.width_mm, "physical image width, mm");
    sub_adepth->add_option("--threads", adepth.opt.threads, "worker threads");
    sub_adepth->add_option("--report", adepth.report, "write the report JSON here");

    sub_around->add_option("--in", around.in, "input grid (.csv or .pgm)")->required();
    sub_around->add_option("--overlap", around.opt.overlap, "nominal overlap ratio")->required();
    sub_around->add_option("--n", around.opt.strikes_per_side, "strikes per side")->required();
    sub_around->add_option("--width-mm", around.width_mm, "physical image width, mm");
    CLI::Option* around_scale = sub_around->add_option(
        "--depth-scale-mm", around.depth_scale_mm, "physical depth of normalized value 1, mm");
    sub_around->add_option("--thresholds", around.opt.n_thresholds, "curve sample count");
    sub_around->add_option("--minima-max-res", around.opt.minima_max_res,
                           "downsample cap before minima filtering");
    sub_around->add_flag("--keep-birth-zero", around.opt.keep_zero_births,
                         "keep minima born exactly at 0");
    CLI::Option* around_depthmax = sub_around->add_option(
        "--depth-max-um", around.depth_max_um, "scan depth range for physical slopes, um");
    sub_around->add_option("--threads", around.opt.threads, "worker threads");
    sub_around->add_option("--report", around.report, "write the report JSON here");
    sub_around->add_option("--curve", around.curve, "write the roundness curve CSV here");
    CLI::Option* around_dump =
        sub_around->add_option("--threshold", around.dump_threshold,
                               "dump the distance transform at this threshold to --out");
    sub_around->add_option("--out", around.out, "distance-transform dump path");

    SlopeArgs slope;
    CLI::App* sub_slope =
        app.add_subcommand("slope", "fit a plane through the strike minima and report slopes");
    sub_slope->add_option("--in", slope.in, "input grid (.csv or .pgm)")->required();
    sub_slope->add_option("--n-strikes", slope.n_strikes, "expected number of strike minima")
        ->required();
    sub_slope->add_option("--depth-max-um", slope.depth_max_um, "scan depth range, um")
        ->required();
    sub_slope->add_option("--width-mm", slope.width_mm, "physical image width, mm");
    sub_slope->add_option("--minima-max-res", slope.opt.minima_max_res,
                          "downsample cap before minima filtering");
    sub_slope->add_flag("--keep-birth-zero", slope.opt.keep_zero_births,
                        "keep minima born exactly at 0");
    sub_slope->add_option("--report", slope.report, "write the JSON here too");

    NoiseArgs noise;
    CLI::App* sub_noise = app.add_subcommand(
        "noise-study", "score degradation under synthetic Gaussian noise (CSV output)");
    sub_noise->add_option("--snr-db", noise.opt.snr_db, "SNR sweep values, dB");
    sub_noise->add_option("--trials", noise.opt.trials, "trials per SNR");
    sub_noise->add_option("--bumps", noise.opt.bumps_per_side, "bumps per side");
    sub_noise->add_option("--pixels", noise.opt.pixels, "analysis resolution after ingest");
    sub_noise->add_option("--supersample", noise.opt.supersample,
                          "noise is added at pixels*supersample, then block-averaged");
    sub_noise->add_option("--bump-sigma-px", noise.opt.bump_sigma_px,
                          "bump width in analysis pixels (<=0 picks spacing/6)");
    sub_noise->add_option("--thresholds", noise.opt.n_thresholds, "roundness curve samples");
    sub_noise->add_option("--seed", noise.opt.base_seed, "base seed (trial k adds k)");
    sub_noise->add_option("--threads", noise.opt.threads, "worker threads");
    sub_noise->add_option("--out", noise.out, "write the CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub_gen->parsed()) {
            gen.has_snr = gen_snr->count() > 0;
            gen.has_center = gen_center->count() > 0;
            return cmd_gen(gen);
        }
        if (sub_theory->parsed()) {
            theory.has_radius = theory_radius->count() > 0;
            theory.has_section = theory_section->count() > 0;
            return cmd_theory(theory);
        }
        if (sub_verify->parsed()) return cmd_verify(verify);
        if (sub_adepth->parsed()) return cmd_analyze_depth(adepth);
        if (sub_around->parsed()) {
            around.has_depth_scale = around_scale->count() > 0;
            around.has_depth_max = around_depthmax->count() > 0;
            around.has_dump_threshold = around_dump->count() > 0;
            return cmd_analyze_roundness(around);
        }
        if (sub_slope->parsed()) return cmd_slope(slope);
        if (sub_noise->parsed()) return cmd_noise_study(noise);
        std::fprintf(stderr, "no subcommand selected\n");
        return 2;
    } catch (const FilterError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        for (const auto& s : e.steps())
            std::fprintf(stderr, "  filter step %-18s %d -> %d pairs (cutoff %.17g)\n",
                         s.name.c_str(), s.pairs_before, s.pairs_after, s.cutoff);
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
