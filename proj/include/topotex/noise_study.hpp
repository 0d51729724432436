#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace topotex {

struct NoiseStudyOptions {
    std::vector<double> snr_db = {40.0, 35.0, 30.0, 25.0, 20.0};
    int trials = 10;
    int bumps_per_side = 4;
    int pixels = 300;       // analysis resolution after ingest downsampling
    int supersample = 4;    // noise is added at pixels * supersample, then block-averaged
    double bump_sigma_px = -1.0;  // <= 0 picks bump spacing / 6 (analysis-grid pixels)
    int n_thresholds = 30;
    std::uint64_t base_seed = 0;  // trial k uses seed base_seed + k
    int threads = 1;
};

struct NoiseStudyRow {
    double snr_db = 0.0;
    double depth_mean = 0.0;
    double depth_std = 0.0;
    double roundness_mean = 0.0;
    double roundness_std = 0.0;
};

struct NoiseStudyResult {
    double depth_clean = 0.0;      // score of the noise-free surface (1 by construction)
    double roundness_clean = 0.0;
    std::vector<NoiseStudyRow> rows;  // one per SNR, in option order
};

/// Score degradation under additive Gaussian noise on a Gaussian-bump test
/// surface. Noise enters at the generation resolution (pixels * supersample)
/// and each trial is then block-averaged down to the analysis resolution, the
/// same ingest step the scan pipeline applies to raw acquisitions. The clean
/// surface's own lifetime distributions serve as nominal: depth compares
/// denoised dim-0 lifetimes; roundness compares dim-1 distance-transform
/// lifetimes threshold-by-threshold over the clean reference height's sweep,
/// keeping at each threshold only as many loops (largest lifetime first) as
/// the clean section has there, since any surplus is pixel-scale speckle.
/// Scores are normalized by the half bump spacing as the effective strike
/// radius. Noisy grids keep the clean height scale (no renormalization), so a
/// noise-free trial scores exactly 1.
NoiseStudyResult run_noise_study(const NoiseStudyOptions& opt);

/// CSV rows `score,snr_db,mean,std` (score in {depth, roundness}); the clean
/// reference appears first with snr_db = inf and std 0.
std::string noise_study_to_csv(const NoiseStudyResult& r);

}  // namespace topotex
