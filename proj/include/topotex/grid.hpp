#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace topotex {

/// Dense row-major scalar field sampled on a square-pixel raster.
/// Pixel (i, j) covers the physical square with center
/// ((j + 0.5) * width_mm / cols, (i + 0.5) * width_mm / rows),
/// x growing with the column index and y growing downward with the row index.
struct ScalarGrid {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;
    /// Physical width of the imaged area; pixel pitch is width_mm / cols.
    double width_mm = 1.0;
    /// Physical depth (mm) that a normalized value of 1 corresponds to, when known.
    std::optional<double> depth_scale;

    double operator()(int i, int j) const { return values[static_cast<size_t>(i) * cols + j]; }
    double& operator()(int i, int j) { return values[static_cast<size_t>(i) * cols + j]; }
    size_t size() const { return values.size(); }
};

/// Boolean mask over the same raster; true = white (foreground).
struct BinaryGrid {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> values;

    bool operator()(int i, int j) const { return values[static_cast<size_t>(i) * cols + j] != 0; }
    size_t size() const { return values.size(); }
};

enum class GridFormat { Csv, Pgm };

/// Throws std::invalid_argument if the grid is empty, ragged, or holds non-finite values.
void validate(const ScalarGrid& g, const char* where);

/// Infers Csv/Pgm from the file extension (.csv, .pgm); anything else is an error.
GridFormat format_from_path(const std::string& path);

/// Reads a grid from disk. CSV: comma-separated reals, one row per line, no header.
/// PGM: P2 or P5, maxval up to 65535; samples are divided by maxval so values land in [0, 1].
/// Physical metadata is not stored in either format; callers set width_mm/depth_scale afterwards.
ScalarGrid load_grid(const std::string& path, GridFormat format);

/// Writes a grid. CSV preserves doubles exactly; PGM quantizes values (which must
/// lie in [0, 1]) to the requested maxval (255 or 65535, P5 16-bit is big-endian).
void save_grid(const ScalarGrid& g, const std::string& path, GridFormat format,
               int pgm_maxval = 65535);

/// Affine rescale to [0, 1]: min -> 0, max -> 1. A constant grid maps to all zeros.
ScalarGrid normalize(const ScalarGrid& g);

/// Block-mean downsample to target_rows x target_cols. Blocks partition the source as
/// evenly as possible, with remainder pixels assigned to the trailing blocks.
/// width_mm is preserved.
ScalarGrid downsample(const ScalarGrid& g, int target_rows, int target_cols);

}  // namespace topotex
