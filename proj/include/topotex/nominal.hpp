#pragma once

#include "topotex/distribution.hpp"
#include "topotex/synth.hpp"

namespace topotex {

/// Nominal strike radius in mm: the tool advances v/(60 f) mm per cycle, which
/// spans one imprint diameter scaled by (1 - r), so R = v_x / (120 f). At the
/// reference settings (3000 mm/min, 100 Hz) this reduces to R = (1 - r)/4.
double nominal_radius(const ProcessParams& params);

/// Height above the strike bottom at which two neighboring imprints with
/// center spacing 2R(1-r) connect: R(1 - sqrt((2 - r) r)).
double merge_height(double r, double R);

/// Radius of the horizontal section of a spherical imprint of radius R cut at
/// height T above its bottom: sqrt((2R - T) T). Requires 0 <= T <= 2R.
double sigma_at(double T, double R);

/// Half-length of the lens where two neighboring section circles overlap:
/// a = sqrt(sigma(T)^2 - R^2 (1-r)^2). Requires sigma(T) >= R(1-r), i.e.
/// T at or above the merge height.
double intersection_height_a(double T, double R, double r);

/// Height at which imprints diagonal across a lattice cell meet. Their center
/// distance is 2*sqrt(2)*R(1-r); when that is at most 2R the gap closes at
/// R(1 - sqrt(1 - 2(1-r)^2)), otherwise the gap survives the full depth R.
double diagonal_height(double r, double R);

/// Overlap beyond which the diagonal gap closes: (2 - sqrt(2)) / 2.
double critical_overlap();

/// Physical length of n_p pixels in an image of width W mm and P pixels.
double px_to_mm(double n_p, double W, int P);

struct NominalModel {
    double R = 0.25;   // strike radius, mm (1.0 when working normalized)
    double r_x = 0.0;  // overlap along x
    double r_y = 0.0;  // overlap along y
    int p = 1;         // strikes along x
    int q = 1;         // strikes along y

    static NominalModel square(double r, int n, double R);
    static NominalModel from_params(const ProcessParams& params);

    bool square_lattice() const { return r_x == r_y && p == q; }
    int strike_count() const { return p * q; }
    double merge_height_mm() const { return merge_height(r_x, R); }
    double diagonal_height_mm() const { return diagonal_height(r_x, R); }
};

/// Lifetime distribution of the finite sublevel dim-0 classes of a nominal
/// depth map, in normalized depth units (full strike depth = 1): a point mass
/// at the merge height h = merge_height(r, 1). With unequal overlaps the mass
/// splits p/(p+q) at h(r_x) and q/(p+q) at h(r_y). The single essential class
/// is excluded.
LifetimeDistribution expected_depth_distribution(const NominalModel& m);

/// Lifetime distribution of the dim-1 classes of the distance transform at
/// section height T (mm above the strike bottom), in mm. Below the merge
/// height every strike contributes a loop born at 0 dying at sigma(T). At or
/// above it the necks open at a, so one class in n^2 keeps lifetime sigma and
/// the rest drop to sigma - a. Past the critical overlap, once T clears the
/// diagonal height nothing is left: a point mass at 0.
LifetimeDistribution expected_roundness_distribution(double T, const NominalModel& m);

}  // namespace topotex
