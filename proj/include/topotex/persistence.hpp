#pragma once

#include <limits>
#include <string>
#include <vector>

#include "topotex/grid.hpp"

namespace topotex {

/// Pixel adjacency used for sublevel components. The complementary dual adjacency
/// (8 <-> 4) applies to the superlevel side so that loops and enclosed regions are
/// consistent on the pixel grid.
enum class Connectivity { Eight, Four };

/// A birth/death event of a homology class. death is +infinity for essential
/// classes. For dim 0, birth equals the grid value at birth_pixel (the component
/// minimum) and death_pixel is the merge pixel. For dim 1, birth_pixel is the
/// pixel whose arrival closes the loop (value = birth) and death_pixel is the
/// maximum of the enclosed region (value = death).
struct PersistencePair {
    int dim = 0;
    double birth = 0.0;
    double death = 0.0;
    int birth_row = 0;
    int birth_col = 0;
    int death_row = -1;
    int death_col = -1;

    bool essential() const { return death == std::numeric_limits<double>::infinity(); }
    double lifetime() const { return death - birth; }
};

struct Diagram {
    std::vector<PersistencePair> pairs;
    int rows = 0;
    int cols = 0;

    int count(int dim, bool include_essential = true) const;
};

/// Dim-0 sublevel persistence by the elder rule. Components are tracked under
/// `conn` adjacency (default 8); value ties are broken by raster order, lower
/// index elder. Exactly one essential pair per connected component of the grid.
/// Zero-lifetime events are dropped.
Diagram sublevel_h0(const ScalarGrid& g, Connectivity conn = Connectivity::Eight);

/// Dim-1 sublevel persistence, computed as dim-0 superlevel persistence of the
/// complement under the dual adjacency (4 when `conn` is 8) with a virtual
/// outside region adjacent to the border, then mapped back: a superlevel
/// component born at its maximum m and absorbed at saddle value s becomes the
/// loop (birth = s, death = m). A full rectangular grid has no essential dim-1
/// classes. Zero-lifetime events are dropped.
Diagram sublevel_h1(const ScalarGrid& g, Connectivity conn = Connectivity::Eight);

/// death - birth for pairs of the given dimension; essential pairs excluded
/// unless requested (their lifetime is +infinity).
std::vector<double> lifetimes(const Diagram& d, int dim, bool include_essential = false);

/// Exact bottleneck distance between the dim-slices of two diagrams under the
/// l-infinity ground metric, with diagonal matching allowed for finite pairs.
/// Essential pairs must match essential pairs (by birth, optimally); mismatched
/// essential counts give +infinity.
double bottleneck(const Diagram& a, const Diagram& b, int dim);

/// CSV with header dim,birth,death,birth_row,birth_col; essential deaths written as inf.
void save_diagram_csv(const Diagram& d, const std::string& path);
Diagram load_diagram_csv(const std::string& path);

}  // namespace topotex
