#include "topotex/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/oracles.hpp"
#include "topotex/dtx.hpp"
#include "topotex/synth.hpp"

using namespace topotex;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScalarGrid make_grid(int rows, int cols, std::vector<double> values) {
    ScalarGrid g;
    g.rows = rows;
    g.cols = cols;
    g.width_mm = cols;
    g.values = std::move(values);
    return g;
}

ScalarGrid shuffled_distinct_grid(int n, std::mt19937& rng) {
    std::vector<double> v(static_cast<size_t>(n) * n);
    for (size_t k = 0; k < v.size(); ++k) v[k] = static_cast<double>(k) / v.size();
    std::shuffle(v.begin(), v.end(), rng);
    return make_grid(n, n, std::move(v));
}

int count_strict_minima(const ScalarGrid& g) {
    int count = 0;
    for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j) {
            bool strict = true;
            for (int di = -1; di <= 1 && strict; ++di)
                for (int dj = -1; dj <= 1 && strict; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const int ni = i + di, nj = j + dj;
                    if (ni < 0 || nj < 0 || ni >= g.rows || nj >= g.cols) continue;
                    if (g(ni, nj) <= g(i, j)) strict = false;
                }
            if (strict) ++count;
        }
    return count;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

Diagram finite_only(std::vector<PersistencePair> pairs) {
    Diagram d;
    d.pairs = std::move(pairs);
    return d;
}

PersistencePair pair(int dim, double birth, double death) {
    PersistencePair p;
    p.dim = dim;
    p.birth = birth;
    p.death = death;
    return p;
}

}  // namespace

TEST_CASE("sublevel_h0 pairs each minimum with the saddle that absorbs it") {
    const ScalarGrid g = make_grid(1, 5, {0.0, 1.0, 0.2, 1.0, 0.1});
    const Diagram d = sublevel_h0(g);
    REQUIRE(d.pairs.size() == 3);
    std::vector<std::pair<double, double>> finite;
    int essentials = 0;
    for (const auto& p : d.pairs) {
        CHECK(p.dim == 0);
        if (p.essential()) {
            ++essentials;
            CHECK(p.birth == 0.0);
        } else {
            finite.emplace_back(p.birth, p.death);
        }
    }
    CHECK(essentials == 1);
    std::sort(finite.begin(), finite.end());
    REQUIRE(finite.size() == 2);
    CHECK(finite[0] == std::pair<double, double>(0.1, 1.0));
    CHECK(finite[1] == std::pair<double, double>(0.2, 1.0));
}

TEST_CASE("a constant grid has one essential component and no loops") {
    const ScalarGrid g = make_grid(4, 4, std::vector<double>(16, 0.7));
    const Diagram h0 = sublevel_h0(g);
    REQUIRE(h0.pairs.size() == 1);
    CHECK(h0.pairs[0].essential());
    CHECK(h0.pairs[0].birth == 0.7);
    CHECK(sublevel_h1(g).pairs.empty());
}

TEST_CASE("a ring of low pixels is one loop closed by the enclosed maximum") {
    ScalarGrid g = make_grid(5, 5, std::vector<double>(25, 1.0));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != 2 || j != 2) g(i, j) = 0.0;
    const Diagram h1 = sublevel_h1(g);
    REQUIRE(h1.pairs.size() == 1);
    CHECK(h1.pairs[0].dim == 1);
    CHECK(h1.pairs[0].birth == 0.0);
    CHECK(h1.pairs[0].death == 1.0);
    CHECK(sublevel_h0(g).pairs.size() == 1);
}

TEST_CASE("checkerboard loops follow the 8-connected foreground convention") {
    ScalarGrid g = make_grid(4, 4, std::vector<double>(16, 0.0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if ((i + j) % 2 == 1) g(i, j) = 1.0;
    const Diagram h1 = sublevel_h1(g);
    REQUIRE(h1.pairs.size() == 2);
    for (const auto& p : h1.pairs) {
        CHECK(p.birth == 0.0);
        CHECK(p.death == 1.0);
    }
}

TEST_CASE("distance transform of a disk yields one loop born 0 dying at the radius") {
    GeneralizedConic c;
    c.foci_mm = {{50.5, 50.5}};
    c.weights = {1.0};
    c.p = 2.0;
    const ScalarGrid cone = conic_field(c, 101, 101.0);
    const ScalarGrid dt = distance_transform(binarize(cone, 20.0));
    const Diagram h1 = sublevel_h1(dt);
    REQUIRE(h1.pairs.size() == 1);
    CHECK(h1.pairs[0].birth == 0.0);
    CHECK(h1.pairs[0].death == 20.0);
}

TEST_CASE("tangent strikes give unit lifetimes and exact bottoms") {
    const ScalarGrid g = spherical_grid(ProcessParams::from_overlap(0.0, 3, 2.5, 500), 249.0);
    const Diagram d = sublevel_h0(g);
    CHECK(d.count(0) == 9);
    int essentials = 0, finite = 0;
    for (const auto& p : d.pairs) {
        CHECK(p.birth == 0.0);
        if (p.essential()) {
            ++essentials;
        } else {
            ++finite;
            CHECK(p.death == 1.0);
        }
    }
    CHECK(essentials == 1);
    CHECK(finite == 8);
}

TEST_CASE("lifetimes filters by dimension and essential flag") {
    Diagram d;
    d.pairs = {pair(0, 0.0, 2.0), pair(0, 1.0, kInf), pair(1, 3.0, 5.0)};
    CHECK(lifetimes(d, 0) == std::vector<double>{2.0});
    const std::vector<double> with_ess = lifetimes(d, 0, true);
    REQUIRE(with_ess.size() == 2);
    CHECK(with_ess[0] == 2.0);
    CHECK(std::isinf(with_ess[1]));
    CHECK(lifetimes(d, 1) == std::vector<double>{2.0});
    CHECK(lifetimes(d, 2).empty());
}

TEST_CASE("bottleneck distance on hand-built diagrams") {
    SUBCASE("identical diagrams are at distance 0") {
        const Diagram a = finite_only({pair(0, 0.0, 2.0), pair(0, 1.0, 3.0)});
        CHECK(bottleneck(a, a, 0) == 0.0);
    }
    SUBCASE("long-lived pairs must match each other") {
        const Diagram a = finite_only({pair(0, 0.0, 10.0)});
        const Diagram b = finite_only({pair(0, 1.0, 10.0)});
        CHECK(bottleneck(a, b, 0) == doctest::Approx(1.0));
    }
    SUBCASE("distant short pairs both retire to the diagonal") {
        const Diagram a = finite_only({pair(0, 0.0, 1.0)});
        const Diagram b = finite_only({pair(0, 4.0, 5.0)});
        CHECK(bottleneck(a, b, 0) == doctest::Approx(0.5));
    }
    SUBCASE("an unmatched pair costs half its lifetime") {
        const Diagram a = finite_only({pair(1, 0.0, 2.0)});
        const Diagram b = finite_only({});
        CHECK(bottleneck(a, b, 1) == doctest::Approx(1.0));
    }
    SUBCASE("essential classes match by birth") {
        const Diagram a = finite_only({pair(0, 0.0, kInf), pair(0, 5.0, kInf)});
        const Diagram b = finite_only({pair(0, 0.7, kInf), pair(0, 4.0, kInf)});
        CHECK(bottleneck(a, b, 0) == doctest::Approx(1.0));
    }
    SUBCASE("mismatched essential counts are infinitely far apart") {
        const Diagram a = finite_only({pair(0, 0.0, kInf)});
        const Diagram b = finite_only({});
        CHECK(std::isinf(bottleneck(a, b, 0)));
    }
}

TEST_CASE("union-find engine agrees with boundary-matrix reduction on random grids") {
    std::mt19937 rng(404);
    for (int trial = 0; trial < 20; ++trial) {
        const ScalarGrid g = shuffled_distinct_grid(5, rng);
        const auto oracle = testing::boundary_matrix_diagram(g);
        CHECK(testing::same_points(testing::diagram_points(sublevel_h0(g), 0),
                                   testing::oracle_points(oracle, 0)));
        CHECK(testing::same_points(testing::diagram_points(sublevel_h1(g), 1),
                                   testing::oracle_points(oracle, 1)));
    }
}

TEST_CASE("every strict local minimum births exactly one component") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const ScalarGrid g = shuffled_distinct_grid(8, rng);
        CHECK(sublevel_h0(g).count(0) == count_strict_minima(g));
    }
}

TEST_CASE("diagrams move no faster than the perturbation") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        ScalarGrid g = make_grid(12, 12, {});
        g.values.resize(144);
        for (double& v : g.values) v = uni(rng);
        ScalarGrid h = g;
        double dinf = 0.0;
        std::uniform_real_distribution<double> eps(-0.08, 0.08);
        for (double& v : h.values) {
            const double e = eps(rng);
            v += e;
            dinf = std::max(dinf, std::abs(e));
        }
        CHECK(bottleneck(sublevel_h0(g), sublevel_h0(h), 0) <= dinf + 1e-12);
        CHECK(bottleneck(sublevel_h1(g), sublevel_h1(h), 1) <= dinf + 1e-12);
    }
}

TEST_CASE("diagram CSV round-trips finite and essential pairs") {
    const ScalarGrid g = make_grid(1, 5, {0.0, 1.0, 0.2, 1.0, 0.1});
    Diagram d = sublevel_h0(g);
    d.pairs.push_back(pair(1, 0.25, 0.75));

    const std::string path = temp_path("topotex_diagram_roundtrip.csv");
    save_diagram_csv(d, path);
    const Diagram back = load_diagram_csv(path);
    std::remove(path.c_str());

    REQUIRE(back.pairs.size() == d.pairs.size());
    for (size_t k = 0; k < d.pairs.size(); ++k) {
        CHECK(back.pairs[k].dim == d.pairs[k].dim);
        CHECK(back.pairs[k].birth == d.pairs[k].birth);
        CHECK(back.pairs[k].death == d.pairs[k].death);
        CHECK(back.pairs[k].birth_row == d.pairs[k].birth_row);
        CHECK(back.pairs[k].birth_col == d.pairs[k].birth_col);
    }
}
