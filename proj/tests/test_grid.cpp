#include "topotex/grid.hpp"

#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

using namespace topotex;

namespace {

ScalarGrid make_grid(int rows, int cols, std::vector<double> values) {
    ScalarGrid g;
    g.rows = rows;
    g.cols = cols;
    g.values = std::move(values);
    return g;
}

ScalarGrid random_grid(int rows, int cols, unsigned seed, double lo = -3.0, double hi = 7.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    ScalarGrid g;
    g.rows = rows;
    g.cols = cols;
    g.values.resize(static_cast<size_t>(rows) * cols);
    for (double& v : g.values) v = dist(rng);
    return g;
}

std::string temp_path(const char* name) {
    const std::string file = std::string("topotex_grid_test_") + name;
    return (std::filesystem::temp_directory_path() / file).string();
}

}  // namespace

TEST_CASE("normalize maps min to 0 and max to 1") {
    const ScalarGrid g = normalize(make_grid(2, 2, {2, 4, 4, 6}));
    CHECK(g(0, 0) == 0.0);
    CHECK(g(0, 1) == 0.5);
    CHECK(g(1, 0) == 0.5);
    CHECK(g(1, 1) == 1.0);
}

TEST_CASE("normalize sends a constant grid to all zeros") {
    const ScalarGrid g = normalize(make_grid(1, 2, {5, 5}));
    CHECK(g(0, 0) == 0.0);
    CHECK(g(0, 1) == 0.0);
}

TEST_CASE("normalize is idempotent") {
    const ScalarGrid once = normalize(random_grid(7, 9, 42));
    const ScalarGrid twice = normalize(once);
    for (size_t k = 0; k < once.size(); ++k) CHECK(twice.values[k] == once.values[k]);
}

TEST_CASE("normalize rejects non-finite values") {
    ScalarGrid g = make_grid(1, 2, {0.0, std::numeric_limits<double>::quiet_NaN()});
    CHECK_THROWS_AS(normalize(g), std::invalid_argument);
}

TEST_CASE("downsample averages blocks") {
    SUBCASE("constant grid stays constant") {
        const ScalarGrid g = downsample(make_grid(4, 4, std::vector<double>(16, 3.25)), 2, 2);
        for (double v : g.values) CHECK(v == 3.25);
    }
    SUBCASE("2x2 to 1x1 is the global mean") {
        const ScalarGrid g = downsample(make_grid(2, 2, {0, 1, 1, 0}), 1, 1);
        CHECK(g(0, 0) == 0.5);
    }
    SUBCASE("uneven split puts the wider blocks last") {
        // 5 columns into 2 blocks: sizes 2 and 3.
        const ScalarGrid g = downsample(make_grid(1, 5, {1, 3, 6, 6, 6}), 1, 2);
        CHECK(g(0, 0) == doctest::Approx(2.0));
        CHECK(g(0, 1) == doctest::Approx(6.0));
    }
    SUBCASE("width_mm is preserved") {
        ScalarGrid src = random_grid(6, 6, 1);
        src.width_mm = 2.5;
        CHECK(downsample(src, 3, 3).width_mm == 2.5);
    }
}

TEST_CASE("downsample composes when block boundaries align") {
    const ScalarGrid src = random_grid(8, 8, 7);
    const ScalarGrid two_step = downsample(downsample(src, 4, 4), 2, 2);
    const ScalarGrid one_shot = downsample(src, 2, 2);
    for (size_t k = 0; k < one_shot.size(); ++k)
        CHECK(two_step.values[k] == doctest::Approx(one_shot.values[k]).epsilon(1e-12));
}

TEST_CASE("downsample rejects bad targets") {
    const ScalarGrid g = random_grid(4, 4, 3);
    CHECK_THROWS_AS(downsample(g, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(downsample(g, 5, 4), std::invalid_argument);
}

TEST_CASE("format_from_path recognizes csv and pgm only") {
    CHECK(format_from_path("a/b/grid.csv") == GridFormat::Csv);
    CHECK(format_from_path("grid.pgm") == GridFormat::Pgm);
    CHECK_THROWS_AS(format_from_path("grid.tiff"), std::invalid_argument);
}

TEST_CASE("csv grids round-trip exactly") {
    const std::string path = temp_path("roundtrip.csv");
    const ScalarGrid src = random_grid(5, 8, 11);
    save_grid(src, path, GridFormat::Csv);
    const ScalarGrid back = load_grid(path, GridFormat::Csv);
    REQUIRE(back.rows == src.rows);
    REQUIRE(back.cols == src.cols);
    for (size_t k = 0; k < src.size(); ++k) CHECK(back.values[k] == src.values[k]);
    std::remove(path.c_str());
}

TEST_CASE("csv parser reads plain tables and rejects ragged rows") {
    const std::string path = temp_path("parse.csv");
    {
        FILE* f = fopen(path.c_str(), "w");
        fputs("0,1\n1,0\n", f);
        fclose(f);
    }
    const ScalarGrid g = load_grid(path, GridFormat::Csv);
    CHECK(g.rows == 2);
    CHECK(g.cols == 2);
    CHECK(g(0, 0) == 0.0);
    CHECK(g(0, 1) == 1.0);
    CHECK(g(1, 0) == 1.0);
    CHECK(g(1, 1) == 0.0);
    {
        FILE* f = fopen(path.c_str(), "w");
        fputs("0,1\n1\n", f);
        fclose(f);
    }
    CHECK_THROWS_AS(load_grid(path, GridFormat::Csv), std::invalid_argument);
    std::remove(path.c_str());
}

TEST_CASE("pgm p2 scales by maxval and writes maxval for 1.0") {
    const std::string path = temp_path("p2.pgm");
    {
        FILE* f = fopen(path.c_str(), "w");
        fputs("P2\n2 1\n255\n255 0\n", f);
        fclose(f);
    }
    const ScalarGrid g = load_grid(path, GridFormat::Pgm);
    CHECK(g(0, 0) == 1.0);
    CHECK(g(0, 1) == 0.0);

    save_grid(make_grid(1, 1, {1.0}), path, GridFormat::Pgm, 255);
    const ScalarGrid back = load_grid(path, GridFormat::Pgm);
    CHECK(back(0, 0) == 1.0);
    std::remove(path.c_str());
}

TEST_CASE("pgm p5 16-bit round-trips quantized grids exactly") {
    const std::string path = temp_path("p5.pgm");
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> level(0, 65535);
    ScalarGrid src = make_grid(6, 4, std::vector<double>(24, 0.0));
    for (double& v : src.values) v = level(rng) / 65535.0;
    save_grid(src, path, GridFormat::Pgm, 65535);
    const ScalarGrid back = load_grid(path, GridFormat::Pgm);
    REQUIRE(back.size() == src.size());
    for (size_t k = 0; k < src.size(); ++k) CHECK(back.values[k] == src.values[k]);
    std::remove(path.c_str());
}

TEST_CASE("pgm writer rejects out-of-range values") {
    CHECK_THROWS_AS(save_grid(make_grid(1, 1, {1.5}), temp_path("bad.pgm"), GridFormat::Pgm),
                    std::invalid_argument);
}
