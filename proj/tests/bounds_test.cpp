#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "qfc/bounds.hpp"
#include "qfc/errors.hpp"

using namespace qfc;

TEST_SUITE_BEGIN("bounds");

TEST_CASE("volume evaluates the weighted sphere count exactly") {
    CHECK(volume(State({0, 9}), 4, 3) == 81);
    CHECK(volume(State({1}), 0, 3) == 1);
    CHECK(volume(State({1, 1, 1}), 3, 3) == 27);
    CHECK(volume(State({6, 3}), 3, 3) == 27);
}

TEST_CASE("volume bound") {
    CHECK(volume_bound_holds(State({0, 9}), 4, 3));
    // satisfies the bound yet is losing: the bound is necessary, not sufficient
    CHECK(volume_bound_holds(State({1, 1, 1}), 3, 3));
    CHECK_FALSE(volume_bound_holds(State({0, 10}), 4, 3));
}

TEST_CASE("conservation of volume across reductions") {
    CHECK(conservation_check(State({0, 9}), Partition{{{0, 3}, {0, 3}, {0, 3}}}, 4));
    CHECK(conservation_check(State({4, 1}), Partition{{{0, 1}, {2, 0}, {2, 0}}}, 2));
    CHECK(conservation_check(State({4, 1}), Partition{{{4, 1}, {0, 0}, {0, 0}}}, 2));
}

TEST_CASE("translated volume bounds and the minimum block length") {
    CHECK(translated_volume_bounds(9, 1, 3, 4));
    CHECK_FALSE(translated_volume_bounds(9, 1, 3, 3));
    CHECK(translated_volume_bounds(1, 0, 3, 0));
    CHECK(min_blocklength_converse(9, 1, 3) == 4);
    CHECK(min_blocklength_converse(1, 0, 3) == 0);
    CHECK(min_blocklength_converse(27, 0, 3) == 3);
    CHECK(min_blocklength_converse(24, 1, 3) == 6);
    // e = 0 reduces to the ceiling log
    for (int m : {1, 2, 3, 9, 10, 26, 27, 28, 80, 81, 82})
        CHECK(min_blocklength_converse(m, 0, 3) == (m == 1 ? 0 : floor_log(m - 1, 3) + 1));
}

TEST_CASE("q-ary entropy") {
    CHECK(hq(0.0, 3) == 0.0);
    for (int q = 2; q <= 16; ++q)
        CHECK(std::abs(hq(static_cast<double>(q - 1) / q, q) - 1.0) < 1e-12);
    // value pinned by an independent high-precision evaluation
    CHECK(std::abs(hq(1.0 / 3.0, 3) - 0.7896900821428475) < 1e-12);
    CHECK_THROWS_AS(hq(-0.1, 3), InvalidArgument);
    CHECK_THROWS_AS(hq(1.1, 3), InvalidArgument);
}

TEST_CASE("curve endpoints and tangency") {
    for (int q : {2, 3, 5, 16}) {
        CHECK(curve_construction(0.5, q) == 0.0);
        CHECK(curve_volume(0.0, q) == 1.0);
    }
    for (int q = 3; q <= 16; ++q) {
        const double f = 1.0 / q;
        CHECK(std::abs(curve_construction(f, q) - curve_volume(f, q)) < 1e-9);
        // finite-difference slopes agree at the tangency point
        const double h = 1e-4;
        const double slope_construction = (curve_construction(f + h, q) - curve_construction(f - h, q)) / (2 * h);
        const double slope_volume = (curve_volume(f + h, q) - curve_volume(f - h, q)) / (2 * h);
        CHECK(std::abs(slope_construction - slope_volume) < 1e-6);
    }
}

TEST_CASE("translation curve region and value") {
    CHECK_THROWS_AS(translation_region_start(2), UnsupportedAlphabet);
    CHECK_THROWS_AS(curve_translation(0.4, 2), UnsupportedAlphabet);
    const double f0 = translation_region_start(3);
    CHECK(f0 == doctest::Approx(2.0 / (9.0 + 3.0 * std::sqrt(5.0))).epsilon(1e-12));
    CHECK_FALSE(curve_translation(f0 - 1e-9, 3).has_value());
    CHECK(curve_translation(f0, 3).has_value());
    CHECK(curve_translation(0.5, 3).has_value());
    CHECK_FALSE(curve_translation(0.5 + 1e-9, 3).has_value());
    CHECK(*curve_translation(0.5, 3) == 0.0);
    // at the region start the translated bound meets the volume bound
    CHECK(*curve_translation(f0, 3) == doctest::Approx(curve_volume(f0, 3)).epsilon(1e-12));
    // never above the volume bound anywhere in the region
    for (int j = 0; j <= 1000; ++j) {
        const double f = f0 + (0.5 - f0) * j / 1000.0;
        auto r = curve_translation(f, 3);
        REQUIRE(r.has_value());
        CHECK(*r <= curve_volume(f, 3) + 1e-15);
        CHECK(*r >= 0.0);
    }
    // strictly better than the volume bound close to half
    CHECK(*curve_translation(0.48, 3) < curve_volume(0.48, 3) - 1e-3);
}

TEST_CASE("rate region emission and CSV shape") {
    const auto points = emit_rate_region(3, {0.0, 1.0 / 3.0, 0.5});
    REQUIRE(points.size() == 3);
    CHECK(*points[0].r_volume == 1.0);
    CHECK(*points[0].r_construction == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
    CHECK_FALSE(points[0].r_translation.has_value());
    CHECK(*points[1].r_construction == doctest::Approx(*points[1].r_volume).epsilon(1e-9));
    CHECK(*points[2].r_construction == 0.0);

    std::ostringstream csv;
    write_rate_region_csv(csv, points);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "f,R_volume,R_translation,R_construction");
    std::getline(lines, line);
    CHECK(line.substr(0, 2) == "0,");
    CHECK(line.find(",,") != std::string::npos);  // absent translation renders empty

    // q = 2 never carries a translation column
    const auto q2 = emit_rate_region(2, {0.0, 0.25, 0.5});
    for (const auto& pt : q2) CHECK_FALSE(pt.r_translation.has_value());
}

TEST_CASE("volume linearity and monotonicity in n") {
    std::mt19937_64 gen(7);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
    for (int iter = 0; iter < 500; ++iter) {
        const int q = pick(2, 5);
        const int dim = pick(1, 4);
        std::vector<Int> a(static_cast<size_t>(dim)), b(static_cast<size_t>(dim)), sum(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            a[static_cast<size_t>(i)] = pick(0, 9);
            b[static_cast<size_t>(i)] = pick(0, 9);
            sum[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] + b[static_cast<size_t>(i)];
        }
        const int n = pick(0, 9);
        CHECK(volume(State(sum), n, q) == volume(State(a), n, q) + volume(State(b), n, q));
        CHECK(volume(State(a), n, q) <= volume(State(a), n + 1, q));
    }
}

TEST_SUITE_END();
