#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "tmset/dimension.hpp"
#include "tmset/families.hpp"
#include "tmset/window.hpp"

using namespace tmset;
using namespace testsup;

TEST_CASE("ambient dimension with the canonical metric") {
    Scale s2(std::vector<std::uint64_t>(12, 2));
    auto rep = dim_ambient(s2, Metric::canonical(), 11);
    const auto& row9 = rep.rows[8];
    REQUIRE(row9.level == 9);
    REQUIRE(row9.ambient_exact.has_value());
    CHECK(*row9.ambient_exact == make_rat(9, 10));
    CHECK(row9.raw_ratio.to_double() == doctest::Approx(0.9).epsilon(1e-12));

    Scale s4(std::vector<std::uint64_t>(12, 4));
    auto rep4 = dim_ambient(s4, Metric::canonical(), 11);
    REQUIRE(rep4.rows[8].ambient_exact.has_value());
    CHECK(*rep4.rows[8].ambient_exact == make_rat(9, 10));
}

TEST_CASE("ambient dimension with d_l = 1/p_l is identically 1") {
    Scale s(std::vector<std::uint64_t>{2, 3, 4, 5, 2, 2});
    std::vector<Rat> d;
    for (int l = 1; l <= s.depth(); ++l) d.push_back(make_rat(1, s.p(l)));
    auto rep = dim_ambient(s, Metric::custom(d), 6);
    for (const auto& row : rep.rows) {
        REQUIRE(row.ambient_exact.has_value());
        CHECK(*row.ambient_exact == Rat(1));
    }
}

TEST_CASE("boundary dimension: half-dim slope term is exactly 1/2") {
    auto half = families::preset("half-dim", 31);
    auto rep = dim_boundary(half, Metric::canonical(), 30);
    CHECK(!rep.hypothesis_violated);
    for (const auto& row : rep.rows) {
        CAPTURE(row.level);
        REQUIRE(row.slope_exact.has_value());
        CHECK(*row.slope_exact == make_rat(1, 2));
        REQUIRE(row.raw_exact.has_value());
        CHECK(*row.raw_exact ==
              make_rat(row.level, 2 * (row.level + 1)));
    }
    // Raw ratio at level 10 is 10/22.
    CHECK(*rep.rows[9].raw_exact == make_rat(10, 22));
}

TEST_CASE("boundary dimension: ruler-alt collapses to zero") {
    auto ruler = families::preset("ruler-alt", 31);
    auto rep = dim_boundary(ruler, Metric::canonical(), 30);
    for (const auto& row : rep.rows) {
        REQUIRE(row.slope_exact.has_value());
        CHECK(*row.slope_exact == Rat(0));
        REQUIRE(row.raw_exact.has_value());
        CHECK(*row.raw_exact == Rat(0));
        CHECK(row.cover_count == 1);
    }
    CHECK(rep.raw_tail.sup.to_double() == doctest::Approx(0.0));
    CHECK(rep.raw_tail.inf.to_double() == doctest::Approx(0.0));
}

TEST_CASE("per-level factorization identity raw = slope * ambient") {
    for (const char* name : {"ruler-alt", "fat-cantor", "half-dim"}) {
        auto spec = families::preset(name, 21);
        auto rep = dim_boundary(spec, Metric::canonical(), 20);
        for (const auto& row : rep.rows) {
            const Real diff =
                (row.raw_ratio - row.slope_term * row.ambient_ratio).abs();
            CHECK(diff.to_double() < 1e-12);
        }
    }
}

TEST_CASE("cover counts match the window level data") {
    for (const char* name : {"ruler-alt", "fat-cantor", "half-dim"}) {
        auto spec = families::preset(name, 13);
        auto rep = dim_boundary(spec, Metric::canonical(), 12);
        for (const auto& row : rep.rows) {
            auto w = window_level(spec, row.level, SetDetail::counts_only);
            CHECK(row.cover_count == w.undetermined);
        }
    }
}

TEST_CASE("tail windows behave like limsup/liminf proxies") {
    auto half = families::preset("half-dim", 25);
    Real prev_sup, prev_inf;
    for (int start = 1; start <= 24; ++start) {
        auto rep = dim_boundary(half, Metric::canonical(), 24, start);
        CHECK(rep.tail_start == start);
        if (start > 1) {
            CHECK(rep.raw_tail.sup <= prev_sup);
            CHECK(rep.raw_tail.inf >= prev_inf);
        }
        prev_sup = rep.raw_tail.sup;
        prev_inf = rep.raw_tail.inf;
    }
}

TEST_CASE("irregular spec flags the regularity hypothesis") {
    auto fat = families::preset("fat-cantor", 13);
    auto rep = dim_boundary(fat, Metric::canonical(), 12);
    CHECK(rep.hypothesis_violated);
    CHECK(rep.regularity == RegularityVerdict::irregular);
}

TEST_CASE("errors: invalid metric and periodic specs") {
    auto half = families::preset("half-dim", 8);
    // Positive, strictly decreasing, but not < 1: rejected at use.
    Metric bad = Metric::custom({Rat(3), Rat(2), make_rat(1, 2)});
    CHECK_THROWS_AS(dim_boundary(half, bad, 2), Error);

    auto planted = families::planted_periodic();
    CHECK_THROWS_AS(dim_boundary(planted, Metric::canonical(), 2), Error);
}

TEST_CASE("50-digit decimals come from the high-precision path") {
    auto half = families::preset("half-dim", 11);
    auto rep = dim_boundary(half, Metric::canonical(), 10);
    const std::string dec = rep.rows[9].raw_ratio.str();
    // 10/22 = 0.4545...; the rendering carries ~50 significant digits.
    CHECK(dec.substr(0, 6) == "0.4545");
    CHECK(dec.size() >= 45);
}
