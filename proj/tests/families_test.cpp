#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "test_support.hpp"
#include "tmset/families.hpp"
#include "tmset/specfile.hpp"

using namespace tmset;
using namespace testsup;

TEST_CASE("generation is deterministic") {
    auto a = families::preset("fat-cantor", 16);
    auto b = families::preset("fat-cantor", 16);
    CHECK(emit_spec(a).dump() == emit_spec(b).dump());
    REQUIRE(a.layers().size() == b.layers().size());
    for (std::size_t i = 0; i < a.layers().size(); ++i)
        CHECK(a.layers()[i].fills == b.layers()[i].fills);
}

TEST_CASE("closed-form densities for the presets") {
    auto fat = families::preset("fat-cantor", 40);
    for (int l = 1; l <= 40; ++l)
        CHECK(fat.one_minus_density(l) == fat_cantor_partial(l));

    auto half = families::preset("half-dim", 20);
    for (int l = 1; l <= 20; ++l)
        CHECK(half.one_minus_density(l) ==
              make_rat(1, pow_ui(2, static_cast<unsigned>(l))));

    auto ruler = families::preset("ruler-alt", 20);
    for (int l = 1; l <= 20; ++l) {
        CHECK(ruler.hole_count(l) == 1);
        CHECK(ruler.one_minus_density(l) ==
              make_rat(1, pow_ui(2, static_cast<unsigned>(l))));
    }
}

TEST_CASE("rule construction guards") {
    CHECK_THROWS_AS(families::preset("no-such-family", 8), Error);
    CHECK_THROWS_AS(RuledFamily::frac_dim(4, {}), Error);
    CHECK_THROWS_AS(RuledFamily::frac_dim(4, {0, 1, 2, 3}), Error);
    CHECK_THROWS_AS(RuledFamily::frac_dim(4, {7}), Error);
    CHECK_THROWS_AS(families::generate(RuledFamily::fat_cantor(), 62), Error);
}

TEST_CASE("frac-dim generalizes half-dim") {
    auto a = families::generate(RuledFamily::frac_dim(4, {1, 2}), 10);
    auto b = families::preset("half-dim", 10);
    for (int l = 1; l <= 10; ++l)
        CHECK(a.one_minus_density(l) == b.one_minus_density(l));
}

TEST_CASE("validate passes on ruler-alt") {
    auto ruler = families::preset("ruler-alt", 12);
    auto rep = families::validate(ruler, 12, -100, 100);
    CHECK(rep.ok());
    CHECK(rep.refinement == families::ValidationReport::Status::pass);
    CHECK(rep.coverage == families::ValidationReport::Status::pass);
    CHECK(rep.uncovered.empty());
    CHECK(rep.nonperiodicity == families::ValidationReport::Status::pass);
    for (const auto& row : rep.accidental)
        CHECK(row.status != families::ValidationReport::Status::fail);
    // Deep levels cannot be certified essential yet; none may be refuted.
    for (const auto& row : rep.essential) {
        CAPTURE(row.level);
        CHECK(row.result.verdict != EssentialVerdict::not_essential);
        if (row.level <= 10)
            CHECK(row.result.verdict == EssentialVerdict::essential);
    }
}

TEST_CASE("validate coverage is honest about shallow depths") {
    // The alternating hole chain of ruler-alt sits at 85 mod 256 after
    // eight levels, so depth 8 leaves 85 undetermined inside [-100, 100];
    // one more level fills it.
    auto ruler = families::preset("ruler-alt", 12);
    auto rep8 = families::validate(ruler, 8, -100, 100);
    CHECK(rep8.coverage == families::ValidationReport::Status::fail);
    CHECK(rep8.uncovered == std::vector<std::int64_t>{85});
    auto rep9 = families::validate(ruler, 9, -100, 100);
    CHECK(rep9.coverage == families::ValidationReport::Status::pass);
}

TEST_CASE("validate flags the planted periodic spec") {
    auto planted = families::planted_periodic();
    auto rep = families::validate(planted, 2, -20, 20);
    CHECK(!rep.ok());

    REQUIRE(!rep.accidental.empty());
    CHECK(rep.accidental[0].level == 1);
    CHECK(rep.accidental[0].status == families::ValidationReport::Status::fail);
    REQUIRE(rep.accidental[0].witness.has_value());
    CHECK(*rep.accidental[0].witness == 1);  // residue 1 mod 2

    CHECK(rep.nonperiodicity == families::ValidationReport::Status::fail);
    CHECK(rep.first_holeless_level == 2);

    REQUIRE(rep.essential.size() == 2);
    CHECK(rep.essential[1].result.verdict == EssentialVerdict::not_essential);
    CHECK(rep.essential[1].result.witness_prime == 2);

    CHECK(rep.coverage == families::ValidationReport::Status::pass);
}

TEST_CASE("validate flags the coverage-breaking rule: -1 is never filled") {
    auto bad = families::preset("bad-coverage", 20);
    auto rep = families::validate(bad, 20, -100, 100);
    CHECK(!rep.ok());
    CHECK(rep.coverage == families::ValidationReport::Status::fail);
    CHECK(rep.uncovered == std::vector<std::int64_t>{-1});
}

TEST_CASE("validate flags a frac-dim rule whose holes contain digit 0") {
    auto rule = RuledFamily::frac_dim(4, {0, 1});
    CHECK(rule.coverage_from() == 0);  // exclusion policy not satisfiable
    auto spec = families::generate(rule, 16);
    auto rep = families::validate(spec, 16, -10, 10);
    CHECK(rep.coverage == families::ValidationReport::Status::fail);
    // Nonnegative integers have eventually-zero digits, so 0 stays a hole.
    CHECK(std::find(rep.uncovered.begin(), rep.uncovered.end(), 0) !=
          rep.uncovered.end());
}

TEST_CASE("one-symbol planted spec: accidental periodicity is unverifiable") {
    auto planted = families::planted_one_symbol(8);
    auto rep = families::validate(planted, 8, 0, 0);
    for (const auto& row : rep.accidental) {
        if (row.level < 8)
            CHECK(row.status ==
                  families::ValidationReport::Status::unverifiable);
    }
}

TEST_CASE("presets determine every integer in a window at modest depth") {
    for (const char* name : {"ruler-alt", "fat-cantor", "half-dim"}) {
        auto spec = families::preset(name, 20);
        auto rep = families::validate(spec, 20, -500, 500);
        CAPTURE(name);
        CHECK(rep.coverage == families::ValidationReport::Status::pass);
    }
}
