#include "bfly/identify.hpp"

#include <stdexcept>

#include "bfly/experiments.hpp"
#include "bfly/generators.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"

using namespace bfly;

TEST_SUITE_BEGIN("identify");

TEST_CASE("noiseless planted target is identified exactly") {
    const PlantedInstance inst = planted_instance(Family::RandomButterfly, 8, 0.0, 30, 0);
    const IdentifyResult r = identify(inst.target);
    REQUIRE(r.success);
    CHECK(r.failure.empty());
    CHECK(r.violated_level == -1);
    REQUIRE(r.row_tree.has_value());
    REQUIRE(r.col_tree.has_value());
    REQUIRE(r.p.has_value());
    REQUIRE(r.q.has_value());

    const CanonicalTrees canon = canonical_trees(8);
    CHECK(*r.row_tree == relabel(canon.rows, inst.q));
    CHECK(*r.col_tree == relabel(canon.cols, inst.p));

    const double norm = inst.target.norm();
    CHECK(r.factorization_error / norm < 1e-10);
    const double known = hierarchical_factorize(inst.target, inst.p, inst.q).error;
    CHECK(std::abs(r.factorization_error - known) <= 1e-9 * norm);

    // levels are reported in sweep order with the right cardinalities
    REQUIRE(r.levels.size() == 2);
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
        const int level = static_cast<int>(i) + 1;
        CHECK(r.levels[i].level == level);
        CHECK(static_cast<int>(r.levels[i].partition.row_sets.size()) == 8 >> level);
        CHECK(static_cast<int>(r.levels[i].partition.col_sets.size()) == 1 << level);
    }
    CHECK(r.seconds > 0.0);
}

TEST_CASE("n = 16 noiseless identification") {
    const PlantedInstance inst = planted_instance(Family::RandomButterfly, 16, 0.0, 31, 0);
    const IdentifyResult r = identify(inst.target);
    REQUIRE(r.success);
    CHECK(r.factorization_error / inst.target.norm() < 1e-10);
    CHECK(r.levels.size() == 3);
}

TEST_CASE("noisy identification matches the known-permutation error") {
    const PlantedInstance inst = planted_instance(Family::RandomButterfly, 8, 0.1, 32, 0);
    const IdentifyResult r = identify(inst.target);
    REQUIRE(r.success);
    const double known = hierarchical_factorize(inst.target, inst.p, inst.q).error;
    CHECK(std::abs(r.factorization_error - known) <= 1e-9 * known);
}

TEST_CASE("dense gaussian targets are rejected with a violated level") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto a = testutil::random_complex(8, 8, 1000 + seed);
        const IdentifyResult r = identify(a);
        CHECK_FALSE(r.success);
        CHECK_FALSE(r.failure.empty());
        CHECK(r.violated_level >= 1);
        CHECK(r.violated_level <= 3);
        CHECK_FALSE((r.row_tree.has_value() && r.col_tree.has_value()));
        // the per-level sweep still reports every level
        CHECK(r.levels.size() == 2);
    }
}

TEST_CASE("identification is deterministic") {
    const PlantedInstance inst = planted_instance(Family::RandomButterfly, 8, 0.03, 33, 0);
    const IdentifyResult a = identify(inst.target);
    const IdentifyResult b = identify(inst.target);
    // compare through the serialized report: every field participates
    auto ja = nlohmann::json::parse(identify_report_json(a));
    auto jb = nlohmann::json::parse(identify_report_json(b));
    ja.erase("seconds");
    jb.erase("seconds");
    CHECK(ja == jb);
}

TEST_CASE("error is invariant across permutation-class members") {
    const PlantedInstance inst = planted_instance(Family::RandomButterfly, 8, 0.05, 34, 0);
    const IdentifyResult r = identify(inst.target);
    REQUIRE(r.success);
    double lo = r.factorization_error, hi = r.factorization_error;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Permutation p2 = r.p->compose(random_canonical_col_stabilizer(8, seed));
        const Permutation q2 = r.q->compose(random_canonical_row_stabilizer(8, seed));
        CHECK(relabel(canonical_trees(8).cols, p2) == *r.col_tree);
        CHECK(relabel(canonical_trees(8).rows, q2) == *r.row_tree);
        const double e = hierarchical_factorize(inst.target, p2, q2).error;
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    CHECK((hi - lo) <= 1e-10 * hi);
}

TEST_CASE("report serialization carries the full outcome") {
    const PlantedInstance inst = planted_instance(Family::RandomButterfly, 8, 0.0, 35, 0);
    const IdentifyResult r = identify(inst.target);
    const auto j = nlohmann::json::parse(identify_report_json(r));
    CHECK(j.at("success").get<bool>());
    CHECK(j.at("levels").size() == 2);
    CHECK(j.at("levels")[0].contains("objective"));
    CHECK(j.at("levels")[0].contains("alpha"));
    CHECK(j.at("levels")[0].contains("seed"));
    CHECK(j.contains("factorization_error"));
    CHECK(j.contains("row_tree"));
    CHECK(j.contains("col_tree"));
    CHECK(j.at("p").size() == 8);
    CHECK(j.at("q").size() == 8);
}

TEST_CASE("size preconditions") {
    CHECK_THROWS_AS(identify(testutil::random_complex(2, 2, 1)), std::invalid_argument);
    CHECK_THROWS_AS(identify(testutil::random_complex(4, 6, 1)), std::invalid_argument);
    CHECK_THROWS_AS(identify(testutil::random_complex(6, 6, 1)), std::invalid_argument);
}

TEST_CASE("grid options narrow the sweep") {
    const PlantedInstance inst = planted_instance(Family::RandomButterfly, 8, 0.0, 36, 0);
    IdentifyOptions opt;
    opt.alpha_grid = {1.0};
    opt.seeds = {0, 1};
    const IdentifyResult r = identify(inst.target, opt);
    for (const LevelReport& level : r.levels) {
        CHECK(level.alpha == 1.0);
        CHECK(level.seed <= 1);
    }
}

TEST_SUITE_END();
