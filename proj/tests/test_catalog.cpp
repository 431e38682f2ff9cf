#include "doctest.h"

#include <random>

#include "ouac/catalog.hpp"
#include "ouac/exhaustion.hpp"
#include "model_helpers.hpp"

using namespace ouac;

namespace {

RationalVector rv(std::initializer_list<long> xs) {
    RationalVector v;
    for (long x : xs) v.push_back(Rational(x));
    return v;
}

} // namespace

TEST_CASE("catalog structure: labels, cyclic indices, nonsingular drifts") {
    auto cases2 = catalog_cases(2);
    REQUIRE(cases2.size() == 4);
    CHECK(cases2[0].label == "a");
    CHECK(cases2[3].label == "d");
    for (const auto& c : cases2) {
        CHECK_FALSE(determinant(c.drift).is_zero());
        CHECK(cyclic_index(c.drift) == c.kappa);
    }
    auto cases3 = catalog_cases(3);
    REQUIRE(cases3.size() == 4);
    CHECK(cases3[0].label == "f");
    CHECK(cases3[3].label == "i");
    for (const auto& c : cases3) {
        CHECK_FALSE(determinant(c.drift).is_zero());
        CHECK(cyclic_index(c.drift) == c.kappa);
    }
    CHECK_THROWS_AS(catalog_cases(4), ValidationError);
    CHECK(catalog_battery(2).size() == 12);
    CHECK(catalog_battery(3).size() == 8);
}

TEST_CASE("catalog fidelity: hand-coded infinity sets match the decision in dimension 2") {
    size_t matches = 0;
    for (const auto& cat : catalog_cases(2)) {
        for (const auto& spec : catalog_battery(2)) {
            bool want = cat.expected_ac(spec);
            auto v = decide_exhaustion(cat.drift, spec);
            REQUIRE(v.abs_continuous != AbsContinuity::TheoremInapplicableSingularA);
            bool got = v.abs_continuous == AbsContinuity::Yes;
            INFO("case ", cat.label, ", spec #", matches % 12);
            CHECK(want == got);
            ++matches;
        }
    }
    CHECK(matches == 48);
}

TEST_CASE("catalog fidelity: hand-coded infinity sets match the decision in dimension 3") {
    size_t matches = 0;
    for (const auto& cat : catalog_cases(3)) {
        for (const auto& spec : catalog_battery(3)) {
            bool want = cat.expected_ac(spec);
            auto v = decide_exhaustion(cat.drift, spec);
            bool got = v.abs_continuous == AbsContinuity::Yes;
            INFO("case ", cat.label);
            CHECK(want == got);
            ++matches;
        }
    }
    CHECK(matches == 32);
}

TEST_CASE("distinct-diagonal case: the eight-branch family equals the axis-hit criterion") {
    // under a distinct diagonal drift, exhaustion needs every coordinate to
    // be touched by some infinite-activity generator
    auto axis_hit = [](const MeasureSpec& spec) {
        for (size_t coord = 0; coord < 3; ++coord) {
            bool hit = false;
            for (const auto& c : spec.components) {
                if (!c.infinite_activity()) continue;
                for (const auto& g : c.generators()) hit = hit || !g[coord].is_zero();
            }
            if (!hit) return false;
        }
        return true;
    };
    const auto cat = catalog_cases(3)[3];
    REQUIRE(cat.label == "i");
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 400; ++trial) {
        MeasureSpec spec = model::random_spec(rng, 3, 4);
        CHECK(cat.expected_ac(spec) == axis_hit(spec));
    }
    for (const auto& spec : catalog_battery(3)) CHECK(cat.expected_ac(spec) == axis_hit(spec));
}

TEST_CASE("catalog spot checks against the worked examples") {
    auto cases2 = catalog_cases(2);
    MeasureSpec one_ray{2, {MeasureComponent{RayGeometry{rv({1, 0}), Rational(1, 2),
                                                         Rational(1), false}}}};
    // rotation-like drift: any infinite measure suffices
    CHECK(cases2[0].expected_ac(one_ray));
    // scalar drift traps a single line
    CHECK_FALSE(cases2[1].expected_ac(one_ray));
    // Jordan cell traps exactly the eigenline
    CHECK_FALSE(cases2[2].expected_ac(one_ray));
    MeasureSpec off_line{2, {MeasureComponent{RayGeometry{rv({0, 1}), Rational(1, 2),
                                                          Rational(1), false}}}};
    CHECK(cases2[2].expected_ac(off_line));
    // diagonal drift accepts the two-axis garland
    MeasureSpec both_axes{2,
                          {MeasureComponent{RayGeometry{rv({1, 0}), Rational(1, 2), Rational(1),
                                                        false}},
                           MeasureComponent{RayGeometry{rv({0, 1}), Rational(1, 2), Rational(1),
                                                        false}}}};
    CHECK(cases2[3].expected_ac(both_axes));
    CHECK_FALSE(cases2[3].expected_ac(one_ray));

    // dimension 3, case (g): rays on the two exceptional planes jointly work
    auto cases3 = catalog_cases(3);
    MeasureSpec two_rays{3,
                         {MeasureComponent{RayGeometry{rv({1, 0, 0}), Rational(1, 2),
                                                       Rational(1), false}},
                          MeasureComponent{RayGeometry{rv({0, 0, 1}), Rational(1, 2),
                                                       Rational(1), false}}}};
    CHECK(cases3[1].expected_ac(two_rays));
    MeasureSpec x_only{3, {MeasureComponent{RayGeometry{rv({1, 0, 0}), Rational(1, 2),
                                                        Rational(1), false}}}};
    CHECK_FALSE(cases3[1].expected_ac(x_only));
}

TEST_CASE("random drift families agree with their catalog evaluator") {
    // random nonsingular representatives of each class keep the same verdict
    std::mt19937_64 rng(654);
    std::uniform_int_distribution<long> entry(1, 3);

    for (int trial = 0; trial < 40; ++trial) {
        long alpha = entry(rng), beta = entry(rng) + 3;
        // case (b): scalar drift
        RationalMatrix scalar = RationalMatrix::identity(2) * Rational(alpha);
        // case (c): Jordan cell at alpha
        RationalMatrix jordan{{Rational(alpha), Rational(1)}, {Rational(0), Rational(alpha)}};
        // case (d): distinct diagonal
        RationalMatrix diag(2, 2);
        diag.at(0, 0) = alpha;
        diag.at(1, 1) = beta;
        auto cases2 = catalog_cases(2);
        MeasureSpec spec = model::random_spec(rng, 2, 3);
        CHECK((decide_exhaustion(scalar, spec).abs_continuous == AbsContinuity::Yes) ==
              cases2[1].expected_ac(spec));
        CHECK((decide_exhaustion(jordan, spec).abs_continuous == AbsContinuity::Yes) ==
              cases2[2].expected_ac(spec));
        CHECK((decide_exhaustion(diag, spec).abs_continuous == AbsContinuity::Yes) ==
              cases2[3].expected_ac(spec));
    }
}
