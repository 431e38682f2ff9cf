#include "doctest.h"

#include <cmath>
#include <random>

#include "ouac/diagnostics.hpp"
#include "ouac/matfun.hpp"

using namespace ouac;

namespace {

RationalVector rv(std::initializer_list<long> xs) {
    RationalVector v;
    for (long x : xs) v.push_back(Rational(x));
    return v;
}

MeasureComponent ray(RationalVector dir) {
    return MeasureComponent{RayGeometry{std::move(dir), Rational(1, 2), Rational(1), false}};
}

} // namespace

TEST_CASE("hyperplane concentration on synthetic batches") {
    Eigen::MatrixXd pts(4, 2);
    pts << 1.0, 0.0, 2.0, 0.0, 3.0, 1e-12, 4.0, 0.5;
    CHECK(hyperplane_concentration(pts, rv({0, 1}), 0.0, 1e-9) == doctest::Approx(0.75));
    CHECK(hyperplane_concentration(pts, rv({0, 1}), 0.5, 1e-9) == doctest::Approx(0.25));
    CHECK(hyperplane_concentration(Eigen::MatrixXd(0, 2), rv({0, 1}), 0.0, 1e-9) == 0.0);
    CHECK_THROWS_AS(hyperplane_concentration(pts, rv({0, 0}), 0.0, 1e-9), ValidationError);
    CHECK_THROWS_AS(hyperplane_concentration(pts, rv({1, 1, 1}), 0.0, 1e-9), ShapeError);
}

TEST_CASE("duplicate rate counts coincident pairs exactly") {
    Eigen::MatrixXd pts(4, 2);
    pts << 1.0, 2.0, 1.0, 2.0, 3.0, 4.0, 1.0, 2.0;
    // three equal rows: 3 coincident pairs out of 6
    CHECK(duplicate_rate(pts) == doctest::Approx(0.5));
    Eigen::MatrixXd distinct(3, 2);
    distinct << 1, 2, 3, 4, 5, 6;
    CHECK(duplicate_rate(distinct) == 0.0);
}

TEST_CASE("two-neighbor dimension estimate calibrates on synthetic sets") {
    RngStream rng = RngStream::from_seed(1234);
    const int n = 20000;
    Eigen::MatrixXd square(n, 2);
    for (int i = 0; i < n; ++i) {
        square(i, 0) = rng.uniform01();
        square(i, 1) = rng.uniform01();
    }
    NnEstimate sq = nn_dimension(square);
    CHECK(sq.lo <= 2.0);
    CHECK(sq.hi >= 2.0);
    CHECK(std::abs(sq.estimate - 2.0) < 0.15);

    Eigen::MatrixXd segment(n, 2);
    for (int i = 0; i < n; ++i) {
        double t = rng.uniform01();
        segment(i, 0) = t;
        segment(i, 1) = 0.3 * t + 0.1;
    }
    NnEstimate seg = nn_dimension(segment);
    CHECK(seg.lo <= 1.0);
    CHECK(seg.hi >= 1.0);

    CHECK_THROWS_AS(nn_dimension(Eigen::MatrixXd(100, 2)), ValidationError);
}

TEST_CASE("rank experiment margins: rotation, diagonal, and the adversarial tuple") {
    RationalMatrix rot{{Rational(0), Rational(1)}, {Rational(-1), Rational(0)}};
    std::vector<RationalVector> b = {rv({1, 0})};

    auto report = van1_experiment(rot, b, 2000, RngStream::from_seed(9));
    CHECK(report.failures == 0);
    CHECK(report.worst_margin > kRankMarginTolerance);

    // rotation by pi sends the column onto its negative: rank drops
    double adversarial = van1_margin(rot, b, {0.25, 0.25 + M_PI});
    CHECK(adversarial <= kRankMarginTolerance);

    RationalMatrix diag(2, 2);
    diag.at(0, 0) = 1;
    diag.at(1, 1) = 2;
    std::vector<RationalVector> bd = {rv({1, 1})};
    auto rd = van1_experiment(diag, bd, 2000, RngStream::from_seed(10));
    CHECK(rd.failures == 0);
    // real spectrum: ordered tuples always keep full rank
    for (double t1 : {0.1, 0.3, 0.7})
        for (double gap : {0.05, 0.2, 0.4})
            CHECK(van1_margin(diag, bd, {t1, t1 + gap}) > kRankMarginTolerance);

    std::vector<RationalVector> not_generating = {rv({1, 0})};
    CHECK_THROWS_AS(van1_experiment(RationalMatrix::identity(2), not_generating, 10,
                                    RngStream::from_seed(11)),
                    ValidationError);
}

TEST_CASE("end-to-end consistency: exhausting two-ray configuration") {
    SimConfig cfg;
    cfg.a = RationalMatrix(2, 2);
    cfg.a.at(0, 0) = 1;
    cfg.a.at(1, 1) = 2;
    cfg.spec = MeasureSpec{2, {ray(rv({1, 0})), ray(rv({0, 1}))}};
    cfg.eps = 1e-3;
    cfg.sample_count = 20000;
    cfg.seed = 5;
    auto verdict = decide_exhaustion(cfg.a, cfg.spec);
    REQUIRE(verdict.abs_continuous == AbsContinuity::Yes);
    SampleBatch batch = sample_batch(cfg);
    DiagnosticsReport report = build_diagnostics(verdict, cfg, batch);
    CHECK(report.duplicate_rate == 0.0);
    CHECK(report.random_functional_max_concentration < 0.01);
    auto consistency = consistency_check(verdict, report, 2);
    CHECK(consistency.flag == Consistency::Consistent);
}

TEST_CASE("end-to-end consistency: trapped single-ray configuration") {
    SimConfig cfg;
    cfg.a = RationalMatrix::identity(2);
    cfg.spec = MeasureSpec{2, {ray(rv({1, 0}))}};
    cfg.eps = 1e-3;
    cfg.sample_count = 20000;
    cfg.seed = 6;
    auto verdict = decide_exhaustion(cfg.a, cfg.spec);
    REQUIRE(verdict.abs_continuous == AbsContinuity::No);
    SampleBatch batch = sample_batch(cfg);
    DiagnosticsReport report = build_diagnostics(verdict, cfg, batch);
    REQUIRE(report.hyperplane.has_value());
    CHECK(report.hyperplane->concentration == 1.0);
    REQUIRE(report.hyperplane->predicted_lower_bound.has_value());
    CHECK(*report.hyperplane->predicted_lower_bound == doctest::Approx(1.0));
    auto consistency = consistency_check(verdict, report, 2);
    CHECK(consistency.flag == Consistency::Consistent);
}

TEST_CASE("end-to-end consistency: singular drift yields no claim") {
    SimConfig cfg;
    cfg.a = RationalMatrix{{Rational(0), Rational(0)}, {Rational(1), Rational(0)}};
    cfg.spec = MeasureSpec{2, {ray(rv({1, 0}))}};
    cfg.eps = 1e-3;
    cfg.sample_count = 5000;
    cfg.seed = 7;
    auto verdict = decide_exhaustion(cfg.a, cfg.spec);
    REQUIRE(verdict.abs_continuous == AbsContinuity::TheoremInapplicableSingularA);
    SampleBatch batch = sample_batch(cfg);
    DiagnosticsReport report = build_diagnostics(verdict, cfg, batch);
    auto consistency = consistency_check(verdict, report, 2);
    CHECK(consistency.flag == Consistency::NoClaim);
    CHECK(consistency.narrative.find("inapplicable") != std::string::npos);
}

TEST_CASE("predicted concentration accounts for atoms escaping the trapped span") {
    // trapped ray along e1 plus an atom off the span: concentration should
    // sit near exp(-mass)
    SimConfig cfg;
    cfg.a = RationalMatrix::identity(2);
    cfg.spec = MeasureSpec{2,
                           {ray(rv({1, 0})),
                            MeasureComponent{AtomSetGeometry{{{rv({0, 1}), Rational(1)}}}}}};
    cfg.eps = 1e-3;
    cfg.sample_count = 50000;
    cfg.seed = 8;
    auto verdict = decide_exhaustion(cfg.a, cfg.spec);
    REQUIRE(verdict.abs_continuous == AbsContinuity::No);
    SampleBatch batch = sample_batch(cfg);
    DiagnosticsReport report = build_diagnostics(verdict, cfg, batch);
    REQUIRE(report.hyperplane.has_value());
    REQUIRE(report.hyperplane->predicted_lower_bound.has_value());
    double p = *report.hyperplane->predicted_lower_bound;
    CHECK(p == doctest::Approx(std::exp(-1.0)));
    double sigma = std::sqrt(p * (1 - p) / cfg.sample_count);
    CHECK(report.hyperplane->concentration >= p - 3 * sigma);
    // atoms flow off the hyperplane, so concentration cannot exceed the
    // no-escaping-jump probability by much either
    CHECK(report.hyperplane->concentration <= p + 4 * sigma);
    auto consistency = consistency_check(verdict, report, 2);
    CHECK(consistency.flag == Consistency::Consistent);
}
