#include "doctest.h"

#include <cmath>
#include <random>

#include "ouac/matfun.hpp"
#include "ouac/structure.hpp"
#include "oracle_helpers.hpp"

using namespace ouac;

TEST_CASE("expm fixed cases") {
    FloatMatrix a(2, 2);
    a << 0.0, M_PI_2, -M_PI_2, 0.0;
    FloatMatrix e = expm(a, 1.0);
    FloatMatrix want(2, 2);
    want << 0.0, 1.0, -1.0, 0.0;
    CHECK((e - want).norm() < 1e-12);

    FloatMatrix d = FloatMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    FloatMatrix ed = expm(d, 1.0);
    CHECK(std::abs(ed(0, 0) - std::exp(1.0)) < 1e-12 * std::exp(1.0));
    CHECK(std::abs(ed(1, 1) - std::exp(2.0)) < 1e-12 * std::exp(2.0));
    CHECK(std::abs(ed(0, 1)) < 1e-14);

    CHECK(expm(FloatMatrix::Random(3, 3), 0.0).isApprox(FloatMatrix::Identity(3, 3), 1e-15));
}

TEST_CASE("expm error paths") {
    CHECK_THROWS_AS(expm(FloatMatrix::Zero(2, 3), 1.0), ShapeError);
    FloatMatrix big = FloatMatrix::Identity(2, 2) * 1e6;
    CHECK_THROWS_AS(expm(big, 1.0), NumericalError);
    FloatMatrix nan_mat = FloatMatrix::Zero(2, 2);
    nan_mat(0, 0) = std::nan("");
    CHECK_THROWS_AS(expm(nan_mat, 1.0), ValidationError);
}

TEST_CASE("expm semigroup and inverse properties") {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + trial % 3;
        FloatMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = u(rng);
        double s = u(rng), t = u(rng);
        FloatMatrix lhs = expm(a, s + t);
        FloatMatrix rhs = expm(a, s) * expm(a, t);
        CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, lhs.norm()));
        FloatMatrix prod = expm(a, t) * expm(a, -t);
        CHECK((prod - FloatMatrix::Identity(n, n)).norm() < 1e-10);
    }
}

TEST_CASE("expm derivative matches A e^{tA}") {
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 2;
        FloatMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = u(rng);
        double t = u(rng);
        const double h = 1e-5;
        FloatMatrix diff = (expm(a, t + h) - expm(a, t - h)) / (2 * h);
        FloatMatrix want = a * expm(a, t);
        CHECK((diff - want).norm() <= 1e-6 * std::max(1.0, want.norm()));
    }
}

TEST_CASE("psi_eval closed forms") {
    // scalar multiple of identity: q = 1, psi_1(t) = e^{alpha t}
    RationalMatrix ai = RationalMatrix::identity(3) * Rational(2);
    PsiEvaluation ev = psi_eval(ai, 0.7);
    REQUIRE(ev.values.size() == 1);
    CHECK(std::abs(ev.values[0] - std::exp(1.4)) < 1e-10 * std::exp(1.4));

    // diag(1,2) at t=1: psi_1 = 2e - e^2, psi_2 = e^2 - e
    RationalMatrix d(2, 2);
    d.at(0, 0) = 1;
    d.at(1, 1) = 2;
    PsiEvaluation ed = psi_eval(d, 1.0);
    REQUIRE(ed.values.size() == 2);
    const double e1 = std::exp(1.0), e2 = std::exp(2.0);
    CHECK(std::abs(ed.values[0] - (2 * e1 - e2)) < 1e-10);
    CHECK(std::abs(ed.values[1] - (e2 - e1)) < 1e-10);

    // Jordan cell at alpha = 3, t = 1: psi_2 = e^3, psi_1 = e^3 (1 - 3)
    RationalMatrix j{{Rational(3), Rational(1)}, {Rational(0), Rational(3)}};
    PsiEvaluation ej = psi_eval(j, 1.0);
    REQUIRE(ej.values.size() == 2);
    const double e3 = std::exp(3.0);
    CHECK(std::abs(ej.values[1] - e3) < 1e-9 * e3);
    CHECK(std::abs(ej.values[0] - e3 * (1.0 - 3.0)) < 1e-9 * e3);
}

TEST_CASE("psi reconstruction residual stays below tolerance") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> tdist(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        size_t n = 1 + static_cast<size_t>(trial % 4);
        RationalMatrix a = oracle::random_int_matrix(rng, n, n, -3, 3);
        double t = tdist(rng);
        PsiEvaluation ev = psi_eval(a, t); // throws if residual above threshold
        CHECK(ev.residual <= kPsiResidualTolerance * ev.scale);
        CHECK(ev.values.size() == static_cast<size_t>(minimal_polynomial(a).degree()));
    }
}

TEST_CASE("psi coordinates agree with the eigenvalue Vandermonde route") {
    // for diag(l_1..l_n) with distinct entries, psi solves
    // sum_r psi_r l_i^{r-1} = e^{t l_i}; invert the Vandermonde directly
    std::mt19937_64 rng(13579);
    std::uniform_real_distribution<double> tdist(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        size_t n = 2 + static_cast<size_t>(trial % 3);
        std::vector<long> eigs;
        for (long v = -3; eigs.size() < n; ++v)
            if (rng() % 2 == 0) eigs.push_back(v); // increasing, hence distinct
        RationalMatrix a(n, n);
        for (size_t i = 0; i < n; ++i) a.at(i, i) = eigs[i];
        double t = tdist(rng);
        PsiEvaluation ev = psi_eval(a, t);
        REQUIRE(ev.values.size() == n);
        Eigen::MatrixXd vmat(n, n);
        Eigen::VectorXd rhs(n);
        for (size_t i = 0; i < n; ++i) {
            double p = 1.0;
            for (size_t r = 0; r < n; ++r) {
                vmat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r)) = p;
                p *= static_cast<double>(eigs[i]);
            }
            rhs(static_cast<Eigen::Index>(i)) = std::exp(t * static_cast<double>(eigs[i]));
        }
        Eigen::VectorXd want = vmat.fullPivLu().solve(rhs);
        for (size_t r = 0; r < n; ++r)
            CHECK(std::abs(ev.values[r] - want(static_cast<Eigen::Index>(r))) <=
                  1e-7 * std::max(1.0, want.norm()));
    }
}

TEST_CASE("psi_matrix fixed and random cases") {
    RationalMatrix one = RationalMatrix::identity(1);
    FloatMatrix m1 = psi_matrix(one, {0.0});
    CHECK(m1.rows() == 1);
    CHECK(std::abs(m1(0, 0) - 1.0) < 1e-15);

    // diag(1,2) at times (0, ln 2): psi columns (1,0) and (0,2)
    RationalMatrix d(2, 2);
    d.at(0, 0) = 1;
    d.at(1, 1) = 2;
    FloatMatrix m2 = psi_matrix(d, {0.0, std::log(2.0)});
    CHECK(std::abs(m2(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(m2(1, 0) - 0.0) < 1e-12);
    CHECK(std::abs(m2(0, 1) - 0.0) < 1e-12);
    CHECK(std::abs(m2(1, 1) - 2.0) < 1e-12);

    CHECK_THROWS_AS(psi_matrix(d, {0.0}), ShapeError);
}

TEST_CASE("psi_matrix is numerically nonsingular at random times") {
    std::mt19937_64 rng(60601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int failures = 0;
    const int trials = 10000;
    for (int trial = 0; trial < trials; ++trial) {
        size_t n = 2 + static_cast<size_t>(trial % 3);
        RationalMatrix a = oracle::random_int_matrix(rng, n, n, -2, 2);
        size_t q = static_cast<size_t>(minimal_polynomial(a).degree());
        std::vector<double> times(q);
        for (auto& t : times) t = u(rng);
        FloatMatrix m = psi_matrix(a, times);
        Eigen::JacobiSVD<FloatMatrix> svd(m);
        double smin = svd.singularValues().minCoeff();
        double smax = svd.singularValues().maxCoeff();
        if (smin <= 1e-8 * smax) ++failures;
    }
    // nonsingular almost everywhere: tolerate one near-degenerate draw per
    // thousand, expect none
    CHECK(failures <= trials / 1000);
}
