#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracwell/rieszsymbol.hpp"

using namespace fracwell;
using cplx = std::complex<double>;

TEST_CASE("abs_power basics") {
    CHECK(abs_power(0.0, 1.5) == 0.0);
    CHECK(abs_power(-2.0, 2.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(abs_power(2.0, 1.5) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
    for (double q : {0.3, 1.7, 11.0})
        CHECK(abs_power(q, 1.3) == doctest::Approx(abs_power(-q, 1.3)));
    CHECK_THROWS_AS(abs_power(1.0, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(abs_power(1.0, 2.5), std::invalid_argument);
}

TEST_CASE("complex_power_pair on the real axis") {
    CHECK(std::abs(complex_power_pair({1.0, 0.0}, 1.5) - 1.0) < 1e-14);
    CHECK(std::abs(complex_power_pair({-3.0, 0.0}, 2.0) - 9.0) < 1e-13);
    CHECK(complex_power_pair({0.0, 0.0}, 1.7) == cplx{0.0, 0.0});
}

TEST_CASE("complex_power_pair just right of the positive imaginary cut") {
    // limiting value at q -> 2i from Re q > 0:
    //   [(2)^a e^{i a pi} + (2)^a] / (2 cos(a pi/2)), a = 1.5  ->  -2 + 2i
    cplx v = complex_power_pair({1e-8, 2.0}, 1.5);
    CHECK(std::abs(v - cplx{-2.0, 2.0}) < 1e-6);
}

TEST_CASE("branch cut proximity is refused") {
    CHECK_THROWS_AS(complex_power_pair({0.0, 1.0}, 1.5),
                    BranchCutProximityError);
    CHECK_THROWS_AS(complex_power_pair({1e-11, 2.0}, 1.5),
                    BranchCutProximityError);
    CHECK_THROWS_AS(complex_power_pair({-1e-11, -2.0}, 1.5),
                    BranchCutProximityError);
    // configurable distance
    CHECK_NOTHROW(complex_power_pair({1e-11, 2.0}, 1.5, 1e-13));
}

TEST_CASE("symbol identity examples") {
    CHECK(symbol_identity_residual(0.7, 1.3) < 1e-12);
    CHECK(symbol_identity_residual(0.0, 1.5) == 0.0);
    CHECK(symbol_identity_residual(-5.0, 2.0) < 1e-12 * 26.0);
}

TEST_CASE("symbol identity property, 1e4 random samples") {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> qd(-50.0, 50.0);
    std::uniform_real_distribution<double> ad(1.01, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double q = qd(rng);
        double alpha = ad(rng);
        double rel = symbol_identity_residual(q, alpha) /
                     (1.0 + abs_power(q, alpha));
        worst = std::max(worst, rel);
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("pair is even in q off the cuts") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    std::uniform_real_distribution<double> ad(1.05, 2.0);
    int checked = 0;
    while (checked < 300) {
        cplx q{d(rng), d(rng)};
        if (std::abs(q.real()) < 1e-6) continue;
        double alpha = ad(rng);
        cplx a = complex_power_pair(q, alpha);
        cplx b = complex_power_pair(-q, alpha);
        CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
        ++checked;
    }
}

TEST_CASE("cut_discontinuity magnitudes") {
    // alpha = 2: the cut closes exactly in structure
    for (double s : {0.5, 1.0, 2.0, 10.0}) {
        CHECK(std::abs(cut_discontinuity(s, 2.0, CutSide::PositiveImaginaryAxis)) <
              1e-14);
        CHECK(std::abs(cut_discontinuity(s, 2.0, CutSide::NegativeImaginaryAxis)) ==
              0.0);
    }
    CHECK(std::abs(cut_discontinuity(1.0, 1.5, CutSide::PositiveImaginaryAxis)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(std::abs(cut_discontinuity(2.0, 1.5, CutSide::PositiveImaginaryAxis)) ==
          doctest::Approx(std::pow(2.0, 1.5) * std::sqrt(2.0)).epsilon(1e-13));
    CHECK_THROWS_AS(cut_discontinuity(0.0, 1.5, CutSide::PositiveImaginaryAxis),
                    std::invalid_argument);
    CHECK_THROWS_AS(cut_discontinuity(-1.0, 1.5, CutSide::PositiveImaginaryAxis),
                    std::invalid_argument);
}

TEST_CASE("cut_discontinuity matches the two-sided limit of the pair") {
    // the delta -> 0 numerical jump: Richardson over delta and delta/2
    const double delta = 1e-8;
    for (double alpha : {1.25, 1.5, 1.75, 2.0}) {
        for (double s : {0.5, 1.0, 2.0, 10.0}) {
            auto jump_at = [&](double d) {
                cplx right = complex_power_pair({d, s}, alpha, 1e-13);
                cplx left = complex_power_pair({-d, s}, alpha, 1e-13);
                return right - left;
            };
            cplx j1 = jump_at(delta);
            cplx j2 = jump_at(delta / 2);
            cplx extrapolated = 2.0 * j2 - j1;
            cplx analytic =
                cut_discontinuity(s, alpha, CutSide::PositiveImaginaryAxis);
            CHECK(std::abs(extrapolated - analytic) < 1e-8);

            auto jump_neg = [&](double d) {
                cplx first = complex_power_pair({-d, -s}, alpha, 1e-13);
                cplx second = complex_power_pair({d, -s}, alpha, 1e-13);
                return first - second;
            };
            cplx k1 = jump_neg(delta);
            cplx k2 = jump_neg(delta / 2);
            cplx extrap_neg = 2.0 * k2 - k1;
            cplx analytic_neg =
                cut_discontinuity(s, alpha, CutSide::NegativeImaginaryAxis);
            CHECK(std::abs(extrap_neg - analytic_neg) < 1e-8);
        }
    }
}

TEST_CASE("conditioning flag near alpha -> 1") {
    CHECK(poorly_conditioned(1.0002));
    CHECK_FALSE(poorly_conditioned(1.25));
    CHECK_FALSE(poorly_conditioned(2.0));
}
