#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fracwell/spectral.hpp"

using namespace fracwell;
using cplx = std::complex<double>;

namespace {

SampledFunction pure_mode(std::size_t N, double L, int kidx) {
    std::vector<cplx> s(N);
    double k = 2.0 * M_PI * kidx / L;
    for (std::size_t j = 0; j < N; ++j) {
        double x = -L / 2 + static_cast<double>(j) * L / N;
        s[j] = std::polar(1.0, k * x);
    }
    return make_sampled(L, std::move(s));
}

double max_abs(const SampledFunction& f) {
    double m = 0.0;
    for (auto& z : f.samples) m = std::max(m, std::abs(z));
    return m;
}

} // namespace

TEST_CASE("make_sampled invariants") {
    std::vector<cplx> ok(8, cplx{1.0, 0.0});
    CHECK_NOTHROW(make_sampled(16.0, ok));
    CHECK_THROWS_AS(make_sampled(16.0, std::vector<cplx>(4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_sampled(16.0, std::vector<cplx>(1000)),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_sampled(0.0, ok), std::invalid_argument);
    std::vector<cplx> bad(8, cplx{1.0, 0.0});
    bad[3] = cplx{std::nan(""), 0.0};
    CHECK_THROWS_AS(make_sampled(16.0, bad), std::invalid_argument);
}

TEST_CASE("riesz_apply: pure mode multiplier") {
    const double L = 16.0;
    for (double alpha : {1.2, 1.5, 2.0}) {
        for (int kidx : {1, 3, 7}) {
            SampledFunction f = pure_mode(1024, L, kidx);
            SampledFunction g = riesz_apply(f, alpha);
            double k = 2.0 * M_PI * kidx / L;
            double expect = -std::pow(std::abs(k), alpha);
            double err = 0.0;
            for (std::size_t j = 0; j < f.size(); ++j)
                err = std::max(err,
                               std::abs(g.samples[j] - expect * f.samples[j]));
            CHECK(err / std::abs(expect) < 1e-10);
        }
    }
}

TEST_CASE("riesz_apply: constant is annihilated") {
    std::vector<cplx> s(256, cplx{3.7, -0.4});
    SampledFunction g = riesz_apply(make_sampled(16.0, s), 1.5);
    CHECK(max_abs(g) < 1e-13);
}

TEST_CASE("riesz_apply: alpha = 2 equals the second derivative") {
    const double L = 16.0;
    const std::size_t N = 512;
    double k = 2.0 * M_PI * 5 / L;
    std::vector<cplx> s(N);
    for (std::size_t j = 0; j < N; ++j) {
        double x = -L / 2 + static_cast<double>(j) * L / N;
        s[j] = std::cos(k * x);
    }
    SampledFunction g = riesz_apply(make_sampled(L, s), 2.0);
    double err = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        double x = -L / 2 + static_cast<double>(j) * L / N;
        err = std::max(err, std::abs(g.samples[j] - (-k * k * std::cos(k * x))));
    }
    CHECK(err < 1e-10 * k * k);

    // random band-limited trig polynomial vs analytic second derivative
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<cplx> c(9);
    for (auto& z : c) z = cplx{coef(rng), coef(rng)};
    std::vector<cplx> samples(N);
    std::vector<cplx> second(N);
    for (std::size_t j = 0; j < N; ++j) {
        double x = -L / 2 + static_cast<double>(j) * L / N;
        cplx v{0.0, 0.0}, d2{0.0, 0.0};
        for (int m = 1; m <= 8; ++m) {
            double km = 2.0 * M_PI * m / L;
            cplx mode = std::polar(1.0, km * x);
            v += c[m] * mode;
            d2 += -km * km * c[m] * mode;
        }
        samples[j] = v;
        second[j] = d2;
    }
    SampledFunction d = riesz_apply(make_sampled(L, samples), 2.0);
    double scale = 0.0, diff = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        scale = std::max(scale, std::abs(second[j]));
        diff = std::max(diff, std::abs(d.samples[j] - second[j]));
    }
    CHECK(diff < 1e-12 * scale);
}

TEST_CASE("riesz_apply: multiplier equivalence of the two symbol forms") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> s(256);
    for (auto& z : s) z = cplx{u(rng), u(rng)};
    SampledFunction f = make_sampled(32.0, s);
    for (double alpha : {1.2, 1.5, 1.9, 2.0}) {
        SampledFunction a = riesz_apply(f, alpha, MultiplierForm::AbsPower);
        SampledFunction b = riesz_apply(f, alpha, MultiplierForm::ComplexPair);
        double scale = std::max(max_abs(a), 1e-30);
        double diff = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j)
            diff = std::max(diff, std::abs(a.samples[j] - b.samples[j]));
        CHECK(diff / scale < 1e-12);
    }
}

TEST_CASE("riesz_apply: linearity") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> s1(128), s2(128);
    for (auto& z : s1) z = cplx{u(rng), u(rng)};
    for (auto& z : s2) z = cplx{u(rng), u(rng)};
    SampledFunction f1 = make_sampled(16.0, s1);
    SampledFunction f2 = make_sampled(16.0, s2);
    cplx a{1.3, -0.2}, b{-0.7, 2.1};
    std::vector<cplx> mix(128);
    for (std::size_t j = 0; j < 128; ++j)
        mix[j] = a * s1[j] + b * s2[j];
    SampledFunction lhs = riesz_apply(make_sampled(16.0, mix), 1.6);
    SampledFunction r1 = riesz_apply(f1, 1.6);
    SampledFunction r2 = riesz_apply(f2, 1.6);
    double scale = std::max(max_abs(lhs), 1e-30);
    for (std::size_t j = 0; j < 128; ++j) {
        cplx rhs = a * r1.samples[j] + b * r2.samples[j];
        CHECK(std::abs(lhs.samples[j] - rhs) < 1e-12 * scale);
    }
}

TEST_CASE("riesz_apply: alpha validation") {
    SampledFunction f = pure_mode(64, 16.0, 1);
    CHECK_THROWS_AS(riesz_apply(f, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(riesz_apply(f, 2.5), std::invalid_argument);
}

TEST_CASE("sfse_residual: alpha = 2 mollified interior bound") {
    WellConfig cfg = WellConfig::nondimensional(2.0);
    for (int n : {1, 2, 3}) {
        SfseResidual r =
            sfse_residual(cfg, StateIndex(n), 2.0, 4096, 16.0);
        CHECK(r.guard_cells == 8);
        // the raw residual is dominated by the wall-kink ringing
        CHECK(r.interior_max_raw > 0.01 * r.energy);
        // the mollified residual isolates it
        CHECK(r.interior_max < 1e-3 * r.energy);
        CHECK(r.exterior_max < 1e-3 * r.energy);
    }
}

TEST_CASE("sfse_residual: fractional interior residual is genuinely large") {
    WellConfig cfg = WellConfig::nondimensional(1.5);
    SfseResidual r = sfse_residual(cfg, StateIndex(1), 1.5, 4096, 16.0);
    CHECK(std::isfinite(r.interior_max));
    // the nonlocal operator does not annihilate the piecewise state
    CHECK(r.interior_max > 0.05 * r.energy);
}

TEST_CASE("sfse_residual: minimal grid runs") {
    WellConfig cfg = WellConfig::nondimensional(1.5);
    SfseResidual r = sfse_residual(cfg, StateIndex(1), 1.5, 8, 16.0);
    CHECK(r.guard_cells < 8); // shrunk so the regions stay non-empty
    CHECK(std::isfinite(r.interior_max));
    CHECK_THROWS_AS(sfse_residual(cfg, StateIndex(1), 1.5, 1000, 16.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(sfse_residual(cfg, StateIndex(1), 1.5, 4096, 4.0),
                    std::invalid_argument);
}
