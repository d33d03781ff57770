#include "fracwell/rieszsymbol.hpp"

#include <cmath>

#include "fracwell/trig.hpp"

namespace fracwell {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw std::invalid_argument("alpha must lie in (1, 2]");
}

} // namespace

double abs_power(double q, double alpha) {
    check_alpha(alpha);
    if (q == 0.0) return 0.0;
    return std::pow(std::abs(q), alpha);
}

double pair_normalization(double alpha) { return 2.0 * cospi(alpha / 2.0); }

bool poorly_conditioned(double alpha) {
    return std::abs(pair_normalization(alpha)) < 1e-3;
}

std::complex<double> complex_power_pair(std::complex<double> q, double alpha,
                                        double cut_distance) {
    check_alpha(alpha);
    if (q == std::complex<double>{0.0, 0.0}) return {0.0, 0.0};
    if (std::abs(q.real()) < cut_distance && q.imag() != 0.0) {
        throw BranchCutProximityError(
            "complex_power_pair: q within cut_distance of a branch cut; "
            "use cut_discontinuity");
    }
    const std::complex<double> i{0.0, 1.0};
    std::complex<double> pair =
        std::pow(i * q, alpha) + std::pow(-i * q, alpha);
    return pair / pair_normalization(alpha);
}

double symbol_identity_residual(double q, double alpha) {
    return std::abs(complex_power_pair({q, 0.0}, alpha) - abs_power(q, alpha));
}

std::complex<double> cut_discontinuity(double s, double alpha, CutSide side) {
    check_alpha(alpha);
    if (!(s > 0.0)) throw std::invalid_argument("cut_discontinuity: s must be > 0");
    (void)side; // both cuts carry the same normalized jump
    double mag = std::pow(s, alpha) * sinpi(alpha) / cospi(alpha / 2.0);
    return {0.0, mag};
}

} // namespace fracwell
