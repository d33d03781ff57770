#include "fracwell/welldomain.hpp"

#include <cmath>

#include "fracwell/trig.hpp"

namespace fracwell {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

} // namespace

WellConfig::WellConfig(double a_, double hbar_, double d_alpha_, double alpha_,
                       double amplitude_)
    : a(a_), hbar(hbar_), d_alpha(d_alpha_), alpha(alpha_),
      amplitude(amplitude_) {
    require(std::isfinite(a) && a > 0.0, "WellConfig: a must be > 0");
    require(std::isfinite(hbar) && hbar > 0.0, "WellConfig: hbar must be > 0");
    require(std::isfinite(d_alpha) && d_alpha > 0.0,
            "WellConfig: d_alpha must be > 0");
    require(std::isfinite(alpha) && alpha > 1.0 && alpha <= 2.0,
            "WellConfig: alpha must lie in (1, 2]");
    require(std::isfinite(amplitude) && amplitude > 0.0,
            "WellConfig: amplitude must be > 0");
}

WellConfig WellConfig::nondimensional(double alpha_) {
    return WellConfig(1.0, 1.0, 1.0, alpha_, 1.0);
}

WellConfig WellConfig::with_alpha(double alpha_) const {
    return WellConfig(a, hbar, d_alpha, alpha_, amplitude);
}

WellConfig WellConfig::with_normalized_amplitude() const {
    return WellConfig(a, hbar, d_alpha, alpha, 1.0 / std::sqrt(a));
}

StateIndex::StateIndex(int n_) : n(n_) {
    require(n >= 1, "StateIndex: n must be >= 1");
}

ScaledPosition::ScaledPosition(double x_tilde_) : x_tilde(x_tilde_) {
    require(std::isfinite(x_tilde), "ScaledPosition: x_tilde must be finite");
}

double energy_level(const WellConfig& cfg, StateIndex n) {
    return cfg.d_alpha *
           std::pow(n.n * M_PI * cfg.hbar / (2.0 * cfg.a), cfg.alpha);
}

double piecewise_state(const WellConfig& cfg, StateIndex n, double x) {
    if (std::abs(x) >= cfg.a) return 0.0;
    double arg = n.n * x / (2.0 * cfg.a); // trig of pi*arg
    return (n.n % 2 == 1) ? cfg.amplitude * cospi(arg)
                          : cfg.amplitude * sinpi(arg);
}

double kernel_scale(StateIndex n) {
    int half = (n.n % 2 == 1) ? (n.n - 1) / 2 : n.n / 2;
    double sign = (half % 2 == 0) ? -1.0 : 1.0;
    return sign * n.n;
}

double mode_kernel(StateIndex n, double q) {
    double scale = kernel_scale(n);
    if (std::abs(std::abs(q) - n.n) < kKernelLimitWindow) {
        if (n.n % 2 == 1) return -M_PI / 4.0;
        return (q > 0) ? M_PI / 4.0 : -M_PI / 4.0;
    }
    double trig = (n.n % 2 == 1) ? cospi(q / 2.0) : sinpi(q / 2.0);
    return scale * trig / (static_cast<double>(n.n) * n.n - q * q);
}

double integrand_prefactor(const WellConfig& cfg, StateIndex n) {
    double en = energy_level(cfg, n);
    return -(cfg.amplitude * cfg.d_alpha / (M_PI * en)) *
           std::pow(M_PI * cfg.hbar / (2.0 * cfg.a), cfg.alpha);
}

std::complex<double> integrand(const WellConfig& cfg, StateIndex n,
                               ScaledPosition x, double q) {
    if (q == 0.0) return {0.0, 0.0};
    double pre = integrand_prefactor(cfg, n);
    double mag = pre * std::pow(std::abs(q), cfg.alpha) * mode_kernel(n, q);
    std::complex<double> phase{cospi(q * x.x_tilde / 2.0),
                               sinpi(q * x.x_tilde / 2.0)};
    if (n.n % 2 == 0) phase *= std::complex<double>{0.0, 1.0};
    return mag * phase;
}

} // namespace fracwell
