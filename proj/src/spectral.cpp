#include "fracwell/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "fracwell/rieszsymbol.hpp"
#include "fracwell/trig.hpp"

namespace fracwell {

namespace {

// Iterative radix-2 FFT; inverse carries the 1/N normalization. N is a
// power of two by SampledFunction invariant.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * M_PI / static_cast<double>(len) *
                     (inverse ? 1.0 : -1.0);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> w = std::polar(1.0, ang * k);
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
    if (inverse)
        for (auto& z : a) z /= static_cast<double>(n);
}

double wavenumber(std::size_t j, std::size_t n, double period) {
    long k = static_cast<long>(j);
    if (j >= n / 2) k -= static_cast<long>(n);
    return 2.0 * M_PI * static_cast<double>(k) / period;
}

} // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

SampledFunction make_sampled(double period,
                             std::vector<std::complex<double>> samples) {
    if (!(period > 0.0))
        throw std::invalid_argument("SampledFunction: period must be > 0");
    if (samples.size() < 8 || !is_power_of_two(samples.size()))
        throw std::invalid_argument(
            "SampledFunction: N must be a power of two >= 8");
    for (const auto& z : samples)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("SampledFunction: samples must be finite");
    return SampledFunction{period, std::move(samples)};
}

SampledFunction riesz_apply(const SampledFunction& f, double alpha,
                            MultiplierForm form) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw std::invalid_argument("riesz_apply: alpha must lie in (1, 2]");
    std::vector<std::complex<double>> hat = f.samples;
    fft_radix2(hat, false);
    const std::size_t n = hat.size();
    for (std::size_t j = 0; j < n; ++j) {
        double q = wavenumber(j, n, f.period);
        std::complex<double> mult;
        if (form == MultiplierForm::AbsPower) {
            mult = -abs_power(q, alpha);
        } else {
            mult = -complex_power_pair({q, 0.0}, alpha);
        }
        hat[j] *= mult;
    }
    fft_radix2(hat, true);
    return SampledFunction{f.period, std::move(hat)};
}

SfseResidual sfse_residual(const WellConfig& cfg, StateIndex n, double alpha,
                           std::size_t N, double L, int guard_cells,
                           double smooth_cells) {
    if (!is_power_of_two(N) || N < 8)
        throw std::invalid_argument("sfse_residual: N must be a power of two >= 8");
    if (!(L >= 8.0 * cfg.a))
        throw std::invalid_argument("sfse_residual: L must be >= 8a");
    WellConfig c = cfg.with_alpha(alpha);
    const double en = energy_level(c, n);
    const double cell = L / static_cast<double>(N);

    std::vector<std::complex<double>> psi(N);
    for (std::size_t j = 0; j < N; ++j) {
        double xj = -L / 2 + static_cast<double>(j) * cell;
        psi[j] = piecewise_state(c, n, xj);
    }

    std::vector<std::complex<double>> hat = psi;
    fft_radix2(hat, false);
    const double hs = std::pow(c.hbar, alpha) * c.d_alpha;
    std::vector<std::complex<double>> rhat(N), rhat_smooth(N);
    const double sigma = smooth_cells * cell;
    for (std::size_t j = 0; j < N; ++j) {
        double q = wavenumber(j, N, L);
        // r = -D hbar^a R psi - E psi = (D hbar^a |q|^a - E) psi in Fourier
        std::complex<double> coef = (hs * abs_power(q, alpha) - en) * hat[j];
        rhat[j] = coef;
        rhat_smooth[j] =
            (sigma > 0.0) ? coef * std::exp(-0.5 * (q * sigma) * (q * sigma))
                          : coef;
    }
    fft_radix2(rhat, true);
    fft_radix2(rhat_smooth, true);

    SfseResidual out;
    out.residual = SampledFunction{L, rhat};
    out.residual_smoothed = SampledFunction{L, rhat_smooth};
    out.energy = en;

    // shrink the guard band on coarse grids so the regions stay non-empty
    int guard = guard_cells;
    auto region_counts = [&](int g) {
        double gw = g * cell;
        int inside = 0, outside = 0;
        for (std::size_t j = 0; j < N; ++j) {
            double xj = -L / 2 + static_cast<double>(j) * cell;
            if (std::abs(xj) < c.a - gw) ++inside;
            if (std::abs(xj) > c.a + gw) ++outside;
        }
        return std::pair<int, int>{inside, outside};
    };
    while (guard > 0) {
        auto [ins, outs] = region_counts(guard);
        if (ins > 0 && outs > 0) break;
        --guard;
    }
    out.guard_cells = guard;

    double gw = guard * cell;
    for (std::size_t j = 0; j < N; ++j) {
        double xj = -L / 2 + static_cast<double>(j) * cell;
        double raw = std::abs(rhat[j]);
        double smooth = std::abs(rhat_smooth[j]);
        if (std::abs(xj) < c.a - gw) {
            out.interior_max_raw = std::max(out.interior_max_raw, raw);
            out.interior_max = std::max(out.interior_max, smooth);
        } else if (std::abs(xj) > c.a + gw) {
            out.exterior_max_raw = std::max(out.exterior_max_raw, raw);
            out.exterior_max = std::max(out.exterior_max, smooth);
        }
    }
    return out;
}

} // namespace fracwell
