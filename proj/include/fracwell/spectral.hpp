#ifndef FRACWELL_SPECTRAL_HPP
#define FRACWELL_SPECTRAL_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "fracwell/welldomain.hpp"

namespace fracwell {

// Uniform samples on one period: x_j = -L/2 + j L/N, N a power of two >= 8.
struct SampledFunction {
    double period = 0.0;
    std::vector<std::complex<double>> samples;

    std::size_t size() const { return samples.size(); }
    double node(std::size_t j) const {
        return -period / 2 + static_cast<double>(j) * period / samples.size();
    }
};

SampledFunction make_sampled(double period,
                             std::vector<std::complex<double>> samples);

bool is_power_of_two(std::size_t n);

enum class MultiplierForm { AbsPower, ComplexPair };

// Riesz derivative on the periodic grid: inverse transform of
// -|q_k|^alpha G(q_k), q_k = 2 pi k / L. The ComplexPair form routes the
// multiplier through [(iq)^a + (-iq)^a]/(2 cos(a pi/2)) instead of |q|^a.
SampledFunction riesz_apply(const SampledFunction& f, double alpha,
                            MultiplierForm form = MultiplierForm::AbsPower);

struct SfseResidual {
    SampledFunction residual;          // r_j = -D hbar^a (R psi)_j - E_n psi_j
    SampledFunction residual_smoothed; // Gaussian-mollified residual
    double interior_max_raw = 0.0;
    double exterior_max_raw = 0.0;
    double interior_max = 0.0;  // mollified, guard band excluded
    double exterior_max = 0.0;  // mollified, guard band excluded
    double energy = 0.0;        // E_n
    int guard_cells = 0;        // effective guard actually applied
};

// Pointwise residual of the eigenvalue equation for the piecewise state
// embedded in period L (requires L >= 8a). Interior/exterior max norms skip
// guard_cells grid cells on each side of x = +-a. The smoothed residual
// applies a Gaussian spectral mollifier of width smooth_cells grid cells
// (0 disables) so the kink artifact at +-a does not mask the norms.
SfseResidual sfse_residual(const WellConfig& cfg, StateIndex n, double alpha,
                           std::size_t N, double L, int guard_cells = 8,
                           double smooth_cells = 1.5);

} // namespace fracwell

#endif
