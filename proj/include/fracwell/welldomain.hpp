#ifndef FRACWELL_WELLDOMAIN_HPP
#define FRACWELL_WELLDOMAIN_HPP

#include <complex>
#include <stdexcept>

namespace fracwell {

// Physical configuration of the infinite well on [-a, a] with fractional
// kinetic coefficient d_alpha and Levy index alpha in (1, 2].
struct WellConfig {
    double a;
    double hbar;
    double d_alpha;
    double alpha;
    double amplitude;

    WellConfig(double a_, double hbar_, double d_alpha_, double alpha_,
               double amplitude_);

    // Nondimensional frame a = hbar = d_alpha = amplitude = 1.
    static WellConfig nondimensional(double alpha_);

    // Same physical parameters, different Levy index.
    WellConfig with_alpha(double alpha_) const;

    // Switches amplitude to the box-normalized 1/sqrt(a).
    WellConfig with_normalized_amplitude() const;
};

struct StateIndex {
    int n;
    explicit StateIndex(int n_);
};

struct ScaledPosition {
    double x_tilde; // x / a
    explicit ScaledPosition(double x_tilde_);
    bool is_boundary() const { return x_tilde == 1.0 || x_tilde == -1.0; }
};

// Thrown by evaluations that have no closure at the well edge x = +-a.
class BoundaryError : public std::domain_error {
  public:
    explicit BoundaryError(const std::string& what) : std::domain_error(what) {}
};

// E_n = d_alpha * (n pi hbar / 2a)^alpha.
double energy_level(const WellConfig& cfg, StateIndex n);

// Piecewise eigenstate: A cos(n pi x / 2a) (n odd) or A sin(n pi x / 2a)
// (n even) for |x| < a, exactly 0 for |x| >= a. x is the physical position.
double piecewise_state(const WellConfig& cfg, StateIndex n, double x);

// Fourier kernel of the n-th box mode in the scaled variable q = 2ak/pi:
// for n = 1 this is cos(pi q/2)/(q^2 - 1); in general
//   odd n:  -(-1)^((n-1)/2) * n * cos(pi q/2) / (n^2 - q^2)
//   even n: -(-1)^(n/2)     * n * sin(pi q/2) / (n^2 - q^2)
// The removable singularities at q = +-n are filled with the analytic limit
// when |q -+ n| < 1e-8 (odd n: -pi/4 at both; even n: sign(q) * pi/4).
double mode_kernel(StateIndex n, double q);

// Sign/scale factor of mode_kernel: mode_kernel = kernel_scale * trig / (n^2-q^2).
double kernel_scale(StateIndex n);

// Window inside which mode_kernel substitutes the analytic limit.
inline constexpr double kKernelLimitWindow = 1e-8;

// Prefactor of the consistency integrand,
//   -(A d_alpha / (pi E_n)) * (pi hbar / 2a)^alpha  ==  -A / (pi n^alpha).
double integrand_prefactor(const WellConfig& cfg, StateIndex n);

// Full consistency integrand in the scaled momentum q:
//   prefactor * |q|^alpha * mode_kernel(n, q) * J_n * e^{i pi q x_tilde / 2},
// J_n = 1 for odd n, i for even n (keeps integrand(q) = conj(integrand(-q))).
std::complex<double> integrand(const WellConfig& cfg, StateIndex n,
                               ScaledPosition x, double q);

} // namespace fracwell

#endif
