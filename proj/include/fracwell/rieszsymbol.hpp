#ifndef FRACWELL_RIESZSYMBOL_HPP
#define FRACWELL_RIESZSYMBOL_HPP

#include <complex>
#include <stdexcept>

namespace fracwell {

// Branch cuts of the two complex powers under the principal branch
// (argument in (-pi, pi]): (iq)^alpha cuts the positive imaginary axis,
// (-iq)^alpha the negative one.
enum class CutSide { PositiveImaginaryAxis, NegativeImaginaryAxis };

class BranchCutProximityError : public std::domain_error {
  public:
    explicit BranchCutProximityError(const std::string& what)
        : std::domain_error(what) {}
};

// |q|^alpha on the real axis; abs_power(0) = 0, even in q.
double abs_power(double q, double alpha);

// [(iq)^alpha + (-iq)^alpha] / (2 cos(alpha pi/2)) with principal-branch
// complex powers. Refuses evaluation within cut_distance of either cut
// (use cut_discontinuity there instead).
std::complex<double> complex_power_pair(std::complex<double> q, double alpha,
                                        double cut_distance = 1e-10);

// |complex_power_pair(q + 0i, alpha) - abs_power(q, alpha)|; the real-axis
// identity says this is zero up to roundoff.
double symbol_identity_residual(double q, double alpha);

// Jump of complex_power_pair across the imaginary axis at q = +-i s:
// [value on the counterclockwise-first side] - [value on the other side],
// normalization 1/(2 cos(alpha pi/2)) included. Equals
// i * s^alpha * sin(pi alpha) / cos(alpha pi/2) on both cuts; exactly 0 at
// alpha = 2 (sinpi).
std::complex<double> cut_discontinuity(double s, double alpha, CutSide side);

// 2 cos(alpha pi / 2), the normalization of the complex-power pair.
double pair_normalization(double alpha);

// True when |2 cos(alpha pi/2)| < 1e-3 (alpha near the excluded endpoint 1).
bool poorly_conditioned(double alpha);

} // namespace fracwell

#endif
