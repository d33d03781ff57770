#ifndef FRACWELL_CONTOUR_HPP
#define FRACWELL_CONTOUR_HPP

#include <complex>
#include <vector>

#include "fracwell/quadrature.hpp"
#include "fracwell/welldomain.hpp"

namespace fracwell {

enum class PowerFactor { IQ, MinusIQ };
enum class Halfplane { Upper, Lower, Degenerate };

// One term of the exponential decomposition of the analytically continued
// integrand: coefficient * (sigma i q)^alpha * e^{i slope q} / (n^2 - q^2).
// The coefficient carries the -A/pi prefactor share, the 1/2 of the trig
// split, the even-n phase, and the 1/(2 cos(alpha pi/2)) normalization, so
// the four pieces sum pointwise to the continued integrand.
struct ExponentialPiece {
    std::complex<double> coefficient;
    double slope;              // c = pi (x_tilde +- 1) / 2
    PowerFactor power_factor;  // IQ: (iq)^alpha, MinusIQ: (-iq)^alpha
    int n;                     // kernel poles at q = +-n
    double alpha;
    std::complex<double> residue_plus;   // residue at q = +n
    std::complex<double> residue_minus;  // residue at q = -n

    std::complex<double> value(double q) const;
};

// Upper iff slope > 0, Lower iff slope < 0, Degenerate iff slope == 0.
Halfplane closure_halfplane(const ExponentialPiece& piece);

// The four pieces {e^{+i pi q/2}, e^{-i pi q/2}} x {IQ, MinusIQ}. Degenerate
// slopes (x_tilde = +-1) are produced, not rejected; contour_evaluate refuses
// them upstream.
std::vector<ExponentialPiece> decompose(const WellConfig& cfg, StateIndex n,
                                        ScaledPosition x, double alpha);

// Indentation term +i pi Res(piece, pole) for pole in {-n, +n}. All pieces
// are indented on the same side of the axis, so the sum over the four pieces
// vanishes by removability of the combined integrand.
std::complex<double> half_residue(const ExponentialPiece& piece, double pole);

// Wrap-around integral of the piece along its branch cut:
//   -2 sin(pi alpha) * coefficient * int_0^inf s^alpha e^{-|slope| s}/(n^2+s^2) ds
// when the piece's cut lies in its closure half-plane (IQ & Upper, or
// MinusIQ & Lower); exactly 0 otherwise and at alpha = 2.
QuadratureResult branch_cut_integral(const ExponentialPiece& piece,
                                     StateIndex n, double alpha,
                                     const ToleranceSpec& tol);

struct ContourEvaluation {
    std::vector<ExponentialPiece> pieces;
    std::vector<Halfplane> closures;
    std::complex<double> residue_sum{};      // full residues of enclosed poles
    std::complex<double> half_residue_sum{}; // indentation terms (cancels)
    std::complex<double> cut_sum{};          // branch-cut integrals
    std::complex<double> pv_sum{};           // residue_sum + half_residue_sum
    std::complex<double> total{};            // pv_sum + cut_sum
    double abs_error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
    std::vector<std::pair<std::string, double>> diagnostics;
};

// Assembles total = residue_sum + half_residue_sum + cut_sum, which equals
// the direct evaluation of the integral. The passed alpha overrides
// cfg.alpha. Rejects x_tilde = +-1 (BoundaryError).
ContourEvaluation contour_evaluate(const WellConfig& cfg, StateIndex n,
                                   ScaledPosition x, double alpha,
                                   const ToleranceSpec& tol);

} // namespace fracwell

#endif
