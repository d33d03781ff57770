#ifndef FRACWELL_QUADRATURE_HPP
#define FRACWELL_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fracwell/welldomain.hpp"

namespace fracwell {

struct ToleranceSpec {
    double abs_tol = 1e-8;
    double rel_tol = 1e-8;
    long max_evaluations = 10'000'000;

    ToleranceSpec() = default;
    ToleranceSpec(double abs_tol_, double rel_tol_, long max_evaluations_);
};

struct QuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double abs_error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
    std::vector<std::pair<std::string, double>> diagnostics;

    void note(const std::string& stage, double metric) {
        diagnostics.emplace_back(stage, metric);
    }
};

using Integrand = std::function<std::complex<double>(double)>;

// Adaptive Gauss-Kronrod 15(7) with worst-panel bisection. Non-finite
// integrand values abort with converged = false and a diagnostic.
QuadratureResult adaptive_finite(const Integrand& f, double lo, double hi,
                                 const ToleranceSpec& tol);

// Cauchy principal value across one simple real pole:
//   PV int f = int [f(q) - residue/(q - pole)] dq
//              + residue * ln((hi - pole)/(pole - lo)).
// Requires lo < pole < hi.
QuadratureResult pv_simple_pole(const Integrand& f, double pole,
                                std::complex<double> residue, double lo,
                                double hi, const ToleranceSpec& tol);

// Conditionally convergent oscillatory tail int_start^inf f: arcs of length
// half_period anchored at start, each integrated adaptively, partial sums
// accelerated with the Wynn epsilon algorithm (table depth <= 30).
QuadratureResult oscillatory_tail(const Integrand& f, double start,
                                  double half_period,
                                  const ToleranceSpec& tol);

inline const std::vector<double>& default_abel_ladder() {
    static const std::vector<double> ladder{0.2, 0.1, 0.05, 0.025, 0.0125,
                                            0.00625};
    return ladder;
}

// Abel regularization of int_-inf^inf f: computes I(eps) = int f(q)e^{-eps|q|}
// for the descending ladder and extrapolates to eps = 0 with a Neville
// polynomial of degree (ladder size - 1).
QuadratureResult abel_regularized(const Integrand& f, const ToleranceSpec& tol,
                                  const std::vector<double>& eps_ladder =
                                      default_abel_ladder());

enum class DirectMethod { TailAcceleration, AbelLadder };

// Direct evaluation of the consistency integral over (-inf, inf): folds
// q -> -q into the half line, adaptive on [0, Q0] with Q0 = max(8, 4n),
// tail by the chosen method. The passed alpha overrides cfg.alpha.
// Rejects x_tilde = +-1 (BoundaryError). The returned value is real-valued;
// the discarded imaginary residue is logged in diagnostics.
QuadratureResult direct_integral(const WellConfig& cfg, StateIndex n,
                                 ScaledPosition x, double alpha,
                                 DirectMethod method,
                                 const ToleranceSpec& tol);

} // namespace fracwell

#endif
