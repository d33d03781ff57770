#include "fracwell/contour.hpp"

#include <cmath>

#include "fracwell/rieszsymbol.hpp"
#include "fracwell/trig.hpp"

namespace fracwell {

namespace {

std::complex<double> power_at_pole(PowerFactor pf, double pole,
                                   double alpha) {
    // (sigma * i * pole)^alpha, principal branch, pole = +-n
    double sigma = (pf == PowerFactor::IQ) ? 1.0 : -1.0;
    double sgn = sigma * ((pole > 0) ? 1.0 : -1.0); // sign of the imag part
    double mag = std::pow(std::abs(pole), alpha);
    return mag * std::complex<double>{cospi(sgn * alpha / 2.0),
                                      sinpi(sgn * alpha / 2.0)};
}

} // namespace

std::complex<double> ExponentialPiece::value(double q) const {
    double sigma = (power_factor == PowerFactor::IQ) ? 1.0 : -1.0;
    std::complex<double> power =
        std::pow(std::complex<double>{0.0, sigma * q}, alpha);
    std::complex<double> phase{std::cos(slope * q), std::sin(slope * q)};
    double nn = static_cast<double>(n) * n;
    return coefficient * power * phase / (nn - q * q);
}

Halfplane closure_halfplane(const ExponentialPiece& piece) {
    if (piece.slope > 0.0) return Halfplane::Upper;
    if (piece.slope < 0.0) return Halfplane::Lower;
    return Halfplane::Degenerate;
}

std::vector<ExponentialPiece> decompose(const WellConfig& cfg, StateIndex n,
                                        ScaledPosition x, double alpha) {
    WellConfig c = cfg.with_alpha(alpha);
    double pre = integrand_prefactor(c, n);
    double scale = kernel_scale(n);
    double norm = pair_normalization(alpha);
    std::vector<ExponentialPiece> pieces;
    pieces.reserve(4);
    for (int epsilon : {+1, -1}) {
        double slope = M_PI * (x.x_tilde + epsilon) / 2.0;
        // trig split weight; the even-n factor i cancels against 1/(2i)
        double w = (n.n % 2 == 1) ? 0.5 : (epsilon > 0 ? 0.5 : -0.5);
        std::complex<double> coef{pre * scale * w / norm, 0.0};
        for (PowerFactor pf : {PowerFactor::IQ, PowerFactor::MinusIQ}) {
            ExponentialPiece p;
            p.coefficient = coef;
            p.slope = slope;
            p.power_factor = pf;
            p.n = n.n;
            p.alpha = alpha;
            double cn = n.n * (x.x_tilde + epsilon) / 2.0; // trig of pi*cn
            std::complex<double> phase_plus{cospi(cn), sinpi(cn)};
            std::complex<double> phase_minus = std::conj(phase_plus);
            p.residue_plus = coef * power_at_pole(pf, +n.n, alpha) *
                             phase_plus / (-2.0 * n.n);
            p.residue_minus = coef * power_at_pole(pf, -n.n, alpha) *
                              phase_minus / (2.0 * n.n);
            pieces.push_back(p);
        }
    }
    return pieces;
}

std::complex<double> half_residue(const ExponentialPiece& piece, double pole) {
    if (pole != static_cast<double>(piece.n) &&
        pole != -static_cast<double>(piece.n))
        throw std::invalid_argument("half_residue: pole must be +-n");
    std::complex<double> res =
        (pole > 0) ? piece.residue_plus : piece.residue_minus;
    return std::complex<double>{0.0, M_PI} * res;
}

QuadratureResult branch_cut_integral(const ExponentialPiece& piece,
                                     StateIndex n, double alpha,
                                     const ToleranceSpec& tol) {
    Halfplane hp = closure_halfplane(piece);
    if (hp == Halfplane::Degenerate)
        throw std::invalid_argument(
            "branch_cut_integral: degenerate piece has no closure");
    QuadratureResult out;
    bool cut_in_halfplane =
        (piece.power_factor == PowerFactor::IQ && hp == Halfplane::Upper) ||
        (piece.power_factor == PowerFactor::MinusIQ && hp == Halfplane::Lower);
    if (!cut_in_halfplane) {
        out.converged = true;
        out.evaluations = 1;
        out.note("cut_in_opposite_halfplane", 1.0);
        return out;
    }
    double sp = sinpi(alpha);
    if (sp == 0.0) { // alpha = 2: the discontinuity closes exactly
        out.converged = true;
        out.evaluations = 1;
        out.note("cut_closed_alpha2", 1.0);
        return out;
    }

    double w = std::abs(piece.slope);
    double nn = static_cast<double>(n.n) * n.n;
    // truncation point: integrand at S below abs_tol/100
    double target = tol.abs_tol / 100.0;
    double S = std::max(12.0, 2.0 / w);
    auto level = [&](double s) {
        return std::exp(-w * s) * std::pow(s, alpha) / (nn + s * s);
    };
    while (level(S) > target && S < 1e6) S *= 1.5;

    Integrand h = [alpha, w, nn](double s) {
        return std::complex<double>(
            std::pow(s, alpha) * std::exp(-w * s) / (nn + s * s), 0.0);
    };
    QuadratureResult q = adaptive_finite(h, 0.0, S, tol);
    std::complex<double> factor = -2.0 * sp * piece.coefficient;
    out.value = factor * q.value;
    double remainder = level(S) / w; // analytic bound on the truncated tail
    out.abs_error_estimate =
        std::abs(factor) * (q.abs_error_estimate + remainder);
    out.evaluations = q.evaluations;
    out.converged = q.converged;
    out.note("cut_truncation", S);
    out.note("cut_remainder_bound", std::abs(factor) * remainder);
    return out;
}

ContourEvaluation contour_evaluate(const WellConfig& cfg, StateIndex n,
                                   ScaledPosition x, double alpha,
                                   const ToleranceSpec& tol) {
    if (x.is_boundary())
        throw BoundaryError("contour_evaluate: x_tilde = +-1 degenerates the "
                            "closure; evaluate a shifted point");
    ContourEvaluation ev;
    ev.pieces = decompose(cfg, n, x, alpha);
    ev.converged = true;
    const std::complex<double> minus_two_pi_i{0.0, -2.0 * M_PI};
    for (const ExponentialPiece& p : ev.pieces) {
        Halfplane hp = closure_halfplane(p);
        ev.closures.push_back(hp);
        ev.half_residue_sum += half_residue(p, +p.n) + half_residue(p, -p.n);
        if (hp == Halfplane::Lower)
            ev.residue_sum += minus_two_pi_i * (p.residue_plus + p.residue_minus);
        QuadratureResult cut = branch_cut_integral(p, n, alpha, tol);
        ev.cut_sum += cut.value;
        ev.abs_error_estimate += cut.abs_error_estimate;
        ev.evaluations += cut.evaluations;
        ev.converged = ev.converged && cut.converged;
    }
    ev.pv_sum = ev.residue_sum + ev.half_residue_sum;
    ev.total = ev.pv_sum + ev.cut_sum;
    if (poorly_conditioned(alpha))
        ev.diagnostics.emplace_back("conditioning_2cos",
                                    std::abs(pair_normalization(alpha)));
    ev.diagnostics.emplace_back("im_total", std::abs(ev.total.imag()));
    return ev;
}

} // namespace fracwell
