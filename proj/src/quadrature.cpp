#include "fracwell/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "fracwell/trig.hpp"

namespace fracwell {

namespace {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 abscissae/weights).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526, 0.949107912342758524526189684048,
    0.864864423359769072789712788641, 0.741531185599394439863864773281,
    0.586087235467691130294144838259, 0.405845151377397166906606412077,
    0.207784955007898467600689403773, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058, 0.063092092629978553290700663189,
    0.104790010322250183839876322541, 0.140653259715525918745189590510,
    0.169004726639267902826583426599, 0.190350578064785409913256402421,
    0.204432940075298892414161999234, 0.209482141084727828012999174891};
constexpr double kWg[4] = {
    0.129484966168869693270611432679, 0.279705391489276667901467771424,
    0.381830050505118944950369775489, 0.417959183673469387755102040816};

struct PanelEval {
    std::complex<double> value;
    double error;
    bool finite;
};

PanelEval gk15(const Integrand& f, double lo, double hi) {
    double c = 0.5 * (lo + hi);
    double h = 0.5 * (hi - lo);
    std::complex<double> fc = f(c);
    std::complex<double> resk = kWgk[7] * fc;
    std::complex<double> resg = kWg[3] * fc;
    bool finite = std::isfinite(fc.real()) && std::isfinite(fc.imag());
    for (int j = 0; j < 7; ++j) {
        std::complex<double> fv = f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
        finite = finite && std::isfinite(fv.real()) && std::isfinite(fv.imag());
        resk += kWgk[j] * fv;
        if (j % 2 == 1) resg += kWg[(j - 1) / 2] * fv;
    }
    return {resk * h, std::abs((resk - resg) * h), finite};
}

struct Panel {
    double err;
    double lo, hi;
    std::complex<double> value;
    bool splittable;
};

struct PanelWorse {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.splittable != b.splittable) return !a.splittable;
        if (a.err != b.err) return a.err < b.err;
        return a.lo > b.lo; // deterministic tie-break
    }
};

constexpr long kEvalsPerPanel = 15;

// Adaptive GK15 over a pre-seeded partition. All public entry points
// delegate here.
QuadratureResult adaptive_core(const Integrand& f,
                               const std::vector<double>& points,
                               const ToleranceSpec& tol) {
    QuadratureResult out;
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
    std::complex<double> total{0.0, 0.0};
    double err_total = 0.0;
    double span = points.back() - points.front();
    long evals = 0;

    auto push_panel = [&](double lo, double hi) -> bool {
        PanelEval pe = gk15(f, lo, hi);
        evals += kEvalsPerPanel;
        if (!pe.finite) {
            out.converged = false;
            out.evaluations = evals;
            out.value = {std::numeric_limits<double>::quiet_NaN(), 0.0};
            out.note("nonfinite_value_near", 0.5 * (lo + hi));
            return false;
        }
        bool splittable = (hi - lo) > 1e-14 * span;
        heap.push({pe.error, lo, hi, pe.value, splittable});
        total += pe.value;
        err_total += pe.error;
        return true;
    };

    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i + 1] <= points[i]) continue;
        if (!push_panel(points[i], points[i + 1])) return out;
    }

    long panel_count = static_cast<long>(heap.size());
    auto target = [&]() {
        return std::max(tol.abs_tol, tol.rel_tol * std::abs(total));
    };
    while (err_total > target() && evals + 2 * kEvalsPerPanel <= tol.max_evaluations) {
        Panel worst = heap.top();
        if (!worst.splittable) break; // everything left is at minimum width
        heap.pop();
        total -= worst.value;
        err_total -= worst.err;
        double mid = 0.5 * (worst.lo + worst.hi);
        if (!push_panel(worst.lo, mid)) return out;
        if (!push_panel(mid, worst.hi)) return out;
        panel_count += 1;
    }

    out.value = total;
    out.abs_error_estimate = err_total;
    out.evaluations = evals;
    out.converged = err_total <= target();
    out.note("panels", static_cast<double>(panel_count));
    return out;
}

// In-place Wynn epsilon table. Feed partial sums; read the accelerated value.
class WynnEpsilon {
  public:
    explicit WynnEpsilon(int max_depth) : max_entries_(2 * max_depth) {}

    void append(std::complex<double> s) {
        if (static_cast<int>(table_.size()) >= max_entries_) {
            saturated_ = true;
            return;
        }
        table_.push_back(s);
        std::complex<double> aux2{0.0, 0.0};
        for (int j = static_cast<int>(table_.size()) - 1; j >= 1; --j) {
            std::complex<double> aux1 = aux2;
            aux2 = table_[j - 1];
            std::complex<double> diff = table_[j] - aux2;
            if (std::abs(diff) < 1e-300) {
                breakdown_ = true;
                table_[j - 1] = table_[j];
            } else {
                table_[j - 1] = aux1 + 1.0 / diff;
            }
        }
        prev_best_ = best_;
        best_ = (table_.size() % 2 == 1) ? table_[0] : table_[1];
        have_prev_ = table_.size() > 1;
    }

    std::complex<double> best() const { return best_; }
    double change() const {
        return have_prev_ ? std::abs(best_ - prev_best_)
                          : std::numeric_limits<double>::infinity();
    }
    int depth() const { return static_cast<int>(table_.size()) / 2; }
    bool breakdown() const { return breakdown_; }
    bool saturated() const { return saturated_; }

  private:
    std::vector<std::complex<double>> table_;
    std::complex<double> best_{0.0, 0.0}, prev_best_{0.0, 0.0};
    bool have_prev_ = false, breakdown_ = false, saturated_ = false;
    int max_entries_;
};

double neville_at_zero(const std::vector<double>& xs, std::vector<double> ys) {
    for (std::size_t j = 1; j < xs.size(); ++j)
        for (std::size_t i = xs.size() - 1; i >= j; --i)
            ys[i] = ys[i] + (ys[i] - ys[i - 1]) * (0.0 - xs[i]) / (xs[i] - xs[i - j]);
    return ys.back();
}

double lagrange_amplification(const std::vector<double>& xs) {
    double lam = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double li = 1.0;
        for (std::size_t j = 0; j < xs.size(); ++j)
            if (j != i) li *= xs[j] / (xs[j] - xs[i]);
        lam += std::abs(li);
    }
    return lam;
}

} // namespace

ToleranceSpec::ToleranceSpec(double abs_tol_, double rel_tol_,
                             long max_evaluations_)
    : abs_tol(abs_tol_), rel_tol(rel_tol_), max_evaluations(max_evaluations_) {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_evaluations <= 0)
        throw std::invalid_argument("ToleranceSpec: all fields must be positive");
}

QuadratureResult adaptive_finite(const Integrand& f, double lo, double hi,
                                 const ToleranceSpec& tol) {
    if (!(lo < hi))
        throw std::invalid_argument("adaptive_finite: requires lo < hi");
    return adaptive_core(f, {lo, hi}, tol);
}

QuadratureResult pv_simple_pole(const Integrand& f, double pole,
                                std::complex<double> residue, double lo,
                                double hi, const ToleranceSpec& tol) {
    if (!(lo < pole && pole < hi))
        throw std::invalid_argument("pv_simple_pole: pole must lie in (lo, hi)");
    Integrand regularized = [&f, pole, residue](double q) {
        return f(q) - residue / (q - pole);
    };
    QuadratureResult r = adaptive_core(regularized, {lo, pole, hi}, tol);
    r.value += residue * std::log((hi - pole) / (pole - lo));
    r.note("pv_log_term", std::abs(residue) *
                              std::abs(std::log((hi - pole) / (pole - lo))));
    return r;
}

QuadratureResult oscillatory_tail(const Integrand& f, double start,
                                  double half_period,
                                  const ToleranceSpec& tol) {
    if (!(half_period > 0.0))
        throw std::invalid_argument("oscillatory_tail: half_period must be > 0");
    QuadratureResult out;
    constexpr int kMaxDepth = 30;
    constexpr int kMaxArcs = 64;
    WynnEpsilon acc(kMaxDepth);
    ToleranceSpec arc_tol(std::max(tol.abs_tol / 16.0, 1e-15),
                          std::max(tol.rel_tol / 16.0, 1e-14),
                          tol.max_evaluations);
    std::complex<double> partial{0.0, 0.0};
    double quad_err = 0.0;
    long evals = 0;
    double best_change = std::numeric_limits<double>::infinity();
    int growth_streak = 0;
    int arcs = 0;
    bool converged = false;

    for (int k = 0; k < kMaxArcs; ++k) {
        double a = start + k * half_period;
        double b = a + half_period;
        QuadratureResult seg = adaptive_core(f, {a, b}, arc_tol);
        evals += seg.evaluations;
        if (std::isnan(seg.value.real())) {
            out = seg;
            out.evaluations = evals;
            return out;
        }
        partial += seg.value;
        quad_err += seg.abs_error_estimate;
        acc.append(partial);
        arcs = k + 1;
        double change = acc.change();
        double target =
            std::max(tol.abs_tol, tol.rel_tol * std::abs(acc.best()));
        if (arcs >= 4 && change + quad_err <= target) {
            converged = true;
            best_change = change;
            break;
        }
        if (arcs >= 12) {
            growth_streak = (change > 4.0 * best_change &&
                             std::isfinite(best_change))
                                ? growth_streak + 1
                                : 0;
            if (growth_streak >= 4) break; // acceleration diverging
        }
        best_change = std::min(best_change, change);
        if (evals + 4 * kEvalsPerPanel > tol.max_evaluations) break;
        if (acc.saturated()) break;
    }

    out.value = acc.best();
    out.abs_error_estimate = acc.change() + quad_err;
    out.evaluations = evals;
    out.converged = converged;
    out.note("tail_arcs", arcs);
    out.note("acceleration_depth", acc.depth());
    if (acc.breakdown()) out.note("epsilon_breakdown", 1.0);
    if (growth_streak >= 4) out.note("acceleration_divergence", 1.0);
    return out;
}

QuadratureResult abel_regularized(const Integrand& f, const ToleranceSpec& tol,
                                  const std::vector<double>& eps_ladder) {
    if (eps_ladder.empty())
        throw std::invalid_argument("abel_regularized: empty ladder");
    for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
        if (!(eps_ladder[i] > 0.0) ||
            (i > 0 && eps_ladder[i] >= eps_ladder[i - 1]))
            throw std::invalid_argument(
                "abel_regularized: ladder must be positive and descending");
    }

    QuadratureResult out;
    long evals = 0;
    double rung_err_max = 0.0;
    std::vector<double> rung_values;
    double rung_im_max = 0.0;
    bool rungs_ok = true;

    double rung_tol = std::max(tol.abs_tol / 100.0, 1e-14);
    long remaining = tol.max_evaluations;
    std::size_t rungs_left = eps_ladder.size();
    for (double eps : eps_ladder) {
        Integrand damped = [&f, eps](double q) {
            return (f(q) + f(-q)) * std::exp(-eps * q);
        };
        double q_end = std::min(40.0 / eps, 2.0e5);
        std::vector<double> seeds;
        for (double p = 0.0; p < q_end; p += 4.0) seeds.push_back(p);
        seeds.push_back(q_end);
        // unused budget rolls forward; the deepest rung is the hungriest
        long budget = std::max<long>(remaining / (long)rungs_left, 1);
        ToleranceSpec rung_spec(rung_tol, 1e-13, budget);
        QuadratureResult rung = adaptive_core(damped, seeds, rung_spec);
        remaining = std::max<long>(remaining - rung.evaluations, 1);
        --rungs_left;
        evals += rung.evaluations;
        if (std::isnan(rung.value.real())) {
            out = rung;
            out.evaluations = evals;
            return out;
        }
        // analytic remainder bound for the truncated damped tail
        std::complex<double> gend = f(q_end) + f(-q_end);
        evals += 2;
        double remainder = 2.0 * std::abs(gend) * std::exp(-eps * q_end) / eps;
        rung_err_max =
            std::max(rung_err_max, rung.abs_error_estimate + remainder);
        rung_values.push_back(rung.value.real());
        rung_im_max = std::max(rung_im_max, std::abs(rung.value.imag()));
        rungs_ok = rungs_ok && rung.converged;
        out.note("eps_rung", eps);
        out.note("rung_value", rung.value.real());
    }

    // ladder blowup: |I(eps)| growing monotonically by large factors
    bool blowup = true;
    for (std::size_t i = 1; i < rung_values.size(); ++i)
        blowup = blowup &&
                 std::abs(rung_values[i]) > 3.0 * std::abs(rung_values[i - 1]) + 1.0;
    if (rung_values.size() >= 3 && blowup) {
        out.value = {rung_values.back(), 0.0};
        out.evaluations = evals;
        out.converged = false;
        out.note("ladder_blowup", 1.0);
        return out;
    }

    double extrapolated = neville_at_zero(eps_ladder, rung_values);
    double extrap_err = 0.0;
    if (eps_ladder.size() >= 2) {
        std::vector<double> xs(eps_ladder.begin(), eps_ladder.end() - 1);
        std::vector<double> ys(rung_values.begin(), rung_values.end() - 1);
        extrap_err = std::abs(extrapolated - neville_at_zero(xs, ys));
    }
    // rung noise enters the Neville value through the Lagrange basis at 0,
    // bounded by the Lebesgue constant times the worst rung error
    double lam = lagrange_amplification(eps_ladder);
    out.value = {extrapolated, 0.0};
    out.abs_error_estimate = extrap_err + lam * rung_err_max;
    out.evaluations = evals;
    out.converged =
        rungs_ok && out.abs_error_estimate <=
                        std::max(tol.abs_tol,
                                 tol.rel_tol * std::abs(extrapolated));
    out.note("ladder_size", static_cast<double>(eps_ladder.size()));
    out.note("extrapolation_change", extrap_err);
    out.note("rung_im_max", rung_im_max);
    return out;
}

QuadratureResult direct_integral(const WellConfig& cfg, StateIndex n,
                                 ScaledPosition x, double alpha,
                                 DirectMethod method,
                                 const ToleranceSpec& tol) {
    if (x.is_boundary())
        throw BoundaryError("direct_integral: x_tilde = +-1 has no tail "
                            "decomposition; evaluate a shifted point");
    WellConfig c = cfg.with_alpha(alpha);

    // Both methods share the split: adaptive head on [0, Q0] of the folded
    // integrand, tail by the chosen machinery.
    const double q0 = std::max(8.0, 4.0 * n.n);
    Integrand folded = [c, n, x](double q) {
        return integrand(c, n, x, q) + integrand(c, n, x, -q);
    };
    std::vector<double> seeds{0.0, std::max(0.0, double(n.n) - 1.0),
                              double(n.n) + 1.0, q0};
    std::vector<double> pts;
    for (double p : seeds)
        if (pts.empty() || p > pts.back()) pts.push_back(p);
    ToleranceSpec part_tol(tol.abs_tol / 4.0, tol.rel_tol / 4.0,
                           tol.max_evaluations);
    QuadratureResult head = adaptive_core(folded, pts, part_tol);
    if (std::isnan(head.value.real())) return head;

    if (method == DirectMethod::AbelLadder) {
        Integrand masked = [c, n, x, q0](double q) {
            if (std::abs(q) < q0) return std::complex<double>{0.0, 0.0};
            return integrand(c, n, x, q);
        };
        // two extra rungs beyond the stand-alone default: the extrapolation
        // error scales like prod(eps_i)/R^m with R = (pi/2) min|x_tilde +- 1|,
        // and the default grid reaches |x_tilde +- 1| = 0.25. Larger split
        // points need further rungs: the tail's e^{-eps q0} factor makes the
        // ladder coefficients grow like q0^m.
        std::size_t rungs = 8;
        if (q0 > 12.0)
            rungs = std::min<std::size_t>(
                11, 8 + static_cast<std::size_t>(std::ceil((q0 - 12.0) / 4.0)));
        std::vector<double> ladder = default_abel_ladder();
        while (ladder.size() < rungs) ladder.push_back(ladder.back() / 2.0);
        ToleranceSpec tail_tol(3.0 * tol.abs_tol / 4.0,
                               3.0 * tol.rel_tol / 4.0,
                               tol.max_evaluations - head.evaluations);
        QuadratureResult r = abel_regularized(masked, tail_tol, ladder);
        r.value += head.value;
        r.abs_error_estimate += head.abs_error_estimate;
        r.evaluations += head.evaluations;
        r.converged = r.converged && head.converged;
        r.note("discarded_im", std::abs(r.value.imag()));
        r.value = {r.value.real(), 0.0};
        return r;
    }

    double pre = integrand_prefactor(c, n);
    double scale = kernel_scale(n);
    double nn = static_cast<double>(n.n) * n.n;
    QuadratureResult out;
    out.value = head.value;
    out.abs_error_estimate = head.abs_error_estimate;
    out.evaluations = head.evaluations;
    bool all_converged = head.converged;

    for (int epsilon : {+1, -1}) {
        double slope = M_PI * (x.x_tilde + epsilon) / 2.0;
        double coef = pre * scale;
        if (n.n % 2 == 0 && epsilon < 0) coef = -coef;
        double w = std::abs(slope);
        double half_period = (std::abs(x.x_tilde + epsilon) < 1e-6)
                                 ? 2.0
                                 : M_PI / w;
        Integrand comp = [coef, alpha, nn, w](double q) {
            return std::complex<double>(
                coef * std::pow(q, alpha) / (nn - q * q) * std::cos(w * q),
                0.0);
        };
        QuadratureResult t = oscillatory_tail(comp, q0, half_period, part_tol);
        out.value += t.value;
        out.abs_error_estimate += t.abs_error_estimate;
        out.evaluations += t.evaluations;
        all_converged = all_converged && t.converged;
        for (auto& d : t.diagnostics) out.diagnostics.push_back(d);
    }

    out.note("discarded_im", std::abs(out.value.imag()));
    out.value = {out.value.real(), 0.0};
    out.converged = all_converged;
    return out;
}

} // namespace fracwell
