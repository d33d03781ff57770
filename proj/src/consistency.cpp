#include "fracwell/consistency.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <chrono>
#include <cmath>
#include <thread>

namespace fracwell {

namespace {

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

void append_annotation(std::string& notes, const std::string& token) {
    if (!notes.empty()) notes += ';';
    notes += token;
}

std::string trim_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::DirectTail: return "direct_tail";
        case Method::DirectAbel: return "direct_abel";
        case Method::Contour: return "contour";
    }
    return "?";
}

void ScanSpec::validate() const {
    if (alphas.empty() || x_tildes.empty() || ns.empty())
        throw std::invalid_argument("ScanSpec: alphas, x_tildes, ns must be non-empty");
    for (double a : alphas)
        if (!(a > 1.0 && a <= 2.0))
            throw std::invalid_argument("ScanSpec: alpha outside (1, 2]");
    for (int n : ns)
        if (n < 1) throw std::invalid_argument("ScanSpec: n must be >= 1");
    for (double x : x_tildes)
        if (!std::isfinite(x))
            throw std::invalid_argument("ScanSpec: x_tilde must be finite");
    if (methods.empty())
        throw std::invalid_argument("ScanSpec: methods must be non-empty");
    if (workers < 1)
        throw std::invalid_argument("ScanSpec: workers must be >= 1");
}

ScanSpec ScanSpec::default_grid() {
    ScanSpec s;
    s.alphas = {1.25, 1.5, 1.75, 2.0};
    s.x_tildes = {-2.5, -1.5, -0.75, -0.5, -0.25, 0.0,
                  0.25, 0.5,  0.75,  1.5,  2.5};
    s.ns = {1, 2, 3};
    return s;
}

bool boundary_auto_shift(double& x_tilde) {
    if (x_tilde == 1.0 || x_tilde == -1.0) {
        x_tilde = (x_tilde > 0 ? 1.0 : -1.0) * (1.0 - 1e-4);
        return true;
    }
    return false;
}

namespace {

ConsistencyRow evaluate_cell(const ScanSpec& spec, double alpha, int n_value,
                             double x_requested) {
    ConsistencyRow row;
    row.alpha = alpha;
    row.n = n_value;
    double x_eff = x_requested;
    bool shifted = boundary_auto_shift(x_eff);
    row.x_tilde = x_eff;
    if (shifted)
        append_annotation(row.annotations,
                          "shifted_from=" + trim_number(x_requested));

    WellConfig cfg = spec.base.with_alpha(alpha);
    StateIndex n(n_value);
    ScaledPosition x(x_eff);
    row.piecewise = piecewise_state(cfg, n, x_eff * cfg.a);
    row.delta_direct_tail = nan_value();
    row.delta_direct_abel = nan_value();
    row.delta_contour = nan_value();

    auto want = [&](Method m) {
        return std::find(spec.methods.begin(), spec.methods.end(), m) !=
               spec.methods.end();
    };

    if (want(Method::DirectTail)) {
        row.direct_tail.present = true;
        auto t0 = std::chrono::steady_clock::now();
        try {
            QuadratureResult r = direct_integral(
                cfg, n, x, alpha, DirectMethod::TailAcceleration, spec.tol);
            row.direct_tail.value = r.value;
            row.direct_tail.abs_error_estimate = r.abs_error_estimate;
            row.direct_tail.evaluations = r.evaluations;
            row.direct_tail.converged = r.converged;
        } catch (const std::exception& e) {
            row.direct_tail.converged = false;
            append_annotation(row.annotations,
                              std::string("direct_tail_error=") + e.what());
        }
        row.direct_tail.wall_seconds = seconds_since(t0);
        row.delta_direct_tail = row.direct_tail.value.real() - row.piecewise;
        if (!row.direct_tail.converged)
            append_annotation(row.annotations, "direct_tail_unconverged");
    }
    if (want(Method::DirectAbel)) {
        row.direct_abel.present = true;
        auto t0 = std::chrono::steady_clock::now();
        try {
            QuadratureResult r = direct_integral(
                cfg, n, x, alpha, DirectMethod::AbelLadder, spec.tol);
            row.direct_abel.value = r.value;
            row.direct_abel.abs_error_estimate = r.abs_error_estimate;
            row.direct_abel.evaluations = r.evaluations;
            row.direct_abel.converged = r.converged;
        } catch (const std::exception& e) {
            row.direct_abel.converged = false;
            append_annotation(row.annotations,
                              std::string("direct_abel_error=") + e.what());
        }
        row.direct_abel.wall_seconds = seconds_since(t0);
        row.delta_direct_abel = row.direct_abel.value.real() - row.piecewise;
        if (!row.direct_abel.converged)
            append_annotation(row.annotations, "direct_abel_unconverged");
    }
    if (want(Method::Contour)) {
        row.contour.present = true;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ContourEvaluation ev =
                contour_evaluate(cfg, n, x, alpha, spec.tol);
            row.contour.value = ev.total;
            row.contour.abs_error_estimate = ev.abs_error_estimate;
            row.contour.evaluations = ev.evaluations;
            row.contour.converged = ev.converged;
            row.contour_residue_only = ev.pv_sum;
            row.contour_cut_only = ev.cut_sum;
        } catch (const std::exception& e) {
            row.contour.converged = false;
            append_annotation(row.annotations,
                              std::string("contour_error=") + e.what());
        }
        row.contour.wall_seconds = seconds_since(t0);
        row.delta_contour = row.contour.value.real() - row.piecewise;
        if (!row.contour.converged)
            append_annotation(row.annotations, "contour_unconverged");
    }
    return row;
}

} // namespace

ConsistencyReport run_scan(const ScanSpec& spec) {
    spec.validate();
    ConsistencyReport report;
    report.spec = spec;

    std::vector<double> alphas = spec.alphas;
    std::vector<int> ns = spec.ns;
    std::vector<double> xs = spec.x_tildes;
    std::sort(alphas.begin(), alphas.end());
    std::sort(ns.begin(), ns.end());
    std::sort(xs.begin(), xs.end());

    struct Cell {
        double alpha;
        int n;
        double x;
    };
    std::vector<Cell> cells;
    for (double a : alphas)
        for (int n : ns)
            for (double x : xs) cells.push_back({a, n, x});

    report.rows.resize(cells.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            report.rows[i] =
                evaluate_cell(spec, cells[i].alpha, cells[i].n, cells[i].x);
        }
    };
    int workers = std::max(1, spec.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    report.summary = summarize(report);
    return report;
}

ScanSummary summarize(const ConsistencyReport& report) {
    ScanSummary s;
    std::map<std::pair<double, std::string>, std::vector<double>> deltas;
    for (const ConsistencyRow& row : report.rows) {
        struct Entry {
            const MethodCell* cell;
            double delta;
            std::string name;
        };
        const Entry entries[3] = {
            {&row.direct_tail, row.delta_direct_tail, "direct_tail"},
            {&row.direct_abel, row.delta_direct_abel, "direct_abel"},
            {&row.contour, row.delta_contour, "contour"},
        };
        std::vector<double> converged_values;
        for (const Entry& e : entries) {
            if (!e.cell->present) continue;
            auto key = std::make_pair(row.alpha, e.name);
            MethodStats& st = s.per_alpha_method[key];
            st.cells += 1;
            if (!e.cell->converged) {
                st.failures += 1;
                s.total_failures += 1;
                continue;
            }
            deltas[key].push_back(std::abs(e.delta));
            st.max_abs_delta = std::max(st.max_abs_delta, std::abs(e.delta));
            converged_values.push_back(e.cell->value.real());
        }
        for (std::size_t i = 0; i < converged_values.size(); ++i)
            for (std::size_t j = i + 1; j < converged_values.size(); ++j)
                s.max_cross_method_disagreement = std::max(
                    s.max_cross_method_disagreement,
                    std::abs(converged_values[i] - converged_values[j]));
    }
    for (auto& [key, values] : deltas) {
        std::sort(values.begin(), values.end());
        double median = values.empty()
                            ? 0.0
                            : (values.size() % 2 == 1
                                   ? values[values.size() / 2]
                                   : 0.5 * (values[values.size() / 2 - 1] +
                                            values[values.size() / 2]));
        s.per_alpha_method[key].median_abs_delta = median;
    }
    return s;
}

} // namespace fracwell
