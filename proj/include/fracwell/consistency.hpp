#ifndef FRACWELL_CONSISTENCY_HPP
#define FRACWELL_CONSISTENCY_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "fracwell/contour.hpp"
#include "fracwell/quadrature.hpp"
#include "fracwell/welldomain.hpp"

namespace fracwell {

enum class Method { DirectTail, DirectAbel, Contour };

std::string method_name(Method m);

struct ScanSpec {
    WellConfig base = WellConfig::nondimensional(1.5);
    std::vector<double> alphas;
    std::vector<double> x_tildes;
    std::vector<int> ns;
    ToleranceSpec tol;
    std::vector<Method> methods{Method::DirectTail, Method::DirectAbel,
                                Method::Contour};
    int workers = 1;

    void validate() const; // throws std::invalid_argument
    static ScanSpec default_grid();
};

struct MethodCell {
    bool present = false;
    std::complex<double> value{};
    double abs_error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
    double wall_seconds = 0.0;
};

struct ConsistencyRow {
    double alpha = 0.0;
    int n = 0;
    double x_tilde = 0.0; // effective (after boundary auto-shift)
    double piecewise = 0.0;
    MethodCell direct_tail, direct_abel, contour;
    std::complex<double> contour_residue_only{};
    std::complex<double> contour_cut_only{};
    double delta_direct_tail = 0.0, delta_direct_abel = 0.0,
           delta_contour = 0.0; // Re(method) - piecewise; NaN when absent
    std::string annotations;    // ';'-separated tokens, e.g. shifted_from=1
};

struct MethodStats {
    double max_abs_delta = 0.0;
    double median_abs_delta = 0.0;
    int failures = 0;
    int cells = 0;
};

struct ScanSummary {
    // keyed by (alpha, method name)
    std::map<std::pair<double, std::string>, MethodStats> per_alpha_method;
    double max_cross_method_disagreement = 0.0;
    int total_failures = 0;
};

struct Provenance {
    std::string tool_version;
    std::string timestamp;
    std::string config_hash;
};

struct ConsistencyReport {
    ScanSpec spec;
    std::vector<ConsistencyRow> rows; // lexicographic in (alpha, n, x_tilde)
    ScanSummary summary;
    Provenance provenance;
};

// Evaluates every requested (alpha, n, x_tilde) cell with every requested
// method. Per-cell failures are recorded inline (converged = false) without
// aborting the scan; row order is deterministic regardless of workers.
ConsistencyReport run_scan(const ScanSpec& spec);

ScanSummary summarize(const ConsistencyReport& report);

// Boundary rule used by scans and the CLI: x_tilde = +-1 is replaced by
// +-(1 - 1e-4). Returns true when a shift happened.
bool boundary_auto_shift(double& x_tilde);

} // namespace fracwell

#endif
