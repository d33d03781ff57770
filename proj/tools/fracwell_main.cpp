#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracwell/consistency.hpp"
#include "fracwell/contour.hpp"
#include "fracwell/quadrature.hpp"
#include "fracwell/report_io.hpp"
#include "fracwell/rieszsymbol.hpp"
#include "fracwell/spectral.hpp"
#include "fracwell/welldomain.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyViolation = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitScanCellFailure = 4;
constexpr int kExitUsage = 64;
constexpr int kExitUnreadableInput = 66;

struct PhysicalFlags {
    double a = 1.0, hbar = 1.0, d_alpha = 1.0, amplitude = 1.0;
    bool normalized_amplitude = false;

    fracwell::WellConfig config(double alpha) const {
        fracwell::WellConfig cfg(a, hbar, d_alpha, alpha, amplitude);
        return normalized_amplitude ? cfg.with_normalized_amplitude() : cfg;
    }
};

void add_physical_flags(CLI::App* cmd, PhysicalFlags& phys) {
    cmd->add_option("--a", phys.a, "well half-width");
    cmd->add_option("--hbar", phys.hbar, "reduced Planck constant");
    cmd->add_option("--d-alpha", phys.d_alpha, "fractional kinetic coefficient");
    cmd->add_option("--amplitude", phys.amplitude, "state amplitude A");
    cmd->add_flag("--normalized-amplitude", phys.normalized_amplitude,
                  "use A = 1/sqrt(a)");
}

int run_symbol_check(double alpha_min, double alpha_max, long samples,
                     unsigned long seed, bool emit) {
    if (!(alpha_min > 1.0 && alpha_min < alpha_max && alpha_max <= 2.0)) {
        std::cerr << "symbol-check: alpha range must satisfy 1 < min < max <= 2\n";
        return kExitUsage;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> qdist(-50.0, 50.0);
    std::uniform_real_distribution<double> adist(alpha_min, alpha_max);
    double worst = 0.0, worst_q = 0.0, worst_alpha = 0.0;
    auto t0 = std::chrono::steady_clock::now();
    for (long i = 0; i < samples; ++i) {
        double q = qdist(rng);
        double alpha = adist(rng);
        double res = fracwell::symbol_identity_residual(q, alpha) /
                     (1.0 + fracwell::abs_power(q, alpha));
        if (emit)
            std::cout << fracwell::format_double(q) << ","
                      << fracwell::format_double(alpha) << ","
                      << fracwell::format_double(res) << "\n";
        if (res > worst) {
            worst = res;
            worst_q = q;
            worst_alpha = alpha;
        }
    }
    double dt = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    std::cout << "symbol-check: samples=" << samples
              << " max_relative_residual=" << fracwell::format_double(worst)
              << " at q=" << fracwell::format_double(worst_q)
              << " alpha=" << fracwell::format_double(worst_alpha)
              << " seconds=" << fracwell::format_double(dt) << "\n";
    if (fracwell::poorly_conditioned(alpha_min))
        std::cout << "symbol-check: warning: |2cos(alpha pi/2)| < 1e-3 near "
                     "alpha_min\n";
    return worst < 1e-12 ? kExitOk : kExitPropertyViolation;
}

int run_integrate(const PhysicalFlags& phys, double alpha, double x_tilde,
                  int n_value, const std::string& method_name,
                  const std::string& format, double abs_tol, double rel_tol,
                  long max_evals) {
    fracwell::WellConfig cfg = phys.config(alpha);
    fracwell::StateIndex n(n_value);
    fracwell::ToleranceSpec tol(abs_tol, rel_tol, max_evals);

    std::string annotations;
    double x_eff = x_tilde;
    if (fracwell::boundary_auto_shift(x_eff))
        annotations = "shifted_from=" + fracwell::format_double(x_tilde);
    fracwell::ScaledPosition x(x_eff);

    std::complex<double> value;
    double err = 0.0;
    long evals = 0;
    bool converged = false;
    auto t0 = std::chrono::steady_clock::now();
    if (method_name == "contour") {
        fracwell::ContourEvaluation ev =
            fracwell::contour_evaluate(cfg, n, x, alpha, tol);
        value = ev.total;
        err = ev.abs_error_estimate;
        evals = ev.evaluations;
        converged = ev.converged;
    } else {
        fracwell::DirectMethod m = method_name == "direct-abel"
                                       ? fracwell::DirectMethod::AbelLadder
                                       : fracwell::DirectMethod::TailAcceleration;
        fracwell::QuadratureResult r =
            fracwell::direct_integral(cfg, n, x, alpha, m, tol);
        value = r.value;
        err = r.abs_error_estimate;
        evals = r.evaluations;
        converged = r.converged;
    }
    double wall = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();

    if (format == "json") {
        nlohmann::ordered_json j;
        j["method"] = method_name;
        j["alpha"] = alpha;
        j["n"] = n_value;
        j["x_tilde"] = x_eff;
        j["value_re"] = value.real();
        j["value_im"] = value.imag();
        j["abs_error_estimate"] = err;
        j["evaluations"] = evals;
        j["wall_seconds"] = wall;
        j["converged"] = converged;
        j["annotations"] = annotations;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "method,alpha,n,x_tilde,value_re,value_im,"
                     "abs_error_estimate,evaluations,wall_seconds,converged,"
                     "annotations\n";
        std::cout << method_name << "," << fracwell::format_double(alpha)
                  << "," << n_value << "," << fracwell::format_double(x_eff)
                  << "," << fracwell::format_double(value.real()) << ","
                  << fracwell::format_double(value.imag()) << ","
                  << fracwell::format_double(err) << "," << evals << ","
                  << fracwell::format_double(wall) << ","
                  << (converged ? 1 : 0) << "," << annotations << "\n";
    }
    return converged ? kExitOk : kExitNonConvergence;
}

int run_scan(const std::string& config_path, int workers_override) {
    std::ifstream probe(config_path, std::ios::binary);
    if (!probe) {
        std::cerr << "scan: cannot read config file: " << config_path << "\n";
        return kExitUnreadableInput;
    }
    std::stringstream buffer;
    buffer << probe.rdbuf();
    std::string raw = buffer.str();

    fracwell::ScanConfig config;
    try {
        std::istringstream in(raw);
        config = fracwell::parse_scan_config(in);
    } catch (const std::exception& e) {
        std::cerr << "scan: " << e.what() << "\n";
        return kExitUnreadableInput;
    }
    if (workers_override > 0) config.spec.workers = workers_override;

    fracwell::ConsistencyReport report = fracwell::run_scan(config.spec);
    report.provenance.tool_version = fracwell::kToolVersion;
    report.provenance.timestamp = fracwell::iso8601_utc_now();
    report.provenance.config_hash = fracwell::fnv1a_hex(raw);

    std::string content = config.format == fracwell::OutputFormat::Json
                              ? fracwell::render_json(report)
                              : fracwell::render_csv(report);
    try {
        fracwell::write_file_atomic(config.output_path, content);
    } catch (const std::exception& e) {
        std::cerr << "scan: " << e.what() << "\n";
        return kExitUnreadableInput;
    }

    std::cout << "scan: rows=" << report.rows.size()
              << " failures=" << report.summary.total_failures
              << " max_cross_method_disagreement="
              << fracwell::format_double(
                     report.summary.max_cross_method_disagreement)
              << " output=" << config.output_path << "\n";
    return report.summary.total_failures == 0 ? kExitOk : kExitScanCellFailure;
}

int run_spectral_check(std::size_t N, double L, double alpha, int n_value,
                       const std::vector<int>& modes) {
    if (!fracwell::is_power_of_two(N) || N < 8) {
        std::cerr << "spectral-check: N must be a power of two >= 8\n";
        return kExitUsage;
    }
    double worst = 0.0;
    for (int kidx : modes) {
        if (kidx == 0 || static_cast<std::size_t>(std::abs(kidx)) >= N / 2)
            continue;
        std::vector<std::complex<double>> samples(N);
        double k = 2.0 * M_PI * kidx / L;
        for (std::size_t j = 0; j < N; ++j) {
            double xj = -L / 2 + static_cast<double>(j) * L / N;
            samples[j] = std::polar(1.0, k * xj);
        }
        fracwell::SampledFunction f = fracwell::make_sampled(L, samples);
        fracwell::SampledFunction g = fracwell::riesz_apply(f, alpha);
        double expect = -std::pow(std::abs(k), alpha);
        double err = 0.0;
        for (std::size_t j = 0; j < N; ++j)
            err = std::max(err,
                           std::abs(g.samples[j] - expect * f.samples[j]));
        double rel = err / std::abs(expect);
        worst = std::max(worst, rel);
        std::cout << "spectral-check: mode k_index=" << kidx
                  << " multiplier_rel_error=" << fracwell::format_double(rel)
                  << "\n";
    }

    fracwell::WellConfig cfg = fracwell::WellConfig::nondimensional(alpha);
    fracwell::SfseResidual res = fracwell::sfse_residual(
        cfg, fracwell::StateIndex(n_value), alpha, N, L);
    std::cout << "spectral-check: E_n=" << fracwell::format_double(res.energy)
              << " guard_cells=" << res.guard_cells << "\n";
    std::cout << "spectral-check: interior_max_raw="
              << fracwell::format_double(res.interior_max_raw)
              << " exterior_max_raw="
              << fracwell::format_double(res.exterior_max_raw) << "\n";
    std::cout << "spectral-check: interior_max_smoothed="
              << fracwell::format_double(res.interior_max)
              << " exterior_max_smoothed="
              << fracwell::format_double(res.exterior_max) << "\n";
    return worst <= 1e-10 ? kExitOk : kExitPropertyViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracwell: fractional infinite-well consistency integrals"};
    app.set_version_flag("--version",
                         std::string("fracwell ") + fracwell::kToolVersion +
                             " (report-schema " +
                             std::to_string(fracwell::kReportSchemaVersion) +
                             ")");
    app.require_subcommand(1);

    // symbol-check
    auto* sym = app.add_subcommand(
        "symbol-check", "real-axis identity of the complex-power pair");
    double alpha_min = 1.01, alpha_max = 2.0;
    long samples = 10000;
    unsigned long seed = 12345;
    bool emit = false;
    sym->add_option("--alpha-min", alpha_min, "lower alpha bound (exclusive of 1)");
    sym->add_option("--alpha-max", alpha_max, "upper alpha bound (<= 2)");
    sym->add_option("--samples", samples, "number of random samples");
    sym->add_option("--seed", seed, "RNG seed");
    sym->add_flag("--emit-residuals", emit, "print per-sample residuals");

    // integrate
    auto* integ = app.add_subcommand("integrate",
                                     "evaluate one consistency integral");
    PhysicalFlags phys;
    add_physical_flags(integ, phys);
    double alpha = 1.5, x_tilde = 0.5;
    int n_value = 1;
    std::string method = "direct-tail";
    std::string format = "csv";
    double abs_tol = 1e-8, rel_tol = 1e-8;
    long max_evals = 10'000'000;
    integ->add_option("--alpha", alpha, "Levy index in (1, 2]")->required();
    integ->add_option("--x", x_tilde, "scaled position x/a")->required();
    integ->add_option("--n", n_value, "state index >= 1");
    integ->add_option("--method", method, "direct-tail | direct-abel | contour")
        ->check(CLI::IsMember({"direct-tail", "direct-abel", "contour"}));
    integ->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    integ->add_option("--abs-tol", abs_tol, "absolute tolerance");
    integ->add_option("--rel-tol", rel_tol, "relative tolerance");
    integ->add_option("--max-evaluations", max_evals, "evaluation budget");

    // scan
    auto* scan = app.add_subcommand("scan", "grid scan from a config file");
    std::string config_path;
    int workers_override = 0;
    scan->add_option("config", config_path, "key = value config file")
        ->required();
    scan->add_option("--workers", workers_override,
                     "override worker count from the config");

    // spectral-check
    auto* spec = app.add_subcommand("spectral-check",
                                    "grid Riesz multiplier and residual");
    std::size_t N = 1024;
    double L = 16.0;
    double salpha = 1.5;
    int sn = 1;
    std::vector<int> modes{1, 3, 7};
    spec->add_option("--grid-size", N, "number of grid points (power of two)");
    spec->add_option("--period", L, "periodic box size");
    spec->add_option("--alpha", salpha, "Levy index in (1, 2]");
    spec->add_option("--n", sn, "state index for the residual");
    spec->add_option("--modes", modes, "mode indices for the multiplier check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sym->parsed())
            return run_symbol_check(alpha_min, alpha_max, samples, seed, emit);
        if (integ->parsed())
            return run_integrate(phys, alpha, x_tilde, n_value, method, format,
                                 abs_tol, rel_tol, max_evals);
        if (scan->parsed()) return run_scan(config_path, workers_override);
        if (spec->parsed())
            return run_spectral_check(N, L, salpha, sn, modes);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
