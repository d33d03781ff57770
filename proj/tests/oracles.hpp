// Test-only oracles, independent of the library's evaluation paths.
#ifndef FRACWELL_TESTS_ORACLES_HPP
#define FRACWELL_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

// Fixed-order composite Boole rule; no adaptivity, no shared code with the
// library engine.
inline std::complex<double> composite_boole(
    const std::function<std::complex<double>(double)>& f, double lo, double hi,
    int panels) {
    std::complex<double> sum{0.0, 0.0};
    double h = (hi - lo) / panels;
    for (int i = 0; i < panels; ++i) {
        double a = lo + i * h;
        std::complex<double> acc =
            7.0 * f(a) + 32.0 * f(a + h / 4) + 12.0 * f(a + h / 2) +
            32.0 * f(a + 3 * h / 4) + 7.0 * f(a + h);
        sum += acc * h / 90.0;
    }
    return sum;
}

// Symmetric-excision principal value over [lo, hi] with Richardson in the
// excision radius.
inline std::complex<double> pv_excision(
    const std::function<std::complex<double>(double)>& f, double pole,
    double lo, double hi, double eps) {
    auto run = [&](double e) {
        return composite_boole(f, lo, pole - e, 4000) +
               composite_boole(f, pole + e, hi, 4000);
    };
    std::complex<double> v1 = run(eps);
    std::complex<double> v2 = run(eps / 2);
    return 2.0 * v2 - v1; // kills the O(eps) term
}

// Numerical limit of g at x0 from both sides via shrinking offsets.
inline double two_sided_limit(const std::function<double(double)>& g,
                              double x0, double offset) {
    double a = 0.5 * (g(x0 - offset) + g(x0 + offset));
    double b = 0.5 * (g(x0 - offset / 2) + g(x0 + offset / 2));
    return 2.0 * b - a;
}

} // namespace oracle

#endif
