#ifndef FRACWELL_TRIG_HPP
#define FRACWELL_TRIG_HPP

#include <cmath>

namespace fracwell {

// sin(pi*x) and cos(pi*x) with exact zeros at integer and half-integer
// arguments. The branch-cut and alpha=2 closure identities rely on
// sin(pi*alpha) being structurally zero at alpha=2, not 1e-16.

inline double sinpi(double x) {
    double n = std::round(x);
    double r = x - n;
    double s = std::sin(M_PI * r);
    return (std::fmod(n, 2.0) != 0.0) ? -s : s;
}

inline double cospi(double x) {
    double n = std::round(x);
    double r = x - n;
    if (r == 0.5 || r == -0.5) return 0.0;
    double c = std::cos(M_PI * r);
    return (std::fmod(n, 2.0) != 0.0) ? -c : c;
}

} // namespace fracwell

#endif
