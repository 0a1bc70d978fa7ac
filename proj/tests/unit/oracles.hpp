#pragma once

// Test-only oracles, kept independent of the library implementations.

#include <cmath>
#include <vector>

namespace oracle {

// K_n(x) = int_0^inf exp(-x cosh t) cosh(n t) dt by trapezoid sums with
// Richardson extrapolation in the step. The integrand decays doubly
// exponentially, so the trapezoid rule converges geometrically.
inline double bessel_k_quadrature(int n, double x)
{
    auto trap = [&](double h) {
        double s = 0.5 * std::exp(-x);  // t = 0 endpoint, cosh(0) = 1
        for (int k = 1;; ++k) {
            const double t = k * h;
            const double e = std::exp(-x * std::cosh(t)) * std::cosh(n * t);
            s += e;
            if (e < 1e-320 && t > 1.0) break;
        }
        return s * h;
    };
    const double a = trap(1.0 / 64.0), b = trap(1.0 / 128.0);
    return b + (b - a) / 3.0;  // Richardson on the (even) error expansion
}

// I_0, I_1 by the ascending power series (entire functions).
inline double bessel_i0_series(double x)
{
    const double t = 0.25 * x * x;
    double term = 1.0, s = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= t / (static_cast<double>(k) * k);
        s += term;
        if (term < 1e-18 * s) break;
    }
    return s;
}

inline double bessel_i1_series(double x)
{
    const double t = 0.25 * x * x;
    double term = 1.0, s = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= t / (static_cast<double>(k) * (k + 1));
        s += term;
        if (term < 1e-18 * s) break;
    }
    return 0.5 * x * s;
}

// Euler-Mascheroni via H_n - ln n with the standard 1/(2n) - 1/(12n^2)
// acceleration.
inline double euler_gamma_limit()
{
    const int n = 100000;
    double h = 0.0;
    for (int k = 1; k <= n; ++k) h += 1.0 / k;
    const double dn = n;
    return h - std::log(dn) - 1.0 / (2.0 * dn) + 1.0 / (12.0 * dn * dn);
}

inline std::vector<double> log_spaced(double lo, double hi, int n)
{
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return out;
}

}  // namespace oracle
