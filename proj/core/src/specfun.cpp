#include "vxm/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vxm::specfun {

namespace {

constexpr double kGamma = 0.5772156649015329;

// Ascending series on (0, 2], A&S 9.6.10-9.6.11 with the digamma sums
// rewritten via harmonic numbers. Terms are positive and decay at least
// factorially, so plain accumulation is fine.
void k0k1_series(double x, double& k0, double& k1)
{
    const double t = 0.25 * x * x;
    const double lg = std::log(0.5 * x) + kGamma;

    double term0 = 1.0;  // (t^k)/(k!)^2
    double term1 = 1.0;  // (t^k)/(k!(k+1)!)
    double i0 = 1.0, i1s = 1.0;
    double s0 = 0.0;     // sum H_k t^k/(k!)^2
    double s1 = 1.0;     // sum (H_k+H_{k+1}) t^k/(k!(k+1)!), k=0 term = H_1 = 1
    double hk = 0.0;
    for (int k = 1; k < 40; ++k) {
        term0 *= t / (static_cast<double>(k) * k);
        term1 *= t / (static_cast<double>(k) * (k + 1));
        hk += 1.0 / k;
        const double hk1 = hk + 1.0 / (k + 1);
        i0 += term0;
        i1s += term1;
        s0 += term0 * hk;
        s1 += term1 * (hk + hk1);
        if (term0 < 1e-18 * i0) break;
    }
    const double i1 = 0.5 * x * i1s;
    k0 = -lg * i0 + s0;
    k1 = lg * i1 + 1.0 / x - 0.25 * x * s1;
}

// Continued-fraction CF2 evaluation (Thompson & Barnett 1987) for
// K_0, K_1 at x > 2, via modified Lentz iteration.
void k0k1_cf2(double x, double& k0, double& k1)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double a1 = 0.25;  // 1/4 - nu^2 at nu = 0
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels) < std::abs(s) * eps) break;
    }
    h = a1 * h;
    const double pref = std::sqrt(1.5707963267948966 / x) * std::exp(-x);
    k0 = pref / s;
    k1 = k0 * (x + 0.5 - h) / x;
}

}  // namespace

double bessel_k0(double x)
{
    if (!(x > 0.0)) throw std::domain_error("bessel_k0: requires x > 0");
    double k0, k1;
    if (x <= 2.0) k0k1_series(x, k0, k1);
    else k0k1_cf2(x, k0, k1);
    return k0;
}

double bessel_k1(double x)
{
    if (!(x > 0.0)) throw std::domain_error("bessel_k1: requires x > 0");
    double k0, k1;
    if (x <= 2.0) k0k1_series(x, k0, k1);
    else k0k1_cf2(x, k0, k1);
    return k1;
}

double euler_gamma() { return kGamma; }

}  // namespace vxm::specfun
