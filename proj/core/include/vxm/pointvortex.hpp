#pragma once

#include <complex>
#include <vector>

#include "vxm/elliptic.hpp"

namespace vxm::pointvortex {

/// Radially symmetric single-vortex profile: h'' + h'/r = 2 tanh(h/2)
/// with h = 2 ln r + v near the origin, v'(0) = 0, and a K0-tail Robin
/// condition at r_max. h < 0 on (0, r_max], rising monotonically to 0.
struct RadialProfile {
    double r_max = 0.0;
    std::vector<double> r;
    std::vector<double> h;  // h(0) = -inf is not stored; h[0] refers to r=0 via v
    std::vector<double> v;  // regular part, h = 2 ln r + v
    elliptic::NewtonReport report;
};

RadialProfile solve_radial_vortex(double r_max, int n);

/// K0-tail fit h(r) ~ c K0(r) on [lo_frac, hi_frac]*r_max and the scalar
/// charge under the calibration q = pi c. The window is rejected when
/// log|h| against log K0 shows curvature (still inside the nonlinear core).
struct ChargeFit {
    double q = 0.0;
    double c = 0.0;
    double r_lo = 0.0, r_hi = 0.0;
    double fit_residual = 0.0;  // relative rms of h - c K0 over the window
    double curvature = 0.0;     // quadratic coefficient of log|h| vs log K0
};
ChargeFit extract_q(const RadialProfile& profile, double lo_frac = 0.50, double hi_frac = 0.75);

/// Large-separation conformal factor 2 pi (2 + q^2/pi^2 K0(2 eps)).
double F_infinity(double eps, double q);

/// Small-separation conformal factor 4 pi (1 + 2 K0(eps) - 2 eps K1(eps)).
double F_star(double eps);

/// Logarithmic expansion of F_star through the eps^2 term.
double F_star_expansion(double eps);

/// Self-similar limit profile f*(z) = (2(z+zbar)/|z|^2)(1 - |z| K1(|z|)).
double f_star_profile(std::complex<double> z);

}  // namespace vxm::pointvortex
