#pragma once

namespace vxm::specfun {

/// Modified Bessel function of the second kind, order 0.
/// Power series with log term for x <= 2, Thompson-Barnett continued
/// fraction for x > 2. Relative error below 1e-13 on [1e-6, 700];
/// returns exact 0 once exp(-x) underflows.
/// Throws std::domain_error for x <= 0.
double bessel_k0(double x);

/// Modified Bessel function of the second kind, order 1. Same scheme
/// and accuracy as bessel_k0.
double bessel_k1(double x);

/// Euler-Mascheroni constant, stored to full double precision.
double euler_gamma();

}
