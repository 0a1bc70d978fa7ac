#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "vxm/pointvortex.hpp"
#include "vxm/specfun.hpp"

using namespace vxm;
using namespace vxm::pointvortex;

namespace {

const RadialProfile& shared_profile()
{
    static RadialProfile p = solve_radial_vortex(20.0, 2001);
    return p;
}

}  // namespace

TEST_CASE("radial profile: monotone rise to zero, exponential tail")
{
    const auto& p = shared_profile();
    for (std::size_t i = 2; i < p.r.size(); ++i) {
        CHECK(p.h[i] < 0.0);
        if (std::abs(p.h[i]) < 1e-8) break;  // beyond this the tail sits at solver noise
        CHECK(p.h[i] > p.h[i - 1]);
    }
    CHECK(std::abs(p.h.back()) <= 5.0 * std::exp(-p.r_max) + 5e-10);  // solver floor allowance
}

TEST_CASE("radial profile: grid halving moves h(5) by less than 1e-6")
{
    const auto& p1 = shared_profile();
    const auto p2 = solve_radial_vortex(20.0, 4001);
    const auto at5 = [](const RadialProfile& p) {
        const double dr = p.r_max / (p.r.size() - 1);
        return p.h[static_cast<std::size_t>(std::lround(5.0 / dr))];
    };
    CHECK(std::abs(at5(p1) - at5(p2)) < 1e-6);
}

TEST_CASE("charge fit lands on the reported value and is window-stable")
{
    const auto& p = shared_profile();
    const auto fit = extract_q(p);
    CHECK(fit.c < 0.0);            // h < 0 forces a negative tail coefficient
    CHECK(fit.q >= -7.35);
    CHECK(fit.q <= -6.95);
    CHECK(fit.fit_residual < 1e-3);

    // +-20% window moves q by < 1%
    const auto lo = extract_q(p, 0.40, 0.70);
    const auto hi = extract_q(p, 0.60, 0.80);
    CHECK(std::abs(lo.q / fit.q - 1.0) < 0.01);
    CHECK(std::abs(hi.q / fit.q - 1.0) < 0.01);
}

TEST_CASE("charge fit rejects a window inside the nonlinear core")
{
    const auto& p = shared_profile();
    CHECK_THROWS_AS(extract_q(p, 0.02, 0.12), std::runtime_error);
}

TEST_CASE("F_infinity: limits and monotonicity")
{
    const double q = -7.1388;
    CHECK(F_infinity(50.0, q) == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
    // frozen spot value at eps = 1 via K0(2)
    CHECK(F_infinity(1.0, q) ==
          doctest::Approx(2.0 * M_PI * (2.0 + q * q / (M_PI * M_PI) * 0.1138938727495334))
              .epsilon(1e-9));
    double prev = F_infinity(0.05, q);
    for (double e = 0.1; e < 6.0; e += 0.1) {
        const double cur = F_infinity(e, q);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("F_star: value, expansion remainder, positivity and descent")
{
    CHECK(F_star(0.05) == doctest::Approx(65.8163739637).epsilon(1e-9));
    CHECK(std::abs(F_star(0.05) - 65.63) / 65.63 < 0.05);
    CHECK(std::abs(F_star(0.01) - F_star_expansion(0.01)) / F_star(0.01) <= 1e-3);
    // F_star is positive throughout and decreases until its minimum near
    // eps ~ 1.34 (it then climbs back towards 4 pi)
    double prev = F_star(0.005);
    for (double e = 0.01; e <= 1.3; e += 0.005) {
        const double cur = F_star(e);
        CHECK(cur < prev);
        prev = cur;
    }
    for (double e = 0.01; e <= 50.0; e *= 1.3) CHECK(F_star(e) > 0.0);
}

TEST_CASE("f_star profile: symmetry, boundedness, interior maximum")
{
    CHECK(f_star_profile({0.0, 2.5}) == 0.0);
    CHECK(f_star_profile({1.3, -0.4}) == doctest::Approx(-f_star_profile({-1.3, 0.4})));
    CHECK_THROWS_AS(f_star_profile({0.0, 0.0}), std::domain_error);

    // x f*(x) -> 0 at 0, f* -> 0 at infinity, single interior maximum
    CHECK(std::abs(1e-4 * f_star_profile({1e-4, 0.0})) < 1e-6);
    CHECK(std::abs(f_star_profile({30.0, 0.0})) < 0.14);
    int maxima = 0;
    double prev2 = f_star_profile({0.01, 0.0}), prev1 = f_star_profile({0.02, 0.0});
    for (double x = 0.03; x <= 20.0; x += 0.01) {
        const double cur = f_star_profile({x, 0.0});
        if (prev1 > prev2 && prev1 >= cur) ++maxima;
        prev2 = prev1;
        prev1 = cur;
    }
    CHECK(maxima == 1);
}

TEST_CASE("f_star solves the screened Poisson equation pointwise")
{
    // lap f* - f* + 4 cos(theta)/r = 0; finite differences at scattered points
    const double h = 1e-4;
    for (double r : {0.5, 1.0, 2.2, 3.7, 5.0}) {
        for (double th : {0.1, 0.7, 1.3}) {
            const double x = r * std::cos(th), y = r * std::sin(th);
            auto f = [](double a, double b) { return f_star_profile({a, b}); };
            const double lap = (f(x + h, y) + f(x - h, y) + f(x, y + h) + f(x, y - h) -
                                4.0 * f(x, y)) / (h * h);
            const double res = lap - f(x, y) + 4.0 * std::cos(th) / r;
            CHECK(std::abs(res) <= 1e-6);
        }
    }
}

TEST_CASE("radial ODE residual of the Bessel solution")
{
    // R(r) = (4/r)(1 - r K1(r)) satisfies r^2 R'' + r R' - (r^2+1) R + 4r = 0;
    // fourth-order stencils keep the finite-difference floor below 1e-8
    const double h = 1e-3;
    auto R = [](double r) { return 4.0 / r * (1.0 - r * specfun::bessel_k1(r)); };
    for (double r : oracle::log_spaced(0.3, 10.0, 40)) {
        const double d1 = (-R(r + 2 * h) + 8 * R(r + h) - 8 * R(r - h) + R(r - 2 * h)) / (12 * h);
        const double d2 = (-R(r + 2 * h) + 16 * R(r + h) - 30 * R(r) + 16 * R(r - h) -
                           R(r - 2 * h)) / (12 * h * h);
        const double res = r * r * d2 + r * d1 - (r * r + 1.0) * R(r) + 4.0 * r;
        CHECK(std::abs(res) / (1.0 + r * r) <= 1e-8);
    }
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS(solve_radial_vortex(10.0, 2001));
    CHECK_THROWS(solve_radial_vortex(24.0, 100));
    CHECK_THROWS(F_star(0.0));
    CHECK_THROWS(F_infinity(-1.0, -7.0));
}
