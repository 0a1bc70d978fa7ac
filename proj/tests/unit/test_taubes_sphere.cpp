#include "doctest.h"

#include <cmath>

#include "vxm/taubes_sphere.hpp"

using namespace vxm;
using namespace vxm::sphere;

namespace {

PolarGrid quarter(int n) { return PolarGrid(n, n, M_PI / 2); }

double F_of(double x, double y, double v)
{
    const double am = (x - 1) * (x - 1) + y * y, ap = (x + 1) * (x + 1) + y * y;
    return (am * std::exp(v) - ap) / (am * std::exp(v) + ap);
}

}  // namespace

TEST_CASE("antipodal pair: eps*b(1) = -1 to machine precision")
{
    const auto sol = solve_sphere(1.0, 1.0, quarter(50));
    CHECK(sol.report.converged);
    CHECK(std::abs(extract_eps_b_sphere(sol) + 1.0) <= 1e-6);
}

TEST_CASE("sign estimates and the pointwise lower bound on the right half-disk")
{
    for (double eps : {1.0, 0.4, 0.1}) {
        const auto sol = solve_sphere(eps, 1.0, quarter(50));
        const PolarGrid& g = sol.hhat_upper.polar();
        for (const Field2D* f : {&sol.hhat_upper, &sol.hhat_lower})
            for (int j = 0; j < g.ntheta; ++j)
                for (int i = 0; i < g.nr; ++i) {
                    const double v = f->values[g.idx(i, j)];
                    const double x = g.r(i) * std::cos(g.theta(j));
                    const double y = g.r(i) * std::sin(g.theta(j));
                    CHECK(v >= -1e-8);  // hhat >= 0
                    if (i == 0) continue;
                    const double Fv = F_of(x, y, v);
                    CHECK(Fv <= 1e-8);  // F(w, hhat) <= 0
                    const double lb = -2.0 * x / (1.0 + g.r(i) * g.r(i));
                    CHECK(Fv >= lb - 1e-6);
                }
    }
}

TEST_CASE("poles and the imaginary axis stay pinned at zero")
{
    const auto sol = solve_sphere(0.3, 1.0, quarter(50));
    const PolarGrid& g = sol.hhat_upper.polar();
    for (int j = 0; j < g.ntheta; ++j) {
        CHECK(sol.hhat_upper.values[g.idx(0, j)] == 0.0);
        CHECK(sol.hhat_lower.values[g.idx(0, j)] == 0.0);
    }
    for (int i = 0; i < g.nr; ++i) {
        CHECK(sol.hhat_upper.values[g.idx(i, g.ntheta - 1)] == 0.0);
        CHECK(sol.hhat_lower.values[g.idx(i, g.ntheta - 1)] == 0.0);
    }
}

TEST_CASE("chart-swap symmetry: eps and 1/eps agree after relabeling")
{
    const auto a = solve_sphere(0.4, 1.0, quarter(40));
    const auto b = solve_sphere(2.5, 1.0, quarter(40));
    CHECK(b.swapped);
    CHECK((a.hhat_upper.values - b.hhat_lower.values).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((a.hhat_lower.values - b.hhat_upper.values).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("interface mismatch is a discretization-order diagnostic")
{
    elliptic::NewtonOptions opt;
    opt.tol = 1e-9;  // the pointwise floor crosses 1e-10 near 80^2
    const auto c = solve_sphere(0.5, 1.0, quarter(40), opt);
    const auto f = solve_sphere(0.5, 1.0, quarter(80), opt);
    CHECK(c.interface_mismatch < 0.2);
    CHECK(f.interface_mismatch < c.interface_mismatch);
}

TEST_CASE("declination profiles reproduce the expected ordering at the vortex")
{
    // larger eps curves lie above smaller ones at the equator crossing
    const PolarGrid g = quarter(50);
    double prev = -1.0;
    for (double eps : {0.05, 0.3, 1.0}) {
        const auto sol = solve_sphere(eps, 1.0, g);
        const double at_vortex = sol.hhat_upper.values[g.idx(g.nr - 1, 0)];
        CHECK(at_vortex > prev);
        prev = at_vortex;
    }
    // profile output covers both hemispheres and vanishes at the poles
    const auto sol = solve_sphere(0.3, 1.0, g);
    const auto prof = declination_profile(sol);
    CHECK(prof.theta_over_pi.front() == doctest::Approx(0.0));
    CHECK(prof.theta_over_pi.back() == doctest::Approx(1.0));
    CHECK(prof.hhat.front() == 0.0);
    CHECK(prof.hhat.back() == 0.0);
}

TEST_CASE("sweep table: A(1) = 0, A strictly decreasing, metric positive")
{
    std::vector<double> eps_list;
    for (double e = 1.0; e >= 0.06; e *= 0.82) eps_list.push_back(e);
    const auto tab = sphere_sweep(1.0, eps_list, quarter(50));
    REQUIRE(tab.eps.size() == eps_list.size());
    CHECK(std::abs(tab.A.back()) <= 1e-5);  // A(1) = 0
    for (std::size_t i = 1; i < tab.A.size(); ++i) CHECK(tab.A[i] < tab.A[i - 1]);
    for (double c : tab.g0_coeff) CHECK(c > 0.0);
    // |eps b + 1| grows with eps below the mid-range hump (it returns to
    // zero at the antipodal point)
    for (std::size_t i = 1; i < tab.eps_b.size() && tab.eps[i] <= 0.31; ++i)
        CHECK(std::abs(tab.eps_b[i] + 1.0) > std::abs(tab.eps_b[i - 1] + 1.0));
}

TEST_CASE("volume extrapolation hits the closed form at R = 1 and R = 2")
{
    std::vector<double> eps_list;
    for (double e = 1.0; e >= 0.02; e *= 0.82) eps_list.push_back(e);
    for (double R : {1.0, 2.0}) {
        const auto tab = sphere_sweep(R, eps_list, quarter(50));
        const auto vol = volume_s2_pairs(R, tab);
        const double area = 4.0 * M_PI * R * R;
        CHECK(vol.closed_form == doctest::Approx(std::pow(2.0 * M_PI * area, 2)).epsilon(1e-14));
        CHECK(vol.rel_gap <= 0.02);
        CHECK(vol.fit_exponent >= 0.4);
        CHECK(vol.fit_exponent <= 1.2);
    }
    // R = 1 closed form is (8 pi^2)^2; R = 2 gives (32 pi^2)^2
    CHECK(std::pow(8.0 * M_PI * M_PI, 2) == doctest::Approx(6234.18).epsilon(1e-5));
    CHECK(std::pow(32.0 * M_PI * M_PI, 2) == doctest::Approx(99746.9).epsilon(1e-5));
}

TEST_CASE("geodesic length to collision: finite, Cauchy, bounded")
{
    std::vector<double> eps_list;
    for (double e = 1.0; e >= 0.005; e *= 0.82) eps_list.push_back(e);
    const double R = 1.0;
    const auto tab = sphere_sweep(R, eps_list, quarter(50));

    const auto l1 = geodesic_length_to_collision(R, tab, 0.05);
    const auto l2 = geodesic_length_to_collision(R, tab, 0.02);
    const auto l3 = geodesic_length_to_collision(R, tab, 0.01);
    CHECK(std::isfinite(l3.total));
    CHECK(std::abs(l3.quadrature - l2.quadrature) < std::abs(l2.quadrature - l1.quadrature));

    // frozen-b comparison: with eps*b = -1 the integrand is the round part
    SphereTable flat = tab;
    for (auto& v : flat.eps_b) v = -1.0;
    centred_metric_sphere(flat);
    const auto lf = geodesic_length_to_collision(R, flat, 1e-4);
    const double closed = std::pow(M_PI, 1.5) * R;  // int_0^1 sqrt(16 pi R^2)/(1+e^2) de
    CHECK(lf.quadrature == doctest::Approx(closed).epsilon(0.02));
    CHECK(l3.total > 0.0);
    CHECK(l3.quadrature != doctest::Approx(lf.quadrature).epsilon(1e-3));  // b contributes

    // explicit upper bound in the C + C int eps^(-3/4) form
    CHECK(l3.total <= 4.0 * R * std::sqrt(M_PI) + 40.0);
}

TEST_CASE("H1 norm shrinks with eps at the proven rate or better")
{
    std::vector<double> eps_list;
    for (double e = 0.5; e >= 0.02; e *= 0.8) eps_list.push_back(e);
    const auto tab = sphere_sweep(1.0, eps_list, quarter(50));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = tab.eps.size();
    for (std::size_t i = 0; i < tab.eps.size(); ++i) {
        const double x = std::log(tab.eps[i]), y = std::log(tab.h1_norm[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope >= 0.4);
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS(solve_sphere(0.0, 1.0, quarter(40)));
    CHECK_THROWS(solve_sphere(0.5, -1.0, quarter(40)));
    CHECK_THROWS(solve_sphere(0.5, 1.0, PolarGrid(40, 40, M_PI)));  // wrong sector
}
