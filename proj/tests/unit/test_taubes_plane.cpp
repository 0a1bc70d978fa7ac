#include "doctest.h"

#include <cmath>
#include <complex>

#include "vxm/geometry.hpp"
#include "vxm/pointvortex.hpp"
#include "vxm/specfun.hpp"
#include "vxm/taubes_plane.hpp"

using namespace vxm;
using namespace vxm::plane;

TEST_CASE("grid policy: vortex node on mesh, extent rule honored")
{
    for (double eps : {0.05, 0.3, 1.0, 3.0}) {
        const auto g = plane_grid(eps);
        const double L = (g.nx - 1) * g.hx;
        CHECK(L >= std::max(18.5 / eps, 8.0) - 1e-9);
        const double m = 1.0 / g.hx;
        CHECK(std::abs(m - std::lround(m)) < 1e-12);  // w = 1 lands on a node
    }
    CHECK_THROWS(plane_grid(0.0));
    CHECK_THROWS(plane_grid(-2.0));
}

TEST_CASE("profile shape at small separation: zero at origin, one max, decay")
{
    const double eps = 0.05;
    const auto sol = solve_plane(eps, plane_grid(eps, {140, 18.5, 8.0}));
    CHECK(sol.report.converged);
    const RectGrid& g = sol.hhat.rect();
    CHECK(sol.hhat.values[g.idx(0, 0)] == 0.0);
    // single interior maximum along the real axis
    int maxima = 0;
    for (int i = 1; i < g.nx - 1; ++i) {
        const double l = sol.hhat.values[g.idx(i - 1, 0)];
        const double c = sol.hhat.values[g.idx(i, 0)];
        const double r = sol.hhat.values[g.idx(i + 1, 0)];
        if (c > l && c >= r) ++maxima;
    }
    CHECK(maxima == 1);
    // decay at the far end
    const double far = std::abs(sol.hhat.values[g.idx(g.nx - 2, 0)]);
    const double peak = sol.hhat.values.maxCoeff();
    CHECK(far < 0.02 * peak);
    // discrete sign estimate on the right half-plane
    CHECK(sol.hhat.values.minCoeff() >= -1e-8);
}

TEST_CASE("the zero field solves the formal eps -> 0 limit")
{
    // residual of hhat = 0 is 2 eps^2 F(w, 0): vanishing with the prefactor
    const auto g = plane_grid(1.0, {60, 18.5, 8.0});
    double supF0 = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            const double x = g.x(i), y = g.y(j);
            const double am = (x - 1) * (x - 1) + y * y, ap = (x + 1) * (x + 1) + y * y;
            supF0 = std::max(supF0, std::abs((am - ap) / (am + ap)));
        }
    CHECK(supF0 <= 1.0);  // so the residual is bounded by 2 eps^2 -> 0
}

TEST_CASE("reflexion antisymmetry: the mirrored problem yields the negated field")
{
    // mirroring x -> -x swaps |w-1| and |w+1|; the mirrored nonlinearity
    // F~(w,v) = -F(w,-v), so u~ = -u solves the mirrored system
    const double eps = 0.8;
    const auto grid = plane_grid(eps, {80, 18.5, 8.0});
    const auto sol = solve_plane(eps, grid);

    elliptic::RectProblem prob;
    prob.grid = grid;
    prob.bc_y0 = elliptic::Bc::NeumannReflect;
    auto sys = elliptic::assemble_rect(prob);
    const int n = grid.size();
    Eigen::VectorXd am(n), ap(n), mask(n);
    const Eigen::VectorXd w = sys.residual_weight;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const int id = grid.idx(i, j);
            const double x = grid.x(i), y = grid.y(j);
            am[id] = (x + 1) * (x + 1) + y * y;  // swapped roles
            ap[id] = (x - 1) * (x - 1) + y * y;
            mask[id] = (i == 0 || i == grid.nx - 1 || j == grid.ny - 1) ? 0.0 : 1.0;
        }
    sys.nonlinearity = [&](const Eigen::VectorXd& u, Eigen::VectorXd& N, Eigen::VectorXd& dN) {
        N.resize(n);
        dN.resize(n);
        for (int id = 0; id < n; ++id) {
            const double E = am[id] * std::exp(u[id]);
            const double den = E + ap[id];
            N[id] = mask[id] * w[id] * 2.0 * eps * eps * (E - ap[id]) / den;
            dN[id] = mask[id] * w[id] * 2.0 * eps * eps * 2.0 * E * ap[id] / (den * den);
        }
    };
    auto [u, rep] = elliptic::newton_solve(sys, Eigen::VectorXd::Zero(n));
    REQUIRE(rep.converged);
    CHECK((u + sol.hhat.values).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("extract_b: eps*b vanishes at wide separation, near -1 at close range")
{
    // wide pair: the interaction tail is Bessel-small
    const auto s3 = solve_plane(3.0, plane_grid(3.0));
    const double b3 = extract_b(s3);
    CHECK(std::abs(3.0 * b3) <= 0.05);
    const double btail = -(7.1388 * 7.1388 / (2.0 * M_PI * M_PI)) * specfun::bessel_k1(6.0);
    CHECK(std::abs(b3 - btail) <= 0.3 * std::abs(btail));

    // close pair: eps*b approaches -1
    const auto s005 = solve_plane(0.05, plane_grid(0.05, {140, 18.5, 8.0}));
    CHECK(std::abs(0.05 * extract_b(s005) + 1.0) <= 0.05);
}

TEST_CASE("conformal table: descent, two-route Lambda identity, determinism")
{
    std::vector<double> eps_list;
    for (double e = 0.6; e <= 2.01; e *= 1.12) eps_list.push_back(e);
    const GridPolicy pol{120, 18.5, 8.0};
    const auto tab = conformal_table_plane(eps_list, pol, 1);
    tab.validate();
    for (std::size_t i = 1; i < tab.size(); ++i) CHECK(tab.F[i] < tab.F[i - 1]);
    for (std::size_t i = 0; i < tab.size(); ++i) {
        // Lambda = (b' + b/eps)/4 must agree with the F-route by identity
        const double viaF = 0.25 * (tab.F[i] / (2.0 * M_PI) - 2.0);
        const double viaB = 0.25 * (tab.bprime[i] + tab.b[i] / tab.eps[i]);
        CHECK(viaB == doctest::Approx(viaF).epsilon(1e-6));
    }
    const auto tab2 = conformal_table_plane(eps_list, pol, 2);
    for (std::size_t i = 0; i < tab.size(); ++i) {
        CHECK(tab2.b[i] == tab.b[i]);  // workers must not change results
        CHECK(tab2.F[i] == tab.F[i]);
    }
}

TEST_CASE("pair metric: coefficients, translation invariance, positivity")
{
    const auto tab = geometry::make_table_hybrid(nullptr, -7.1388, 0.05, 30.0, 24);

    using C = std::complex<double>;
    const auto m1 = pair_metric_plane(C(1.0, 0.0), C(-1.0, 0.0), tab);
    const auto m2 = pair_metric_plane(C(5.0, 2.0), C(3.0, 2.0), tab);  // same separation
    CHECK(m1.diag == doctest::Approx(m2.diag).epsilon(1e-12));
    CHECK(m1.cross == doctest::Approx(m2.cross).epsilon(1e-12));

    // flat product limit at wide separation
    const auto mfar = pair_metric_plane(C(20.0, 0.0), C(-20.0, 0.0), tab);
    CHECK(mfar.diag == doctest::Approx(2.0 * M_PI).epsilon(1e-6));
    CHECK(std::abs(mfar.cross) <= 1e-5);

    // positive definiteness: eigenvalues 2pi and 2pi(1 + 2 Lambda)
    for (double sep = 0.2; sep <= 20.0; sep *= 1.5) {
        const auto m = pair_metric_plane(C(sep / 2, 0.0), C(-sep / 2, 0.0), tab);
        CHECK(m.diag - std::abs(m.cross) > 0.0);
        CHECK(m.diag + m.cross > 0.0);
    }
    CHECK_THROWS(pair_metric_plane(C(1.0, 1.0), C(1.0, 1.0), tab));
}

TEST_CASE("self-similar profile: sampling and interpolation")
{
    const auto sol = solve_plane(1.0, plane_grid(1.0, {60, 18.5, 8.0}));
    const auto prof = self_similar_profile(sol);
    const RectGrid& g = sol.hhat.rect();
    CHECK(prof.x.front() == 0.0);
    CHECK(prof.x.back() == doctest::Approx(1.0 * g.x(g.nx - 1)));
    CHECK(prof.f.front() == 0.0);
    // interpolation reproduces nodes and midpoints linearly
    CHECK(prof.at(prof.x[5]) == doctest::Approx(prof.f[5]));
    const double mid = 0.5 * (prof.x[5] + prof.x[6]);
    CHECK(prof.at(mid) == doctest::Approx(0.5 * (prof.f[5] + prof.f[6])));
}

TEST_CASE("incompleteness integrand: int sqrt(F_star) converges at the origin")
{
    // Cauchy differences of int_{eps_min}^{delta} sqrt(F_star) shrink as
    // eps_min -> 0 (radial geodesics reach the collision in finite length)
    const double delta = 0.5;
    auto quad = [&](double lo) {
        const int n = 4000;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double a = lo + (delta - lo) * i / n;
            const double b = lo + (delta - lo) * (i + 1) / n;
            acc += 0.5 * (std::sqrt(pointvortex::F_star(a)) + std::sqrt(pointvortex::F_star(b))) *
                   (b - a);
        }
        return acc;
    };
    const double q1 = quad(1e-2), q2 = quad(1e-3), q3 = quad(1e-4);
    CHECK(std::abs(q3 - q2) < std::abs(q2 - q1));
    CHECK(std::abs(q3 - q2) < 0.02);
}
