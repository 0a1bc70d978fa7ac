#include "vxm/pointvortex.hpp"

#include <cmath>
#include <stdexcept>

#include "vxm/specfun.hpp"

namespace vxm::pointvortex {

RadialProfile solve_radial_vortex(double r_max, int n)
{
    if (!(r_max >= 20.0)) throw std::invalid_argument("solve_radial_vortex: r_max >= 20 required");
    if (n < 2000) throw std::invalid_argument("solve_radial_vortex: n >= 2000 required");

    const double dr = r_max / (n - 1);
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = i * dr;

    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd source = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd weight = Eigen::VectorXd::Ones(n);

    // r = 0: v'' + v'/r -> 2 v''(0), discretized with v'(0) = 0
    trip.emplace_back(0, 0, -4.0 / (dr * dr));
    trip.emplace_back(0, 1, 4.0 / (dr * dr));
    for (int i = 1; i < n - 1; ++i) {
        const double rp = r[i] + 0.5 * dr, rm = r[i] - 0.5 * dr;
        trip.emplace_back(i, i - 1, rm / (r[i] * dr * dr));
        trip.emplace_back(i, i + 1, rp / (r[i] * dr * dr));
        trip.emplace_back(i, i, -(rp + rm) / (r[i] * dr * dr));
    }
    // Robin tail on h = 2 ln r + v:  h'/h = K0'/K0 = -K1/K0 at r_max
    const double kappa = specfun::bessel_k1(r_max) / specfun::bessel_k0(r_max);
    trip.emplace_back(n - 1, n - 1, 1.5 / dr + kappa);
    trip.emplace_back(n - 1, n - 2, -2.0 / dr);
    trip.emplace_back(n - 1, n - 3, 0.5 / dr);
    source[n - 1] = -2.0 / r_max - 2.0 * std::log(r_max) * kappa;

    elliptic::DiscreteSystem sys;
    sys.L.resize(n, n);
    sys.L.setFromTriplets(trip.begin(), trip.end());
    sys.L.makeCompressed();
    sys.source = std::move(source);
    sys.residual_weight = weight;
    sys.spd = false;  // Robin row is one-sided
    sys.nonlinearity = [r, n](const Eigen::VectorXd& v, Eigen::VectorXd& N, Eigen::VectorXd& dN) {
        N.resize(n);
        dN.resize(n);
        for (int i = 0; i < n; ++i) {
            if (i == n - 1) { N[i] = 0.0; dN[i] = 0.0; continue; }
            const double E = r[i] * r[i] * std::exp(v[i]);
            N[i] = 2.0 * (E - 1.0) / (E + 1.0);
            dN[i] = 4.0 * E / ((E + 1.0) * (E + 1.0));
        }
    };

    Eigen::VectorXd v0(n);
    for (int i = 0; i < n; ++i) v0[i] = -std::log1p(r[i] * r[i]);
    auto [v, rep] = elliptic::newton_solve(sys, v0, {1e-9, 80});
    if (!rep.converged) throw std::runtime_error("solve_radial_vortex: Newton did not converge");

    RadialProfile out;
    out.r_max = r_max;
    out.r = std::move(r);
    out.v.assign(v.data(), v.data() + n);
    out.h.resize(n);
    out.h[0] = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < n; ++i) out.h[i] = 2.0 * std::log(out.r[i]) + out.v[i];
    out.report = rep;
    return out;
}

ChargeFit extract_q(const RadialProfile& p, double lo_frac, double hi_frac)
{
    if (!(0.0 < lo_frac && lo_frac < hi_frac && hi_frac <= 1.0))
        throw std::invalid_argument("extract_q: bad fit window");
    ChargeFit fit;
    fit.r_lo = lo_frac * p.r_max;
    fit.r_hi = hi_frac * p.r_max;

    double shk = 0.0, skk = 0.0;
    std::vector<double> lt, lh;
    for (std::size_t i = 1; i < p.r.size(); ++i) {
        if (p.r[i] < fit.r_lo || p.r[i] > fit.r_hi) continue;
        const double k0 = specfun::bessel_k0(p.r[i]);
        shk += p.h[i] * k0;
        skk += k0 * k0;
        lt.push_back(std::log(k0));
        lh.push_back(std::log(std::abs(p.h[i])));
    }
    if (lt.size() < 8) throw std::runtime_error("extract_q: fit window holds too few samples");
    fit.c = shk / skk;
    fit.q = M_PI * fit.c;

    // quadratic regression of log|h| on log K0: curvature flags a window
    // still inside the nonlinear core
    const std::size_t m = lt.size();
    double s0 = m, s1 = 0, s2 = 0, s3 = 0, s4 = 0, t0 = 0, t1 = 0, t2 = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = lt[i], y = lh[i];
        s1 += x; s2 += x * x; s3 += x * x * x; s4 += x * x * x * x;
        t0 += y; t1 += x * y; t2 += x * x * y;
    }
    Eigen::Matrix3d A;
    A << s0, s1, s2, s1, s2, s3, s2, s3, s4;
    Eigen::Vector3d rhs(t0, t1, t2);
    Eigen::Vector3d coef = A.fullPivLu().solve(rhs);
    fit.curvature = coef[2];
    // in the linear tail log|h| = log|c| + log K0: unit slope, no curvature
    if (std::abs(fit.curvature) > 0.002 || std::abs(coef[1] - 1.0) > 0.012)
        throw std::runtime_error("extract_q: fit window inside the nonlinear core");

    double rss = 0.0, ref = 0.0;
    for (std::size_t i = 1; i < p.r.size(); ++i) {
        if (p.r[i] < fit.r_lo || p.r[i] > fit.r_hi) continue;
        const double k0 = specfun::bessel_k0(p.r[i]);
        rss += (p.h[i] - fit.c * k0) * (p.h[i] - fit.c * k0);
        ref += p.h[i] * p.h[i];
    }
    fit.fit_residual = std::sqrt(rss / ref);
    return fit;
}

double F_infinity(double eps, double q)
{
    if (!(eps > 0.0)) throw std::invalid_argument("F_infinity: eps > 0 required");
    return 2.0 * M_PI * (2.0 + q * q / (M_PI * M_PI) * specfun::bessel_k0(2.0 * eps));
}

double F_star(double eps)
{
    if (!(eps > 0.0)) throw std::invalid_argument("F_star: eps > 0 required");
    return 4.0 * M_PI *
           (1.0 + 2.0 * specfun::bessel_k0(eps) - 2.0 * eps * specfun::bessel_k1(eps));
}

double F_star_expansion(double eps)
{
    if (!(eps > 0.0)) throw std::invalid_argument("F_star_expansion: eps > 0 required");
    const double g = specfun::euler_gamma();
    const double l = std::log(2.0 / eps);
    return 8.0 * M_PI * (l - 0.5 - g) + 2.0 * M_PI * (3.0 * l + 2.0 - 3.0 * g) * eps * eps;
}

double f_star_profile(std::complex<double> z)
{
    const double a = std::abs(z);
    if (!(a > 0.0)) throw std::domain_error("f_star_profile: z = 0");
    return (4.0 * z.real() / (a * a)) * (1.0 - a * specfun::bessel_k1(a));
}

}  // namespace vxm::pointvortex
