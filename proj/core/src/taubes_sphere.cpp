#include "vxm/taubes_sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vxm::sphere {

namespace {

struct ChartLayout {
    int nr, nth;
    int upper_count;  // (nr-1)*(nth-1), includes the ring i=nr-1
    int total;

    explicit ChartLayout(const PolarGrid& g)
        : nr(g.nr), nth(g.ntheta),
          upper_count((g.nr - 1) * (g.ntheta - 1)),
          total((g.nr - 1) * (g.ntheta - 1) + (g.nr - 2) * (g.ntheta - 1)) {}

    // chart 0 = upper (owns the ring), chart 1 = lower; -1 marks Dirichlet 0,
    // -2 the reflection face at theta = 0 (no flux)
    int gid(int chart, int i, int j) const
    {
        if (j < 0) return -2;
        if (j >= nth - 1) return -1;    // theta = pi/2 (imaginary axis)
        if (i <= 0) return -1;          // chart centre
        if (chart == 1 && i == nr - 1) chart = 0;
        if (chart == 0) return (i - 1) + (nr - 1) * j;
        return upper_count + (i - 1) + (nr - 2) * j;
    }
};

double metric_factor(double R, double e, double r)
{
    const double d = 1.0 + e * e * r * r;
    return 8.0 * R * R * e * e / (d * d);
}

}  // namespace

SphereSolution solve_sphere(double eps, double R, const PolarGrid& grid,
                            const elliptic::NewtonOptions& opt, const SphereSolution* warm_start)
{
    if (!(eps > 0.0)) throw std::invalid_argument("solve_sphere: eps > 0 required");
    if (!(R > 0.0)) throw std::invalid_argument("solve_sphere: R > 0 required");
    if (std::abs(grid.theta_max - M_PI / 2) > 1e-12)
        throw std::invalid_argument("solve_sphere: quarter-disk grid (theta_max = pi/2) required");

    const bool swapped = eps > 1.0;
    const double e_up = swapped ? 1.0 / eps : eps;
    const double e_low = 1.0 / e_up;

    const ChartLayout lay(grid);
    const int nr = grid.nr, nth = grid.ntheta;
    const double dr = grid.dr(), dth = grid.dtheta();
    const int n = lay.total;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(5 * n);
    Eigen::VectorXd weight(n), gfac(n), am(n), ap(n);

    for (int chart = 0; chart < 2; ++chart) {
        const int imax = (chart == 0) ? nr - 1 : nr - 2;
        const double e_chart = (chart == 0) ? e_up : e_low;
        for (int j = 0; j < nth - 1; ++j) {
            const double wth = (j == 0) ? 0.5 : 1.0;
            for (int i = 1; i <= imax; ++i) {
                const int me = lay.gid(chart, i, j);
                const double r = grid.r(i);
                double diag = 0.0;
                if (i < nr - 1) {
                    for (int s = -1; s <= 1; s += 2) {
                        const double coef = wth * (r + 0.5 * s * dr) * dth / dr;
                        diag -= coef;
                        const int nb = lay.gid(chart, i + s, j);
                        if (nb >= 0) trip.emplace_back(me, nb, coef);
                    }
                    for (int s = -1; s <= 1; s += 2) {
                        const int nb = lay.gid(chart, i, j + s);
                        if (nb == -2) continue;  // reflection face carries no flux
                        const double coef = dr / (r * dth);
                        diag -= coef;
                        if (nb >= 0) trip.emplace_back(me, nb, coef);
                    }
                    weight[me] = wth * r * dr * dth;
                    gfac[me] = metric_factor(R, e_chart, r);
                } else {
                    // ring row: straddle cell, half width in each chart
                    for (int ch = 0; ch < 2; ++ch) {
                        const double coef = wth * (1.0 - 0.5 * dr) * dth / dr;
                        diag -= coef;
                        const int nb = lay.gid(ch, nr - 2, j);
                        if (nb >= 0) trip.emplace_back(me, nb, coef);
                    }
                    for (int s = -1; s <= 1; s += 2) {
                        const int nb = lay.gid(chart, i, j + s);
                        if (nb == -2) continue;
                        const double coef = dr / dth;
                        diag -= coef;
                        if (nb >= 0) trip.emplace_back(me, nb, coef);
                    }
                    weight[me] = wth * dr * dth;
                    gfac[me] = metric_factor(R, e_up, 1.0);  // equals the lower value at r=1
                }
                trip.emplace_back(me, me, diag);
                const double x = r * std::cos(grid.theta(j)), y = r * std::sin(grid.theta(j));
                am[me] = (x - 1.0) * (x - 1.0) + y * y;
                ap[me] = (x + 1.0) * (x + 1.0) + y * y;
            }
        }
    }

    elliptic::DiscreteSystem sys;
    sys.L.resize(n, n);
    sys.L.setFromTriplets(trip.begin(), trip.end());
    sys.L.makeCompressed();
    sys.source = Eigen::VectorXd::Zero(n);
    sys.residual_weight = weight;
    sys.spd = true;
    sys.nonlinearity = [&](const Eigen::VectorXd& u, Eigen::VectorXd& N, Eigen::VectorXd& dN) {
        N.resize(n);
        dN.resize(n);
        for (int id = 0; id < n; ++id) {
            const double E = am[id] * std::exp(u[id]);
            const double den = E + ap[id];
            const double pref = weight[id] * gfac[id];
            N[id] = pref * (E - ap[id]) / den;
            dN[id] = pref * 2.0 * E * ap[id] / (den * den);
        }
    };

    Eigen::VectorXd u0 = Eigen::VectorXd::Zero(n);
    if (warm_start && warm_start->hhat_upper.values.size() == grid.size() &&
        !warm_start->swapped == !swapped) {
        for (int chart = 0; chart < 2; ++chart) {
            const Field2D& f = (chart == 0) ? warm_start->hhat_upper : warm_start->hhat_lower;
            for (int j = 0; j < nth - 1; ++j)
                for (int i = 1; i <= ((chart == 0) ? nr - 1 : nr - 2); ++i)
                    u0[lay.gid(chart, i, j)] = f.values[grid.idx(i, j)];
        }
    }

    auto [u, rep] = elliptic::newton_solve(sys, u0, opt);
    if (!rep.converged) throw std::runtime_error("solve_sphere: Newton did not converge");

    SphereSolution sol;
    sol.eps = eps;
    sol.eps_solved = e_up;
    sol.R = R;
    sol.swapped = swapped;
    sol.report = rep;
    Field2D up(grid), low(grid);
    for (int j = 0; j < nth; ++j)
        for (int i = 0; i < nr; ++i) {
            const int gu = lay.gid(0, i, j);
            const int gl = lay.gid(1, i, j);
            up.values[grid.idx(i, j)] = (gu >= 0) ? u[gu] : 0.0;
            low.values[grid.idx(i, j)] = (gl >= 0) ? u[gl] : 0.0;
        }
    // a swapped solve relabels the charts so hhat_upper always belongs to
    // the requested eps
    sol.hhat_upper = swapped ? low : up;
    sol.hhat_lower = swapped ? up : low;

    // one-sided normal-derivative mismatch diagnostic along the ring
    double mism = 0.0;
    for (int j = 0; j < nth - 1; ++j) {
        auto oneside = [&](const Field2D& f) {
            const auto& v = f.values;
            return (3.0 * v[grid.idx(nr - 1, j)] - 4.0 * v[grid.idx(nr - 2, j)] +
                    v[grid.idx(nr - 3, j)]) / (2.0 * dr);
        };
        mism = std::max(mism, std::abs(oneside(sol.hhat_upper) + oneside(sol.hhat_lower)));
    }
    sol.interface_mismatch = mism;
    return sol;
}

namespace {

double onesided_d4(const Field2D& f, const PolarGrid& g)
{
    // fourth-order backward d/dr at r=1 along theta=0
    const double dr = g.dr();
    const auto& v = f.values;
    const int n = g.nr - 1;
    return (25.0 * v[g.idx(n, 0)] - 48.0 * v[g.idx(n - 1, 0)] + 36.0 * v[g.idx(n - 2, 0)] -
            16.0 * v[g.idx(n - 3, 0)] + 3.0 * v[g.idx(n - 4, 0)]) / (12.0 * dr);
}

}  // namespace

double extract_eps_b_sphere(const SphereSolution& sol)
{
    const PolarGrid& g = sol.hhat_upper.polar();
    if (g.nr < 6) throw std::runtime_error("extract_eps_b_sphere: grid too coarse for the stencil");
    const double a = onesided_d4(sol.hhat_upper, g);
    const double b = onesided_d4(sol.hhat_lower, g);
    // d/dw1 = +d/dr on the upper chart and -d/dr~ on the lower chart;
    // averaging cancels the even-order stencil error at eps=1 exactly
    return 0.5 * (a - b) - 1.0;
}

DeclinationProfile declination_profile(const SphereSolution& sol)
{
    const PolarGrid& g = sol.hhat_upper.polar();
    DeclinationProfile out;
    for (int i = 0; i < g.nr; ++i) {
        out.theta_over_pi.push_back(std::asin(g.r(i)) / M_PI);
        out.hhat.push_back(sol.hhat_upper.values[g.idx(i, 0)]);
    }
    for (int i = g.nr - 2; i >= 0; --i) {
        out.theta_over_pi.push_back((M_PI - std::asin(g.r(i))) / M_PI);
        out.hhat.push_back(sol.hhat_lower.values[g.idx(i, 0)]);
    }
    return out;
}

namespace {

double h1_norm_sq(const SphereSolution& sol)
{
    const PolarGrid& g = sol.hhat_upper.polar();
    const double dr = g.dr(), dth = g.dtheta();
    double acc = 0.0;
    for (const Field2D* f : {&sol.hhat_upper, &sol.hhat_lower}) {
        const auto& v = f->values;
        for (int j = 0; j < g.ntheta - 1; ++j)
            for (int i = 0; i < g.nr - 1; ++i) {
                const double rc = g.r(i) + 0.5 * dr;
                const double fr = (v[g.idx(i + 1, j)] - v[g.idx(i, j)]) / dr;
                const double ft = (v[g.idx(i, j + 1)] + v[g.idx(i + 1, j + 1)] -
                                   v[g.idx(i, j)] - v[g.idx(i + 1, j)]) / (2.0 * dth);
                const double vc = 0.25 * (v[g.idx(i, j)] + v[g.idx(i + 1, j)] +
                                          v[g.idx(i, j + 1)] + v[g.idx(i + 1, j + 1)]);
                const double conf = 2.0 / (1.0 + rc * rc);
                acc += (fr * fr + ft * ft / (rc * rc)) * rc * dr * dth;  // conformally invariant
                acc += vc * vc * conf * conf * rc * dr * dth;
            }
    }
    return 4.0 * acc;  // quarter disks represent the full sphere
}

}  // namespace

SphereTable sphere_sweep(double R, std::vector<double> eps_list, const PolarGrid& grid,
                         const elliptic::NewtonOptions& opt)
{
    std::sort(eps_list.begin(), eps_list.end());
    for (double e : eps_list)
        if (!(e > 0.0) || e > 1.0)
            throw std::invalid_argument("sphere_sweep: eps values must lie in (0, 1]");

    SphereTable tab;
    tab.R = R;
    const std::size_t n = eps_list.size();
    tab.eps = eps_list;
    tab.eps_b.resize(n);
    tab.h1_norm.resize(n);

    // continuation: start at eps = 1 and walk down, warm-starting
    SphereSolution prev = solve_sphere(1.0, R, grid, opt);
    for (std::size_t k = n; k-- > 0;) {
        SphereSolution sol = (eps_list[k] == 1.0)
                                 ? prev
                                 : solve_sphere(eps_list[k], R, grid, opt, &prev);
        tab.eps_b[k] = extract_eps_b_sphere(sol);
        tab.h1_norm[k] = std::sqrt(h1_norm_sq(sol));
        prev = std::move(sol);
    }
    centred_metric_sphere(tab);
    return tab;
}

void centred_metric_sphere(SphereTable& tab)
{
    const std::size_t n = tab.eps.size();
    if (n < 3) throw std::invalid_argument("centred_metric_sphere: need at least 3 samples");
    tab.A.resize(n);
    tab.g0_coeff.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double e = tab.eps[i];
        tab.A[i] = 2.0 * M_PI *
                   (2.0 * tab.R * tab.R * (1.0 - e * e) / (1.0 + e * e) - tab.eps_b[i] - 1.0);
        const std::size_t lo = (i == 0) ? 0 : (i == n - 1 ? n - 3 : i - 1);
        const double x0 = tab.eps[lo], x1 = tab.eps[lo + 1], x2 = tab.eps[lo + 2];
        const double y0 = tab.eps_b[lo], y1 = tab.eps_b[lo + 1], y2 = tab.eps_b[lo + 2];
        // nonuniform 3-point first derivative at tab.eps[i]
        const double xi = tab.eps[i];
        const double w0 = (2.0 * xi - x1 - x2) / ((x0 - x1) * (x0 - x2));
        const double w1 = (2.0 * xi - x0 - x2) / ((x1 - x0) * (x1 - x2));
        const double w2 = (2.0 * xi - x0 - x1) / ((x2 - x0) * (x2 - x1));
        const double sp = w0 * y0 + w1 * y1 + w2 * y2;
        tab.g0_coeff[i] =
            2.0 * M_PI * (8.0 * tab.R * tab.R / ((1.0 + e * e) * (1.0 + e * e)) + sp / e);
    }
}

VolumeResult volume_s2_pairs(double R, const SphereTable& tab)
{
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < tab.eps.size(); ++i)
        if (tab.eps[i] <= 0.12) {
            xs.push_back(tab.eps[i]);
            ys.push_back(tab.eps_b[i]);
        }
    if (xs.size() < 4)
        throw std::runtime_error("volume_s2_pairs: too few small-eps samples for extrapolation");

    auto fit = [&](double p, double& c, double& a) {
        double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double t = std::pow(xs[i], p);
            s1 += 1.0; sx += t; sxx += t * t; sy += ys[i]; sxy += t * ys[i];
        }
        const double det = s1 * sxx - sx * sx;
        c = (sxx * sy - sx * sxy) / det;
        a = (s1 * sxy - sx * sy) / det;
        double r2 = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double d = ys[i] - c - a * std::pow(xs[i], p);
            r2 += d * d;
        }
        return r2;
    };

    // golden-section over the exponent
    double lo = 0.4, hi = 1.2;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double c, a;
    double f1 = fit(x1, c, a), f2 = fit(x2, c, a);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) { hi = x2; x2 = x1; f2 = f1; x1 = hi - gr * (hi - lo); f1 = fit(x1, c, a); }
        else { lo = x1; x1 = x2; f1 = f2; x2 = lo + gr * (hi - lo); f2 = fit(x2, c, a); }
    }
    const double p = 0.5 * (lo + hi);
    fit(p, c, a);
    if (!std::isfinite(c) || !std::isfinite(a))
        throw std::runtime_error("volume_s2_pairs: extrapolation ill-conditioned");

    VolumeResult out;
    out.fit_limit = c;
    out.fit_amplitude = a;
    out.fit_exponent = p;
    const double area = 4.0 * M_PI * R * R;
    out.extrapolated = 4.0 * M_PI * M_PI * (area - 2.0 * M_PI * (c + 1.0)) *
                       (area - 2.0 * M_PI * (c + 1.0));
    out.closed_form = (2.0 * M_PI * area) * (2.0 * M_PI * area);
    out.rel_gap = std::abs(out.extrapolated - out.closed_form) / out.closed_form;
    return out;
}

GeodesicLength geodesic_length_to_collision(double R, const SphereTable& tab, double eps_min)
{
    if (tab.g0_coeff.empty())
        throw std::invalid_argument("geodesic_length_to_collision: table lacks metric data");
    GeodesicLength out;
    std::vector<double> xs, ph;
    for (std::size_t i = 0; i < tab.eps.size(); ++i) {
        if (tab.eps[i] < eps_min || tab.eps[i] > 1.0) continue;
        if (!(tab.g0_coeff[i] >= 0.0))
            throw std::runtime_error("geodesic_length_to_collision: negative integrand (bad table)");
        xs.push_back(tab.eps[i]);
        ph.push_back(std::sqrt(tab.g0_coeff[i]));
    }
    if (xs.size() < 2)
        throw std::runtime_error("geodesic_length_to_collision: too few samples above eps_min");
    for (std::size_t i = 1; i < xs.size(); ++i)
        out.quadrature += 0.5 * (ph[i] + ph[i - 1]) * (xs[i] - xs[i - 1]);

    // tail below eps_min: sqrt split of the two metric contributions,
    // |d(eps b)/deps| <= C/sqrt(eps) calibrated on the small-eps samples
    double C = 0.0;
    for (std::size_t i = 0; i < tab.eps.size(); ++i)
        if (tab.eps[i] <= 0.12) {
            const double e = tab.eps[i];
            // reconstruct s' from g0: g0/2pi - 8R^2/(1+e^2)^2 = s'/e
            const double sp = e * (tab.g0_coeff[i] / (2.0 * M_PI) -
                                   8.0 * R * R / ((1.0 + e * e) * (1.0 + e * e)));
            C = std::max(C, std::abs(sp) * std::sqrt(e));
        }
    out.tail_bound = 4.0 * R * std::sqrt(M_PI) * eps_min +
                     4.0 * std::sqrt(2.0 * M_PI * C) * std::pow(eps_min, 0.25);
    out.total = out.quadrature + out.tail_bound;
    return out;
}

}  // namespace vxm::sphere
