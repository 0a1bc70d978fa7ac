#include "vxm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vxm/fdweights.hpp"
#include "vxm/specfun.hpp"

namespace vxm::geometry {

namespace {

// nonuniform 3-point first derivative of y at node i (centered inside,
// one-sided at the ends); differences are taken against y[i] so constant
// data yields an exact zero
double d1_at(const std::vector<double>& x, const std::vector<double>& y, std::size_t i)
{
    const std::size_t n = x.size();
    const std::size_t lo = (i == 0) ? 0 : (i == n - 1 ? n - 3 : i - 1);
    const std::vector<double> xs{x[lo], x[lo + 1], x[lo + 2]};
    const auto w = fd_weights(x[i], xs, 1);
    return w[0] * (y[lo] - y[i]) + w[1] * (y[lo + 1] - y[i]) + w[2] * (y[lo + 2] - y[i]);
}

}  // namespace

CurvatureSamples gauss_curvature(const ConformalTable& tab)
{
    const std::size_t n = tab.size();
    if (n < 5) throw std::invalid_argument("gauss_curvature: need at least 5 samples");
    tab.validate();

    std::vector<double> lf(n), u(n);
    for (std::size_t i = 0; i < n; ++i) lf[i] = std::log(tab.F[i]);
    for (std::size_t i = 0; i < n; ++i) u[i] = tab.eps[i] * d1_at(tab.eps, lf, i);

    CurvatureSamples out;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double up = d1_at(tab.eps, u, i);
        out.eps.push_back(tab.eps[i]);
        out.K.push_back(-up / (2.0 * tab.eps[i] * tab.F[i]));
    }
    return out;
}

TotalCurvature total_gauss_curvature(const ConformalTable& tab)
{
    tab.validate();
    const std::size_t n = tab.size();
    if (n < 5) throw std::invalid_argument("total_gauss_curvature: need at least 5 samples");

    const auto cs = gauss_curvature(tab);
    TotalCurvature out;
    // 2 pi  int K F eps deps  on the curvature nodes (table nodes 1..n-2)
    double acc = 0.0;
    for (std::size_t i = 1; i < cs.eps.size(); ++i) {
        const double ga = cs.K[i - 1] * tab.F[i] * cs.eps[i - 1];
        const double gb = cs.K[i] * tab.F[i + 1] * cs.eps[i];
        acc += 0.5 * (ga + gb) * (cs.eps[i] - cs.eps[i - 1]);
    }
    out.quadrature = 2.0 * M_PI * acc;
    out.boundary_term_small = M_PI * tab.eps.front() * d1_at(tab.eps, tab.F, 0) / tab.F.front();
    out.boundary_term_large = M_PI * tab.eps.back() * d1_at(tab.eps, tab.F, n - 1) / tab.F.back();
    return out;
}

EmbeddingCurve embedding_curve(const ConformalTable& tab)
{
    tab.validate();
    const std::size_t n = tab.size();
    if (n < 5) throw std::invalid_argument("embedding_curve: need at least 5 samples");

    EmbeddingCurve out;
    out.eps = tab.eps;
    out.rho.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.rho[i] = tab.eps[i] * std::sqrt(tab.F[i]);

    std::vector<double> rp(n), zp(n);
    for (std::size_t i = 0; i < n; ++i) {
        rp[i] = d1_at(tab.eps, out.rho, i);
        const double arg = tab.F[i] - rp[i] * rp[i];
        if (arg < -1e-9 * tab.F[i])
            throw std::runtime_error("embedding_curve: embeddability violated at eps = " +
                                     std::to_string(tab.eps[i]));
        zp[i] = std::sqrt(std::max(arg, 0.0));
    }
    out.z.resize(n);
    out.z[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        out.z[i] = out.z[i - 1] + 0.5 * (zp[i] + zp[i - 1]) * (tab.eps[i] - tab.eps[i - 1]);

    // planar curvature sign changes: kappa ~ rho' z'' - z' rho''. A sign
    // counts as established only after three consecutive nodes agree, so
    // single-node differencing blips near the zero crossing are ignored.
    std::vector<double> kappa(n, 0.0);
    double kmax = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double rpp = d1_at(tab.eps, rp, i);
        const double zpp = d1_at(tab.eps, zp, i);
        // a node with z' ~ 0 relative to sqrt(F) lies on a straight piece;
        // its curvature is differencing noise
        if (zp[i] * zp[i] > 1e-9 * tab.F[i]) kappa[i] = rp[i] * zpp - zp[i] * rpp;
        kmax = std::max(kmax, std::abs(kappa[i]));
    }
    // short moving average: percent-level table noise wobbles kappa where
    // it passes through zero, while the physical crossing is macroscopic
    std::vector<double> smooth(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double acc = 0.0;
        int cnt = 0;
        for (std::size_t j = (i >= 3 ? i - 3 : 1); j <= std::min(i + 3, n - 2); ++j) {
            acc += kappa[j];
            ++cnt;
        }
        smooth[i] = acc / cnt;
    }
    const double dead = 1e-6 * kmax;
    int confirmed = 0, run_sign = 0, run_len = 0;
    double last_eps = tab.eps.front();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const int s = (smooth[i] > dead) ? 1 : (smooth[i] < -dead ? -1 : 0);
        if (s == 0) continue;
        if (s == run_sign) ++run_len;
        else { run_sign = s; run_len = 1; }
        if (run_len == 3) {
            if (confirmed != 0 && run_sign != confirmed)
                out.inflexion_eps.push_back(0.5 * (last_eps + tab.eps[i - 2]));
            confirmed = run_sign;
            last_eps = tab.eps[i];
        } else if (run_len > 3 && run_sign == confirmed) {
            last_eps = tab.eps[i];
        }
    }
    out.cone_deficit = 2.0 * M_PI * (1.0 - rp[0] / std::sqrt(tab.F[0]));
    return out;
}

namespace {

double b_star(double e)
{
    return -5.0 / e + 4.0 * e * specfun::bessel_k0(e) + 4.0 * specfun::bessel_k1(e);
}

double b_infinity(double e, double q)
{
    return -(q * q / (2.0 * M_PI * M_PI)) * specfun::bessel_k1(2.0 * e);
}

double smoothstep(double t)
{
    t = std::clamp(t, 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

void push_row(ConformalTable& t, double e, double F, double b, Provenance p)
{
    const double comb = F / (2.0 * M_PI) - 2.0;  // b' + b/eps
    t.eps.push_back(e);
    t.F.push_back(F);
    t.b.push_back(b);
    t.bprime.push_back(comb - b / e);
    t.lambda.push_back(0.25 * comb);
    t.provenance.push_back(p);
}

std::vector<double> log_spaced(double lo, double hi, int per_decade)
{
    const int n = std::max(2, static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade)) + 1);
    std::vector<double> out(n);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
    return out;
}

}  // namespace

ConformalTable make_table_f_star(double eps_lo, double eps_hi, int per_decade)
{
    if (!(0.0 < eps_lo && eps_lo < eps_hi))
        throw std::invalid_argument("make_table_f_star: bad range");
    ConformalTable t;
    for (double e : log_spaced(eps_lo, eps_hi, per_decade)) {
        const double F = 4.0 * M_PI * (1.0 + 2.0 * specfun::bessel_k0(e) -
                                       2.0 * e * specfun::bessel_k1(e));
        push_row(t, e, F, b_star(e), Provenance::f_star);
    }
    t.validate();
    return t;
}

namespace {

double lnF_star(double e)
{
    return std::log(4.0 * M_PI * (1.0 + 2.0 * specfun::bessel_k0(e) -
                                  2.0 * e * specfun::bessel_k1(e)));
}

double lnF_inf(double e, double q)
{
    return std::log(2.0 * M_PI * (2.0 + q * q / (M_PI * M_PI) * specfun::bessel_k0(2.0 * e)));
}

double lerp_column(const ConformalTable& t, const std::vector<double>& col, double e)
{
    std::size_t k = 0;
    while (k + 2 < t.size() && t.eps[k + 1] < e) ++k;
    const double tt = (e - t.eps[k]) / (t.eps[k + 1] - t.eps[k]);
    return (1.0 - tt) * col[k] + tt * col[k + 1];
}

double hermite(double t, double y0, double m0, double y1, double m1, double width)
{
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * width * m0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * width * m1;
}

}  // namespace

ConformalTable make_table_hybrid(const ConformalTable* numeric, double q, double eps_lo,
                                 double eps_hi, int per_decade)
{
    if (!(0.0 < eps_lo && eps_lo < eps_hi))
        throw std::invalid_argument("make_table_hybrid: bad range");
    const double ln10 = std::log(10.0);

    // seam geometry in lambda = ln(eps): each bridge takes up to one decade
    double la = std::log(0.3), lb = std::log(3.0);
    if (numeric) {
        la = std::log(numeric->eps_min());
        lb = std::log(numeric->eps_max());
    }
    const double bridge = numeric ? std::min(ln10, (lb - la) / 3.0) : (lb - la);
    const double la2 = la + bridge;
    const double lb1 = numeric ? lb - bridge : lb;

    // numeric ln F and its lambda-slope at the seam ends
    const double dl = 1e-4;
    auto ln_num = [&](double lam) { return std::log(lerp_column(*numeric, numeric->F, std::exp(lam))); };
    auto slope = [&](auto f, double lam) { return (f(lam + dl) - f(lam - dl)) / (2.0 * dl); };
    auto ls = [&](double lam) { return lnF_star(std::exp(lam)); };
    auto li = [&](double lam) { return lnF_inf(std::exp(lam), q); };

    ConformalTable t;
    for (double e : log_spaced(eps_lo, eps_hi, per_decade)) {
        const double lam = std::log(e);
        double lf;
        Provenance p;
        if (lam <= la) {
            lf = ls(lam);
            p = Provenance::f_star;
        } else if (numeric && lam < la2) {
            lf = hermite((lam - la) / (la2 - la), ls(la), slope(ls, la), ln_num(la2),
                         slope(ln_num, la2), la2 - la);
            p = Provenance::f_star;
        } else if (numeric && lam <= lb1) {
            lf = ln_num(lam);
            p = Provenance::numeric;
        } else if (lam < lb) {
            if (numeric)
                lf = hermite((lam - lb1) / (lb - lb1), ln_num(lb1), slope(ln_num, lb1), li(lb),
                             slope(li, lb), lb - lb1);
            else
                lf = hermite((lam - la) / (lb - la), ls(la), slope(ls, la), li(lb),
                             slope(li, lb), lb - la);
            p = Provenance::f_infinity;
        } else {
            lf = li(lam);
            p = Provenance::f_infinity;
        }
        const double F = std::exp(lf);
        double b;
        if (p == Provenance::f_star) b = b_star(e);
        else if (p == Provenance::numeric) b = lerp_column(*numeric, numeric->b, e);
        else b = b_infinity(e, q);
        push_row(t, e, F, b, p);
    }
    t.validate();
    return t;
}

}  // namespace vxm::geometry
