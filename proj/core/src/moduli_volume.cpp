#include "vxm/moduli_volume.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace vxm::moduli {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double factorial(int n)
{
    if (n < 0) throw std::domain_error("factorial: negative argument");
    if (n > 170) throw std::domain_error("factorial: overflows double, use the log path");
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Kahan-compensated accumulator; keeps the sums permutation-stable
struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x)
    {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

void check_params(const ModuliParams& p)
{
    if (p.k_plus < 0 || p.k_minus < 0 || (p.k_plus == 0 && p.k_minus == 0))
        throw std::domain_error("moduli: charges must be nonnegative, not both zero");
    if (p.g < 0) throw std::domain_error("moduli: genus must be nonnegative");
    if (!(p.V > 0.0)) throw std::domain_error("moduli: area must be positive");
    if (!(p.e > 0.0)) throw std::domain_error("moduli: coupling must be positive");
    if (p.g >= 1 && std::min(p.k_plus, p.k_minus) <= 2 * p.g - 2)
        throw std::domain_error("moduli: charges must exceed 2g-2 for the closed forms");
    const auto verdict = bradlow_check(p, true);
    if (!verdict.strict)
        throw std::domain_error("moduli: infeasible parameters (" + verdict.violated + ")");
}

}  // namespace

BradlowVerdict bradlow_check(const ModuliParams& p, bool strict)
{
    BradlowVerdict v;
    const double lhs = kTwoPi * (p.k_plus - p.k_minus);
    const double upper = (1.0 - p.tau) * p.V;
    double lower = -(1.0 + p.tau) * p.V;
    if (std::isfinite(p.e)) {
        v.cone_vertex_shift = kTwoPi * p.k_minus / (p.e * p.e * p.V);
        lower += v.cone_vertex_shift * p.V;  // shift on the 2 pi (k+ - k-) scale
    }
    const bool lo_ok = strict ? (lhs > lower) : (lhs >= lower);
    const bool hi_ok = strict ? (lhs < upper) : (lhs <= upper);
    v.feasible = lo_ok && hi_ok;
    v.strict = v.feasible && strict;
    if (!strict) {
        // also report whether the strict version holds
        v.strict = (lhs > lower) && (lhs < upper);
    }
    if (!lo_ok) v.violated = "lower bound -(1+tau)V + 2 pi k-/e^2 <= 2 pi (k+ - k-)";
    else if (!hi_ok) v.violated = "upper bound 2 pi (k+ - k-) <= (1-tau)V";
    return v;
}

JKCoefficients jk_coefficients(const ModuliParams& p)
{
    const double dk = kTwoPi * kTwoPi * (p.k_plus - p.k_minus);
    const double e2inv = std::isfinite(p.e) ? 1.0 / (p.e * p.e) : 0.0;
    JKCoefficients jk;
    jk.J_plus = kTwoPi * (1.0 - p.tau) * p.V - dk;
    jk.J_minus = kTwoPi * (1.0 + p.tau) * p.V - kTwoPi * kTwoPi * e2inv * p.k_minus + dk;
    jk.K_plus = kTwoPi * kTwoPi;
    jk.K_minus = kTwoPi * kTwoPi * (1.0 + e2inv);
    return jk;
}

double intersection_number(int g, int k, int j, int l)
{
    if (l < 0 || l > g) throw std::domain_error("intersection_number: need 0 <= l <= g");
    if (j < 0 || j > std::min(g - l, k - l))
        throw std::domain_error("intersection_number: need 0 <= j <= min(g-l, k-l)");
    double v = 1.0;
    for (int i = g - j - l + 1; i <= g - l; ++i) v *= i;
    return v;
}

double intersection_number(int g, int k, int j, const std::vector<int>& indices)
{
    std::set<int> distinct(indices.begin(), indices.end());
    for (int i : indices)
        if (i < 1 || i > g) throw std::domain_error("intersection_number: index out of range");
    if (distinct.size() != indices.size()) return 0.0;
    return intersection_number(g, k, j, static_cast<int>(indices.size()));
}

namespace {

// inner sum over j_sigma for one species at fixed l
double volume_inner(int g, int l, int k, double J, double K)
{
    Kahan acc;
    for (int j = l; j <= g; ++j) {
        if (k - j < 0) continue;
        acc.add(std::pow(J, k - j) * std::pow(K, j - l) /
                (factorial(j - l) * factorial(g - j) * factorial(k - j)));
    }
    return acc.s;
}

}  // namespace

double glsm_volume(const ModuliParams& p)
{
    check_params(p);
    const auto jk = jk_coefficients(p);
    Kahan acc;
    for (int l = 0; l <= p.g; ++l) {
        const double pref = factorial(p.g) * factorial(p.g - l) / factorial(l) *
                            ((l % 2) ? -1.0 : 1.0) * std::pow(kTwoPi, 4 * l);
        acc.add(pref * volume_inner(p.g, l, p.k_plus, jk.J_plus, jk.K_plus) *
                volume_inner(p.g, l, p.k_minus, jk.J_minus, jk.K_minus));
    }
    if (!(acc.s > 0.0))
        throw std::domain_error("glsm_volume: nonpositive volume on a feasible instance");
    return acc.s;
}

namespace {

// int (J eta + K theta)^{k-l} sigma_{i_1..i_l} over Sym^k, via the pairing
// int eta^{k-j-l} theta^j sigma_l = (g-l)!/(g-j-l)!
double pair_integral(int g, int l, int k, double J, double K)
{
    Kahan acc;
    for (int j = 0; j <= std::min(g - l, k - l); ++j)
        acc.add(factorial(k - l) / (factorial(j) * factorial(k - l - j)) *
                std::pow(J, k - l - j) * std::pow(K, j) * factorial(g - l) /
                factorial(g - j - l));
    return acc.s;
}

// int c1(T Sym^k) (J eta + K theta)^{k-1-l} sigma_{i_1..i_l},
// c1 = (k - g + 1) eta - theta
double pair_integral_c1(int g, int l, int k, double J, double K)
{
    Kahan acc;
    for (int j = 0; j <= k - 1 - l; ++j) {
        const double binom = factorial(k - 1 - l) / (factorial(j) * factorial(k - 1 - l - j));
        if (g - j - l >= 0)
            acc.add((k - g + 1.0) * binom * std::pow(J, k - 1 - l - j) * std::pow(K, j) *
                    factorial(g - l) / factorial(g - j - l));
        if (g - j - 1 - l >= 0)
            acc.add(-binom * std::pow(J, k - 1 - l - j) * std::pow(K, j) *
                    factorial(g - l) / factorial(g - j - 1 - l));
    }
    return acc.s;
}

}  // namespace

double glsm_total_scal(const ModuliParams& p)
{
    check_params(p);
    const auto jk = jk_coefficients(p);
    const int kp = p.k_plus, km = p.k_minus, g = p.g;
    Kahan acc;
    for (int l = 0; l <= g; ++l) {
        const double pref = ((l % 2) ? -1.0 : 1.0) * std::pow(kTwoPi, 4 * l) * factorial(g) /
                            (factorial(l) * factorial(g - l));
        for (int sigma = 0; sigma < 2; ++sigma) {
            const int ks = sigma ? km : kp;
            const int ko = sigma ? kp : km;
            if (ks - 1 - l < 0 || ko - l < 0) continue;
            const double Js = sigma ? jk.J_minus : jk.J_plus;
            const double Jo = sigma ? jk.J_plus : jk.J_minus;
            const double Ks = sigma ? jk.K_minus : jk.K_plus;
            const double Ko = sigma ? jk.K_plus : jk.K_minus;
            acc.add(pref * pair_integral_c1(g, l, ks, Js, Ks) *
                    pair_integral(g, l, ko, Jo, Ko) /
                    (factorial(ks - 1 - l) * factorial(ko - l)));
        }
    }
    return 4.0 * M_PI * acc.s;
}

LogVolume log_glsm_volume(const ModuliParams& p)
{
    check_params(p);
    const auto jk = jk_coefficients(p);
    if (!(jk.J_plus > 0.0) || !(jk.J_minus > 0.0))
        throw std::domain_error("log_glsm_volume: nonpositive Kahler coefficient");
    const double lJp = std::log(jk.J_plus), lJm = std::log(jk.J_minus);
    const double lKp = std::log(jk.K_plus), lKm = std::log(jk.K_minus);
    const double dJp = kTwoPi * (1.0 - p.tau);  // dJ/dV
    const double dJm = kTwoPi * (1.0 + p.tau);

    struct Term {
        double log_mag;
        double sign;
        double dlog_dV;
    };
    std::vector<Term> terms;
    for (int l = 0; l <= p.g; ++l) {
        const double lpref = std::lgamma(p.g + 1.0) + std::lgamma(p.g - l + 1.0) -
                             std::lgamma(l + 1.0) + 4.0 * l * std::log(kTwoPi);
        for (int jp = l; jp <= p.g; ++jp) {
            if (p.k_plus - jp < 0) continue;
            for (int jm = l; jm <= p.g; ++jm) {
                if (p.k_minus - jm < 0) continue;
                double lm = lpref;
                lm += (p.k_plus - jp) * lJp + (jp - l) * lKp;
                lm += (p.k_minus - jm) * lJm + (jm - l) * lKm;
                lm -= std::lgamma(jp - l + 1.0) + std::lgamma(p.g - jp + 1.0) +
                      std::lgamma(p.k_plus - jp + 1.0);
                lm -= std::lgamma(jm - l + 1.0) + std::lgamma(p.g - jm + 1.0) +
                      std::lgamma(p.k_minus - jm + 1.0);
                const double dlog = (p.k_plus - jp) * dJp / jk.J_plus +
                                    (p.k_minus - jm) * dJm / jk.J_minus;
                terms.push_back({lm, (l % 2) ? -1.0 : 1.0, dlog});
            }
        }
    }
    double lmax = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms) lmax = std::max(lmax, t.log_mag);
    Kahan pos, neg, dsum;
    for (const auto& t : terms) {
        const double m = std::exp(t.log_mag - lmax);
        if (t.sign > 0) pos.add(m);
        else neg.add(m);
        dsum.add(t.sign * m * t.dlog_dV);
    }
    const double total = pos.s - neg.s;
    if (!(total > 0.0))
        throw std::domain_error("log_glsm_volume: nonpositive volume on a feasible instance");
    LogVolume out;
    out.log_value = lmax + std::log(total);
    out.dlog_dV = dsum.s / total;
    return out;
}

double p1_volume(ModuliParams p)
{
    p.e = std::numeric_limits<double>::infinity();
    return glsm_volume(p);
}

double p1_total_scal(ModuliParams p)
{
    p.e = std::numeric_limits<double>::infinity();
    return glsm_total_scal(p);
}

}  // namespace vxm::moduli
