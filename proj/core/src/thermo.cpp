#include "vxm/thermo.hpp"

#include <cmath>
#include <stdexcept>

#include "vxm/moduli_volume.hpp"

namespace vxm::thermo {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void check_state(const GasState& s)
{
    if (!(s.T > 0.0) || !(s.V > 0.0)) throw std::domain_error("thermo: T > 0 and V > 0 required");
    if (s.k_plus < 0 || s.k_minus < 0 || (s.k_plus == 0 && s.k_minus == 0))
        throw std::domain_error("thermo: charges must be nonnegative, not both zero");
    if (!(s.K > 0.0) || !(s.hbar > 0.0)) throw std::domain_error("thermo: K, hbar > 0 required");
}

moduli::ModuliParams to_params(const GasState& s)
{
    moduli::ModuliParams p;
    p.g = s.g;
    p.V = s.V;
    p.tau = s.tau;
    p.k_plus = s.k_plus;
    p.k_minus = s.k_minus;
    return p;  // e = infinity
}

double rest_energy(const GasState& s)
{
    return kTwoPi * ((1.0 - s.tau) * s.k_plus + (1.0 + s.tau) * s.k_minus);
}

double safe_log(double x, const char* what)
{
    if (!(x > 0.0)) throw std::domain_error(std::string("thermo: nonpositive log argument in ") + what);
    return std::log(x);
}

}  // namespace

double log_partition(const GasState& s)
{
    check_state(s);
    const double KT = s.K * s.T;
    const auto lv = moduli::log_glsm_volume(to_params(s));  // throws when infeasible
    return (s.k_plus + s.k_minus) * std::log(KT / (kTwoPi * s.hbar * s.hbar)) -
           rest_energy(s) / KT + lv.log_value;
}

double free_energy(const GasState& s, FreeEnergyMode mode)
{
    check_state(s);
    const double KT = s.K * s.T;
    if (mode == FreeEnergyMode::exact) return -KT * log_partition(s);

    const double np = s.k_plus / s.V, nm = s.k_minus / s.V;
    double F = rest_energy(s);
    const double e1 = std::exp(1.0);
    if (s.k_plus > 0)
        F -= KT * s.k_plus * safe_log(e1 * KT / (s.hbar * s.hbar * np), "free_energy");
    if (s.k_minus > 0)
        F -= KT * s.k_minus * safe_log(e1 * KT / (s.hbar * s.hbar * nm), "free_energy");
    F -= KT * s.k_plus * safe_log(1.0 - s.tau - kTwoPi * (np - nm), "free_energy");
    F -= KT * s.k_minus * safe_log(1.0 + s.tau - kTwoPi * (nm - np), "free_energy");
    const double t2 = 1.0 - s.tau * s.tau;
    const double num = t2 + kTwoPi * ((1.0 - s.tau) * np + (1.0 + s.tau) * nm);
    const double den = t2 - 2.0 * kTwoPi * s.tau * (np - nm) -
                       kTwoPi * kTwoPi * (np - nm) * (np - nm);
    F -= KT * s.g * safe_log(num / den, "free_energy genus term");
    return F;
}

double entropy(const GasState& s, EntropyMode mode)
{
    check_state(s);
    const double KT = s.K * s.T;
    const double np = s.k_plus / s.V, nm = s.k_minus / s.V;
    const double g = (mode == EntropyMode::with_genus) ? s.g : 0.0;
    double S = 0.0;
    const double e2 = std::exp(2.0);
    if (s.k_plus > 0) S += s.K * s.k_plus * safe_log(e2 * KT / (s.hbar * s.hbar * np), "entropy");
    if (s.k_minus > 0) S += s.K * s.k_minus * safe_log(e2 * KT / (s.hbar * s.hbar * nm), "entropy");
    S += s.K * (s.k_plus - g) * safe_log(1.0 - s.tau - kTwoPi * (np - nm), "entropy");
    S += s.K * (s.k_minus - g) * safe_log(1.0 + s.tau - kTwoPi * (nm - np), "entropy");
    if (mode == EntropyMode::with_genus) {
        const double t2 = 1.0 - s.tau * s.tau;
        S += s.K * s.g *
             safe_log(t2 + kTwoPi * ((1.0 - s.tau) * np + (1.0 + s.tau) * nm), "entropy genus term");
    }
    return S;
}

double entropy_exact(const GasState& s)
{
    check_state(s);
    return s.K * (log_partition(s) + s.k_plus + s.k_minus) + rest_energy(s) / s.T;
}

double pressure(const GasState& s, PressureMode mode)
{
    check_state(s);
    const double KT = s.K * s.T;
    const double np = s.k_plus / s.V, nm = s.k_minus / s.V;
    if (mode == PressureMode::thermodynamic_limit) {
        double P = 0.0;
        const double dp = s.V - kTwoPi / (1.0 - s.tau) * (s.k_plus - s.k_minus);
        const double dm = s.V - kTwoPi / (1.0 + s.tau) * (s.k_minus - s.k_plus);
        if (!(dp > 0.0) || !(dm > 0.0))
            throw std::domain_error("pressure: nonpositive denominator (infeasible state)");
        P += KT * s.k_plus / dp;
        P += KT * s.k_minus / dm;
        return P;
    }
    const double denp = 1.0 - s.tau - kTwoPi * (np - nm);
    const double denm = 1.0 + s.tau - kTwoPi * (nm - np);
    if (!(denp > 0.0) || !(denm > 0.0))
        throw std::domain_error("pressure: nonpositive denominator (infeasible state)");
    double P = KT * (np + nm);
    P += KT * (np - s.g / s.V) * kTwoPi * (np - nm) / denp;
    P += KT * (nm - s.g / s.V) * kTwoPi * (nm - np) / denm;
    const double t2 = 1.0 - s.tau * s.tau;
    const double mixed = kTwoPi * ((1.0 - s.tau) * np + (1.0 + s.tau) * nm);
    P += s.g * KT / s.V * mixed / (t2 + mixed);
    return P;
}

double pressure_exact(const GasState& s)
{
    check_state(s);
    const auto lv = moduli::log_glsm_volume(to_params(s));
    return s.K * s.T * lv.dlog_dV;
}

std::vector<VirialCoefficient> virial_coefficients(double tau, int order)
{
    if (!(std::abs(tau) < 1.0)) throw std::domain_error("virial_coefficients: |tau| < 1 required");
    if (order < 1 || order > 12) throw std::domain_error("virial_coefficients: order in [1, 12]");

    auto binom = [](int n, int k) -> long long {
        if (k < 0 || k > n) return 0;
        long long r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };

    std::vector<VirialCoefficient> out;
    for (int total = 1; total <= order; ++total)
        for (int a = total; a >= 0; --a) {
            const int b = total - a;
            const int n = total - 1;
            VirialCoefficient vc;
            vc.a = a;
            vc.b = b;
            vc.pi_power = n;
            const long long pw = 1LL << n;  // 2^n
            vc.c_plus = (a >= 1) ? pw * binom(n, b) * ((b % 2) ? -1 : 1) : 0;
            vc.c_minus = (b >= 1) ? pw * binom(n, a) * ((a % 2) ? -1 : 1) : 0;
            const double pin = std::pow(M_PI, n);
            vc.value = pin * (vc.c_plus / std::pow(1.0 - tau, n) +
                              vc.c_minus / std::pow(1.0 + tau, n));
            if (n == 0) {
                vc.symbolic = "1";
            } else {
                std::string s;
                if (vc.c_plus) s += std::to_string(vc.c_plus) + "*pi^" + std::to_string(n) +
                                    "/(1-tau)^" + std::to_string(n);
                if (vc.c_minus) {
                    if (!s.empty() && vc.c_minus > 0) s += " + ";
                    else if (!s.empty()) s += " ";
                    s += std::to_string(vc.c_minus) + "*pi^" + std::to_string(n) + "/(1+tau)^" +
                         std::to_string(n);
                }
                if (s.empty()) s = "0";
                vc.symbolic = s;
            }
            out.push_back(vc);
        }
    return out;
}

double virial_pressure(double tau, int order, double nu_plus, double nu_minus, double KT)
{
    double acc = 0.0;
    for (const auto& vc : virial_coefficients(tau, order))
        acc += vc.value * std::pow(nu_plus, vc.a) * std::pow(nu_minus, vc.b);
    return KT * acc;
}

MixingEntropy entropy_of_mixing(const GasState& s)
{
    check_state(s);
    if (s.k_plus < 1 || s.k_minus < 1)
        throw std::domain_error("entropy_of_mixing: both species must be present");
    // separated containers must individually satisfy the area bounds
    if (!(s.V / kTwoPi >= s.k_plus / (1.0 - s.tau) + s.k_minus / (1.0 + s.tau)))
        throw std::domain_error("entropy_of_mixing: separation infeasible at this area");

    const double t2 = 1.0 - s.tau * s.tau;
    MixingEntropy out;
    out.V_plus = (s.V + 2.0 * kTwoPi * s.tau / t2 * s.k_minus) /
                 (1.0 + static_cast<double>(s.k_minus) / s.k_plus);
    out.V_minus = (s.V - 2.0 * kTwoPi * s.tau / t2 * s.k_plus) /
                  (1.0 + static_cast<double>(s.k_plus) / s.k_minus);

    const double np = s.k_plus / s.V, nm = s.k_minus / s.V;
    auto species = [&](int ks, int ko, double ns, double no, double sgn) {
        const double ratio = 1.0 + no / ns;
        const double top = 1.0 - sgn * s.tau - kTwoPi * (ns - no);
        const double bot = 1.0 - sgn * s.tau -
                           kTwoPi * (ns + (1.0 - sgn * s.tau) / (1.0 + sgn * s.tau) * no);
        out.delta_S += s.K * ks * safe_log(ratio * top / bot, "entropy_of_mixing");
        out.delta_S_ideal += s.K * ks * std::log(ratio);
        (void)ko;
    };
    species(s.k_plus, s.k_minus, np, nm, +1.0);
    species(s.k_minus, s.k_plus, nm, np, -1.0);
    return out;
}

}  // namespace vxm::thermo
