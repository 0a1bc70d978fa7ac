#pragma once

#include <string>
#include <vector>

namespace vxm::thermo {

/// Thermodynamic state of the vortex-antivortex gas mixture.
struct GasState {
    int k_plus = 0;
    int k_minus = 0;
    double V = 0.0;    // area
    double T = 0.0;    // temperature
    double tau = 0.0;
    int g = 0;         // genus
    double K = 1.0;    // Boltzmann constant
    double hbar = 1.0;
};

/// ln Z = (k+ + k-) ln(KT/2 pi hbar^2) - (2 pi/KT)((1-tau)k+ + (1+tau)k-)
///        + ln Vol(M), the volume evaluated in log space.
double log_partition(const GasState& s);

enum class FreeEnergyMode { exact, asymptotic };
double free_energy(const GasState& s, FreeEnergyMode mode);

enum class EntropyMode { with_genus, plain };
double entropy(const GasState& s, EntropyMode mode);
/// -dF/dT of the exact pathway, in closed form.
double entropy_exact(const GasState& s);

enum class PressureMode { full, thermodynamic_limit };
double pressure(const GasState& s, PressureMode mode);
/// -dF/dV of the exact pathway (volume derivative taken analytically).
double pressure_exact(const GasState& s);

/// Virial coefficient of nu+^a nu-^b in P/KT:
///   value = pi^n [c_plus/(1-tau)^n + c_minus/(1+tau)^n],  n = a+b-1,
/// with exact integer c_plus/c_minus from the binomial expansion of the
/// two-species geometric series.
struct VirialCoefficient {
    int a = 0, b = 0;
    int pi_power = 0;
    long long c_plus = 0, c_minus = 0;
    double value = 0.0;
    std::string symbolic;
};
std::vector<VirialCoefficient> virial_coefficients(double tau, int order);

/// Pressure from the virial table truncated at `order`.
double virial_pressure(double tau, int order, double nu_plus, double nu_minus, double KT);

struct MixingEntropy {
    double delta_S = 0.0;
    double delta_S_ideal = 0.0;
    double V_plus = 0.0;
    double V_minus = 0.0;
};
/// Entropy gained when the separately contained species (equal pressure,
/// partial volumes V+ + V- = V) are mixed.
MixingEntropy entropy_of_mixing(const GasState& s);

}  // namespace vxm::thermo
