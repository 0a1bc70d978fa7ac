#pragma once

#include <limits>
#include <string>
#include <vector>

namespace vxm::moduli {

/// Parameters of a moduli-space volume / total-scalar-curvature
/// computation: genus g, surface area V, symmetry-breaking parameter tau,
/// vortex/antivortex charges, gauge coupling e (infinity recovers the
/// target model).
struct ModuliParams {
    int g = 0;
    double V = 0.0;
    double tau = 0.0;
    int k_plus = 0;
    int k_minus = 0;
    double e = std::numeric_limits<double>::infinity();
};

struct BradlowVerdict {
    bool feasible = false;
    bool strict = false;
    std::string violated;  // empty when feasible
    double cone_vertex_shift = 0.0;  // 2 pi k_-/(e^2 V), 0 at e = infinity
};

/// Area-charge bounds -(1+tau) V <= 2 pi (k+ - k-) <= (1-tau) V, with the
/// left bound shifted by the cone vertex at finite coupling.
BradlowVerdict bradlow_check(const ModuliParams& p, bool strict);

struct JKCoefficients {
    double J_plus = 0.0;
    double J_minus = 0.0;
    double K_plus = 0.0;
    double K_minus = 0.0;
};

/// Kahler-class coefficients; at e = infinity
/// J(+/-) = 2 pi (1 -/+ tau) V -/+ 4 pi^2 (k+ - k-), K(+/-) = 4 pi^2.
JKCoefficients jk_coefficients(const ModuliParams& p);

/// (g-l)!/(g-j-l)! with range checks; exact integer value.
double intersection_number(int g, int k, int j, int l);
/// Variant taking the sigma-class indices: 0 when any index repeats.
double intersection_number(int g, int k, int j, const std::vector<int>& indices);

/// Volume of the two-coupling linear model's moduli space (closed form).
double glsm_volume(const ModuliParams& p);
/// Its total scalar curvature.
double glsm_total_scal(const ModuliParams& p);

/// log of glsm_volume, evaluated in log space with signed accumulation;
/// also reports d(log Vol)/dV. Valid for large charges where the direct
/// sum would overflow.
struct LogVolume {
    double log_value = 0.0;
    double dlog_dV = 0.0;
};
LogVolume log_glsm_volume(const ModuliParams& p);

/// e -> infinity limits (conjectural for the target model).
double p1_volume(ModuliParams p);
double p1_total_scal(ModuliParams p);

}  // namespace vxm::moduli
