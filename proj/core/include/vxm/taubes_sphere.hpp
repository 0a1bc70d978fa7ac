#pragma once

#include <optional>
#include <vector>

#include "vxm/elliptic.hpp"
#include "vxm/grid.hpp"

namespace vxm::sphere {

/// Two-chart solution of the regularized pair equation on the round
/// sphere of radius R,
///   lap_w hhat = 8 R^2 e^2/(1 + e^2 |w|^2)^2 F(w, hhat),
/// with e = eps on the upper chart and e = 1/eps on the lower chart
/// (stereographic coordinate w, vortex at w=1). Each chart is reduced to
/// the quarter disk theta in [0, pi/2] by the reflection/odd symmetries;
/// the ring |w|=1 is a single shared set of unknowns, so the matching
/// condition holds exactly nodewise.
struct SphereSolution {
    double eps = 0.0;   // as requested (may exceed 1)
    double eps_solved = 0.0;  // min(eps, 1/eps), the upper-chart parameter
    double R = 1.0;
    bool swapped = false;     // true when eps > 1 triggered the chart swap
    Field2D hhat_upper;
    Field2D hhat_lower;
    elliptic::NewtonReport report;
    /// max over the ring of the one-sided normal-derivative gap; O(dr)
    double interface_mismatch = 0.0;
};

SphereSolution solve_sphere(double eps, double R, const PolarGrid& grid,
                            const elliptic::NewtonOptions& opt = {},
                            const SphereSolution* warm_start = nullptr);

/// eps*b(eps) = d hhat/dw1 |_{w=1} - 1. The derivative combines the
/// fourth-order one-sided radial stencils of both charts; at eps=1 the
/// combination vanishes identically by the chart-swap symmetry.
double extract_eps_b_sphere(const SphereSolution& sol);

/// hhat along the real axis against declination over the full sphere,
/// for Figure-5-style output: theta_decl = asin(r) on the upper chart,
/// pi - asin(r~) on the lower.
struct DeclinationProfile {
    std::vector<double> theta_over_pi;
    std::vector<double> hhat;
};
DeclinationProfile declination_profile(const SphereSolution& sol);

/// eps-sweep table with derived metric quantities. Rows ascend in eps.
struct SphereTable {
    double R = 1.0;
    std::vector<double> eps;
    std::vector<double> eps_b;
    std::vector<double> A;         // 2 pi (2R^2(1-e^2)/(1+e^2) - eps b - 1)
    std::vector<double> g0_coeff;  // 2 pi (8R^2/(1+e^2)^2 + (eps b)'/eps)
    std::vector<double> h1_norm;   // discrete H1(S^2) norm of hhat
};

/// Warm-started continuation from eps = 1 downward over eps_list
/// (any order; solved descending, returned ascending).
SphereTable sphere_sweep(double R, std::vector<double> eps_list, const PolarGrid& grid,
                         const elliptic::NewtonOptions& opt = {});

/// Recompute the derived columns (A, g0_coeff) for a table of eps_b values.
void centred_metric_sphere(SphereTable& table);

/// Moduli-space volume: extrapolates eps*b -> eps=0 with the model
/// c + a eps^p (p in [0.4, 1.2]) and compares with the closed form
/// (2 pi * 4 pi R^2)^2.
struct VolumeResult {
    double extrapolated = 0.0;
    double closed_form = 0.0;
    double rel_gap = 0.0;
    double fit_limit = 0.0;     // fitted c (expected -1)
    double fit_amplitude = 0.0;
    double fit_exponent = 0.0;
};
VolumeResult volume_s2_pairs(double R, const SphereTable& table);

/// Length of the centred-pair curve from eps_min to the antipodal
/// configuration eps=1, plus a small-eps tail bound from the
/// |d(eps b)/deps| <= C/sqrt(eps) rate.
struct GeodesicLength {
    double quadrature = 0.0;
    double tail_bound = 0.0;
    double total = 0.0;
};
GeodesicLength geodesic_length_to_collision(double R, const SphereTable& table,
                                            double eps_min);

}  // namespace vxm::sphere
