#pragma once

#include <complex>
#include <vector>

#include "vxm/conformal_table.hpp"
#include "vxm/elliptic.hpp"
#include "vxm/grid.hpp"

namespace vxm::plane {

/// Converged solution of the regularized pair equation
///   lap hhat = 2 eps^2 F(w, hhat),  F(w,v) = (|w-1|^2 e^v - |w+1|^2)/(|w-1|^2 e^v + |w+1|^2)
/// on the upper-right quadrant [0,L]^2 of the w-plane. Dirichlet hhat=0
/// on x=0 and the far sides, reflection symmetry on y=0. The vortex
/// sits exactly on mesh node (vortex_index, 0).
struct PlaneSolution {
    double eps = 0.0;
    Field2D hhat;
    int vortex_index = 0;
    elliptic::NewtonReport report;
};

/// Grid construction policy. The w-extent satisfies
/// exp(-eps*L) <= exp(-decay_exponent), the spacing divides 1 exactly so
/// w=1 is a node, and the node count per side tracks `tier` when the
/// extent rule allows it.
struct GridPolicy {
    int tier = 200;
    double decay_exponent = 18.5;
    double min_extent = 8.0;
};

RectGrid plane_grid(double eps, const GridPolicy& pol = {});

PlaneSolution solve_plane(double eps, const RectGrid& grid,
                          const elliptic::NewtonOptions& opt = {});

/// Samols coefficient b(eps) = (d hhat/dx|_{w=1} - 1)/eps, fourth-order
/// stencil along the real axis with odd extension across x=0.
double extract_b(const PlaneSolution& sol);

/// f_eps(x) = hhat(x/eps)/eps sampled on the real axis (physical x).
struct RadialSamples {
    std::vector<double> x;
    std::vector<double> f;
    double at(double xq) const;  // linear interpolation
};
RadialSamples self_similar_profile(const PlaneSolution& sol);

/// Sweep eps_list (ascending), extract b per point, difference the
/// product eps*b for b' + b/eps, and assemble the table
/// F = 2 pi (2 + b' + b/eps), Lambda = (b' + b/eps)/4.
ConformalTable conformal_table_plane(const std::vector<double>& eps_list,
                                     const GridPolicy& pol = {}, int workers = 1);

/// Coefficients of the pair metric
///   g = diag*(|dz+|^2 + |dz-|^2) + cross*(dz+ dzbar- + dz- dzbar+),
/// diag = 2 pi (1 + Lambda), cross = -2 pi Lambda.
struct PairMetric {
    double diag;
    double cross;
    double lambda;
};
PairMetric pair_metric_plane(std::complex<double> z_plus, std::complex<double> z_minus,
                             const ConformalTable& table);

}  // namespace vxm::plane
