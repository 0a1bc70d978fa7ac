#pragma once

#include <vector>

#include "vxm/conformal_table.hpp"

namespace vxm::geometry {

/// Gauss curvature K = -(1/(2 eps F)) d/deps (eps d(ln F)/deps) by nested
/// centered differences; sampled at the doubly-interior table nodes.
struct CurvatureSamples {
    std::vector<double> eps;
    std::vector<double> K;
};
CurvatureSamples gauss_curvature(const ConformalTable& table);

/// Total curvature: the direct quadrature of K F eps deps dpsi over the
/// table span, and the boundary term pi eps F'/F at both ends (the
/// small-eps end is the paper's limit expression, analytic value 0).
struct TotalCurvature {
    double quadrature = 0.0;
    double boundary_term_small = 0.0;
    double boundary_term_large = 0.0;
};
TotalCurvature total_gauss_curvature(const ConformalTable& table);

/// Generating curve of the isometric embedding as a surface of revolution:
/// rho = eps sqrt(F), z' = sqrt(F - rho'^2). Inflexion points are sign
/// changes of the planar curvature of (rho, z).
struct EmbeddingCurve {
    std::vector<double> eps;
    std::vector<double> rho;
    std::vector<double> z;
    std::vector<double> inflexion_eps;
    double cone_deficit = 0.0;  // 2 pi (1 - rho'/sqrt(F)) at the inner end
};
EmbeddingCurve embedding_curve(const ConformalTable& table);

/// Log-spaced table from the closed-form small-eps factor alone.
ConformalTable make_table_f_star(double eps_lo, double eps_hi, int per_decade);

/// Hybrid table over [eps_lo, eps_hi]: F_star below the numeric window,
/// the numeric data inside it, F_infinity above, blended C^1 in ln(eps)
/// over one decade at each seam (partition of unity). Passing no numeric
/// table splices the two closed forms directly.
ConformalTable make_table_hybrid(const ConformalTable* numeric, double q, double eps_lo,
                                 double eps_hi, int per_decade);

}  // namespace vxm::geometry
