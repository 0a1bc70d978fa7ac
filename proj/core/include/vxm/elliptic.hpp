#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <limits>
#include <utility>

#include "vxm/grid.hpp"

namespace vxm::elliptic {

/// Standard 5-point Laplacian; interior nodes only, boundary nodes hold 0.
Field2D laplacian_rect(const Field2D& f);

/// Polar Laplacian f_rr + f_r/r + f_tt/r^2 at interior nodes; the r=0
/// node carries the averaged-neighbor stencil 4(<f(dr,.)> - f(0))/dr^2,
/// other boundary nodes hold 0.
Field2D laplacian_polar(const Field2D& f);

struct NewtonReport {
    int iterations = 0;
    double final_residual_sup = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    int damping_events = 0;
};

struct NewtonOptions {
    double tol = 1e-10;
    int max_iter = 50;
    int max_backtracks = 30;
    // direct factorization up to this many unknowns, CG-class iteration above
    int direct_limit = 200 * 200;
};

/// Discrete problem  residual(u) = L u - N(u) - source, with N acting
/// pointwise (diagonal Jacobian). Constraint rows (Dirichlet) are baked
/// into L as -identity with the value in source; their N entries must
/// stay 0. residual_weight rescales rows for the sup-norm test.
struct DiscreteSystem {
    Eigen::SparseMatrix<double> L;
    Eigen::VectorXd source;
    /// fills N(u) and dN(u)/du
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&, Eigen::VectorXd&)> nonlinearity;
    Eigen::VectorXd residual_weight;
    /// set when -(L - diag dN) is SPD; enables Cholesky / CG paths
    bool spd = false;
};

/// Damped Newton-Raphson with backtracking (halving, bounded); never
/// accepts a step that increases the sup-norm residual.
/// Throws on singular linear systems and on NaN in the iteration.
std::pair<Eigen::VectorXd, NewtonReport> newton_solve(const DiscreteSystem& sys,
                                                      Eigen::VectorXd u0,
                                                      const NewtonOptions& opt = {});

enum class Bc { Dirichlet, NeumannReflect };

/// Cell-weighted symmetric assembly of the 5-point Laplacian on a RectGrid
/// with per-side boundary conditions (sides: x=x0, x=xmax, y=y0, y=ymax).
/// Dirichlet values come from `dirichlet(x,y)` and are folded into the
/// source; Dirichlet rows are -identity. Unknown layout matches the grid.
struct RectProblem {
    RectGrid grid;
    Bc bc_x0 = Bc::Dirichlet, bc_x1 = Bc::Dirichlet;
    Bc bc_y0 = Bc::Dirichlet, bc_y1 = Bc::Dirichlet;
    std::function<double(double, double)> dirichlet;  // nullptr => 0
    std::function<double(double, double)> rhs;        // adds to source, nullptr => 0
};
DiscreteSystem assemble_rect(const RectProblem& p);

/// Same for a PolarGrid sector. r=0 and r=1 take Dirichlet (value from
/// `dirichlet(r,theta)`), theta sides choose Dirichlet or reflection.
struct PolarProblem {
    PolarGrid grid;
    Bc bc_theta0 = Bc::NeumannReflect, bc_theta1 = Bc::Dirichlet;
    std::function<double(double, double)> dirichlet;
    std::function<double(double, double)> rhs;
};
DiscreteSystem assemble_polar(const PolarProblem& p);

/// Cell weights used by the assemblers (the residual_weight vector);
/// handy for scaling pointwise nonlinearities consistently.
Eigen::VectorXd cell_weights_rect(const RectProblem& p);
Eigen::VectorXd cell_weights_polar(const PolarProblem& p);

}  // namespace vxm::elliptic
