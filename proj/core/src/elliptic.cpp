#include "vxm/elliptic.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace vxm::elliptic {

Field2D laplacian_rect(const Field2D& f)
{
    const RectGrid& g = f.rect();
    Field2D out(g);
    const double cx = 1.0 / (g.hx * g.hx), cy = 1.0 / (g.hy * g.hy);
    for (int j = 1; j < g.ny - 1; ++j)
        for (int i = 1; i < g.nx - 1; ++i) {
            const auto& v = f.values;
            out.values[g.idx(i, j)] =
                (v[g.idx(i + 1, j)] + v[g.idx(i - 1, j)] - 2.0 * v[g.idx(i, j)]) * cx +
                (v[g.idx(i, j + 1)] + v[g.idx(i, j - 1)] - 2.0 * v[g.idx(i, j)]) * cy;
        }
    return out;
}

Field2D laplacian_polar(const Field2D& f)
{
    const PolarGrid& g = f.polar();
    Field2D out(g);
    const double dr = g.dr(), dth = g.dtheta();
    const auto& v = f.values;
    for (int j = 1; j < g.ntheta - 1; ++j)
        for (int i = 1; i < g.nr - 1; ++i) {
            const double r = g.r(i);
            const double frr = (v[g.idx(i + 1, j)] + v[g.idx(i - 1, j)] - 2.0 * v[g.idx(i, j)]) / (dr * dr);
            const double fr = (v[g.idx(i + 1, j)] - v[g.idx(i - 1, j)]) / (2.0 * dr);
            const double ftt = (v[g.idx(i, j + 1)] + v[g.idx(i, j - 1)] - 2.0 * v[g.idx(i, j)]) / (dth * dth);
            out.values[g.idx(i, j)] = frr + fr / r + ftt / (r * r);
        }
    // r = 0: averaged-neighbor stencil over the first ring (all j share the value at i=0)
    double ring = 0.0, wsum = 0.0;
    for (int j = 0; j < g.ntheta; ++j) {
        const double w = (j == 0 || j == g.ntheta - 1) ? 0.5 : 1.0;
        ring += w * v[g.idx(1, j)];
        wsum += w;
    }
    const double lap0 = 4.0 * (ring / wsum - v[g.idx(0, 0)]) / (dr * dr);
    for (int j = 0; j < g.ntheta; ++j) out.values[g.idx(0, j)] = lap0;
    return out;
}

namespace {

double weighted_sup(const Eigen::VectorXd& r, const Eigen::VectorXd& w)
{
    return (r.array() / w.array()).abs().maxCoeff();
}

struct LinearSolver {
    // keeps the symbolic factorization across Newton iterations
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    bool analyzed = false;

    // symmetric Jacobi equilibration: cell-weighted assemblies mix row
    // scales by orders of magnitude, which would otherwise surface the
    // factorization's backward error in the pointwise residual
    Eigen::VectorXd solve(const Eigen::SparseMatrix<double>& J, const Eigen::VectorXd& rhs,
                          bool spd, int direct_limit)
    {
        const Eigen::Index n = J.rows();
        Eigen::VectorXd d(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double di = std::abs(J.coeff(i, i));
            d[i] = (di > 0.0) ? 1.0 / std::sqrt(di) : 1.0;
        }
        Eigen::SparseMatrix<double> M = d.asDiagonal() * J * d.asDiagonal();
        Eigen::VectorXd b = d.asDiagonal() * rhs;
        Eigen::VectorXd y;
        if (spd) {
            M = (-M).eval();
            b = -b;
            if (n <= direct_limit) {
                if (!analyzed) { ldlt.analyzePattern(M); analyzed = true; }
                ldlt.factorize(M);
                if (ldlt.info() != Eigen::Success)
                    throw std::runtime_error(
                        "newton_solve: Cholesky factorization failed (singular system?)");
                y = ldlt.solve(b);
                y += ldlt.solve(b - M * y).eval();  // one refinement pass
            } else {
                cg.setTolerance(1e-13);
                cg.setMaxIterations(100000);
                cg.compute(M);
                y = cg.solve(b);
                if (cg.info() != Eigen::Success)
                    throw std::runtime_error("newton_solve: CG did not converge");
            }
        } else {
            lu.compute(M);
            if (lu.info() != Eigen::Success)
                throw std::runtime_error("newton_solve: LU factorization failed (singular system?)");
            y = lu.solve(b);
            y += lu.solve(b - M * y).eval();
        }
        return d.asDiagonal() * y;
    }
};

}  // namespace

std::pair<Eigen::VectorXd, NewtonReport> newton_solve(const DiscreteSystem& sys,
                                                      Eigen::VectorXd u, const NewtonOptions& opt)
{
    const int n = static_cast<int>(u.size());
    NewtonReport rep;
    Eigen::VectorXd N(n), dN(n), res(n);
    auto residual = [&](const Eigen::VectorXd& v, Eigen::VectorXd& out) {
        sys.nonlinearity(v, N, dN);
        out = sys.L * v - N - sys.source;
    };

    residual(u, res);
    if (!res.allFinite()) throw std::runtime_error("newton_solve: NaN in initial residual");
    double rn = weighted_sup(res, sys.residual_weight);
    rep.final_residual_sup = rn;
    if (rn <= opt.tol) {
        rep.converged = true;
        return {u, rep};
    }

    LinearSolver lin;
    Eigen::VectorXd cand(n), res_cand(n);
    for (int it = 1; it <= opt.max_iter; ++it) {
        sys.nonlinearity(u, N, dN);
        Eigen::SparseMatrix<double> J = sys.L;
        J -= Eigen::SparseMatrix<double>(dN.asDiagonal());
        Eigen::VectorXd delta = lin.solve(J, -res, sys.spd, opt.direct_limit);
        if (!delta.allFinite()) throw std::runtime_error("newton_solve: NaN in Newton step");

        double lambda = 1.0;
        bool accepted = false;
        for (int bt = 0; bt <= opt.max_backtracks; ++bt) {
            cand = u + lambda * delta;
            residual(cand, res_cand);
            if (!res_cand.allFinite()) throw std::runtime_error("newton_solve: NaN mid-iteration");
            const double rc = weighted_sup(res_cand, sys.residual_weight);
            if (rc < rn) {
                u.swap(cand);
                res.swap(res_cand);
                rn = rc;
                accepted = true;
                break;
            }
            lambda *= 0.5;
            ++rep.damping_events;
        }
        rep.iterations = it;
        rep.final_residual_sup = rn;
        if (!accepted) return {u, rep};  // stalled; converged stays false
        if (rn <= opt.tol) {
            rep.converged = true;
            return {u, rep};
        }
    }
    return {u, rep};
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

struct Side {
    Bc bc;
    // mirror index for reflection across this side
};

}  // namespace

Eigen::VectorXd cell_weights_rect(const RectProblem& p)
{
    const RectGrid& g = p.grid;
    Eigen::VectorXd w = Eigen::VectorXd::Ones(g.size());
    auto dirichlet_node = [&](int i, int j) {
        return (i == 0 && p.bc_x0 == Bc::Dirichlet) || (i == g.nx - 1 && p.bc_x1 == Bc::Dirichlet) ||
               (j == 0 && p.bc_y0 == Bc::Dirichlet) || (j == g.ny - 1 && p.bc_y1 == Bc::Dirichlet);
    };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (dirichlet_node(i, j)) { w[g.idx(i, j)] = 1.0; continue; }
            double wij = 1.0;
            if (i == 0 || i == g.nx - 1) wij *= 0.5;  // reflect edges only reach here
            if (j == 0 || j == g.ny - 1) wij *= 0.5;
            w[g.idx(i, j)] = wij;
        }
    return w;
}

DiscreteSystem assemble_rect(const RectProblem& p)
{
    const RectGrid& g = p.grid;
    const int n = g.size();
    const double cx = 1.0 / (g.hx * g.hx), cy = 1.0 / (g.hy * g.hy);
    auto gval = [&](int i, int j) {
        return p.dirichlet ? p.dirichlet(g.x(i), g.y(j)) : 0.0;
    };
    auto dirichlet_node = [&](int i, int j) {
        return (i == 0 && p.bc_x0 == Bc::Dirichlet) || (i == g.nx - 1 && p.bc_x1 == Bc::Dirichlet) ||
               (j == 0 && p.bc_y0 == Bc::Dirichlet) || (j == g.ny - 1 && p.bc_y1 == Bc::Dirichlet);
    };

    Eigen::VectorXd w = cell_weights_rect(p);
    Eigen::VectorXd source = Eigen::VectorXd::Zero(n);
    Triplets trip;
    trip.reserve(5 * n);

    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int me = g.idx(i, j);
            if (dirichlet_node(i, j)) {
                trip.emplace_back(me, me, -1.0);
                source[me] = -gval(i, j);
                continue;
            }
            const double wij = w[me];
            double diag = 0.0;
            // each direction: (di, dj, coef)
            const int di[4] = {1, -1, 0, 0};
            const int dj[4] = {0, 0, 1, -1};
            const double cc[4] = {cx, cx, cy, cy};
            for (int k = 0; k < 4; ++k) {
                int ii = i + di[k], jj = j + dj[k];
                const double coef = wij * cc[k];
                diag -= coef;
                // reflect across Neumann sides
                if (ii < 0) ii = 1;
                if (ii > g.nx - 1) ii = g.nx - 2;
                if (jj < 0) jj = 1;
                if (jj > g.ny - 1) jj = g.ny - 2;
                if (dirichlet_node(ii, jj))
                    source[me] -= coef * gval(ii, jj);
                else
                    trip.emplace_back(me, g.idx(ii, jj), coef);
            }
            trip.emplace_back(me, me, diag);
            if (p.rhs) source[me] += wij * p.rhs(g.x(i), g.y(j));
        }

    DiscreteSystem sys;
    sys.L.resize(n, n);
    sys.L.setFromTriplets(trip.begin(), trip.end());
    sys.L.makeCompressed();
    sys.source = std::move(source);
    sys.residual_weight = std::move(w);
    sys.spd = true;
    sys.nonlinearity = [n](const Eigen::VectorXd&, Eigen::VectorXd& N, Eigen::VectorXd& dN) {
        N.setZero(n);
        dN.setZero(n);
    };
    return sys;
}

Eigen::VectorXd cell_weights_polar(const PolarProblem& p)
{
    const PolarGrid& g = p.grid;
    const double dr = g.dr(), dth = g.dtheta();
    Eigen::VectorXd w = Eigen::VectorXd::Ones(g.size());
    for (int j = 0; j < g.ntheta; ++j)
        for (int i = 0; i < g.nr; ++i) {
            const bool dirichlet = (i == 0) || (i == g.nr - 1) ||
                                   (j == 0 && p.bc_theta0 == Bc::Dirichlet) ||
                                   (j == g.ntheta - 1 && p.bc_theta1 == Bc::Dirichlet);
            if (dirichlet) { w[g.idx(i, j)] = 1.0; continue; }
            double wij = (j == 0 || j == g.ntheta - 1) ? 0.5 : 1.0;
            w[g.idx(i, j)] = wij * g.r(i) * dr * dth;
        }
    return w;
}

DiscreteSystem assemble_polar(const PolarProblem& p)
{
    const PolarGrid& g = p.grid;
    const int n = g.size();
    const double dr = g.dr(), dth = g.dtheta();
    auto gval = [&](int i, int j) {
        return p.dirichlet ? p.dirichlet(g.r(i), g.theta(j)) : 0.0;
    };
    auto dirichlet_node = [&](int i, int j) {
        return (i == 0) || (i == g.nr - 1) ||
               (j == 0 && p.bc_theta0 == Bc::Dirichlet) ||
               (j == g.ntheta - 1 && p.bc_theta1 == Bc::Dirichlet);
    };

    Eigen::VectorXd w = cell_weights_polar(p);
    Eigen::VectorXd source = Eigen::VectorXd::Zero(n);
    Triplets trip;
    trip.reserve(5 * n);

    for (int j = 0; j < g.ntheta; ++j)
        for (int i = 0; i < g.nr; ++i) {
            const int me = g.idx(i, j);
            if (dirichlet_node(i, j)) {
                trip.emplace_back(me, me, -1.0);
                source[me] = -gval(i, j);
                continue;
            }
            const double r = g.r(i);
            const double wth = (j == 0 || j == g.ntheta - 1) ? 0.5 : 1.0;
            double diag = 0.0;
            // radial fluxes through faces at r +- dr/2
            for (int s = -1; s <= 1; s += 2) {
                const int ii = i + s;
                const double coef = wth * (r + 0.5 * s * dr) * dth / dr;
                diag -= coef;
                if (dirichlet_node(ii, j))
                    source[me] -= coef * gval(ii, j);
                else
                    trip.emplace_back(me, g.idx(ii, j), coef);
            }
            // theta fluxes; a reflect edge has no flux through the outer face
            for (int s = -1; s <= 1; s += 2) {
                const int jj = j + s;
                if (jj < 0 || jj > g.ntheta - 1) continue;
                const double coef = dr / (r * dth);
                diag -= coef;
                if (dirichlet_node(i, jj))
                    source[me] -= coef * gval(i, jj);
                else
                    trip.emplace_back(me, g.idx(i, jj), coef);
            }
            trip.emplace_back(me, me, diag);
            if (p.rhs) source[me] += w[me] * p.rhs(r, g.theta(j));
        }

    DiscreteSystem sys;
    sys.L.resize(n, n);
    sys.L.setFromTriplets(trip.begin(), trip.end());
    sys.L.makeCompressed();
    sys.source = std::move(source);
    sys.residual_weight = std::move(w);
    sys.spd = true;
    sys.nonlinearity = [n](const Eigen::VectorXd&, Eigen::VectorXd& N, Eigen::VectorXd& dN) {
        N.setZero(n);
        dN.setZero(n);
    };
    return sys;
}

}  // namespace vxm::elliptic
