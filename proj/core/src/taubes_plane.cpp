#include "vxm/taubes_plane.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "vxm/fdweights.hpp"

namespace vxm::plane {

RectGrid plane_grid(double eps, const GridPolicy& pol)
{
    if (!(eps > 0.0)) throw std::invalid_argument("plane_grid: eps > 0 required");
    const double extent = std::max(pol.decay_exponent / eps, pol.min_extent);
    const int m = std::max(1, static_cast<int>((pol.tier - 1) / extent));
    const double h = 1.0 / m;
    const int cells = static_cast<int>(std::ceil(extent * m));
    return RectGrid(cells + 1, cells + 1, h, h);
}

namespace {

int vortex_node(const RectGrid& g)
{
    const double k = 1.0 / g.hx;
    const int m = static_cast<int>(std::lround(k));
    if (std::abs(k - m) > 1e-9 || m < 1 || m > g.nx - 2)
        throw std::invalid_argument("solve_plane: vortex w=1 is not an interior mesh node");
    return m;
}

}  // namespace

PlaneSolution solve_plane(double eps, const RectGrid& grid, const elliptic::NewtonOptions& opt)
{
    if (!(eps > 0.0)) throw std::invalid_argument("solve_plane: eps > 0 required");
    const int m = vortex_node(grid);

    elliptic::RectProblem prob;
    prob.grid = grid;
    prob.bc_x0 = elliptic::Bc::Dirichlet;
    prob.bc_x1 = elliptic::Bc::Dirichlet;
    prob.bc_y0 = elliptic::Bc::NeumannReflect;
    prob.bc_y1 = elliptic::Bc::Dirichlet;
    auto sys = elliptic::assemble_rect(prob);

    const int n = grid.size();
    Eigen::VectorXd am(n), ap(n), w = sys.residual_weight;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const int id = grid.idx(i, j);
            const double x = grid.x(i), y = grid.y(j);
            am[id] = (x - 1.0) * (x - 1.0) + y * y;
            ap[id] = (x + 1.0) * (x + 1.0) + y * y;
        }
    // zero out constraint rows so N stays 0 there
    Eigen::VectorXd mask = Eigen::VectorXd::Ones(n);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            if (i == 0 || i == grid.nx - 1 || j == grid.ny - 1) mask[grid.idx(i, j)] = 0.0;

    const double pref = 2.0 * eps * eps;
    sys.nonlinearity = [&, pref](const Eigen::VectorXd& u, Eigen::VectorXd& N, Eigen::VectorXd& dN) {
        N.resize(n);
        dN.resize(n);
        for (int id = 0; id < n; ++id) {
            const double E = am[id] * std::exp(u[id]);
            const double den = E + ap[id];
            N[id] = mask[id] * w[id] * pref * (E - ap[id]) / den;
            dN[id] = mask[id] * w[id] * pref * 2.0 * E * ap[id] / (den * den);
        }
    };

    auto [u, rep] = elliptic::newton_solve(sys, Eigen::VectorXd::Zero(n), opt);
    if (!rep.converged) throw std::runtime_error("solve_plane: Newton did not converge");

    PlaneSolution sol;
    sol.eps = eps;
    sol.hhat = Field2D(grid, std::move(u));
    sol.vortex_index = m;
    sol.report = rep;
    return sol;
}

double extract_b(const PlaneSolution& sol)
{
    const RectGrid& g = sol.hhat.rect();
    const int m = sol.vortex_index;
    if (m + 2 > g.nx - 1)
        throw std::runtime_error("extract_b: vortex node too close to the far boundary for the stencil");
    // odd extension across x=0 on the real axis: hhat(-x,0) = -hhat(x,0)
    auto at = [&](int i) -> double {
        if (i == 0) return 0.0;
        if (i < 0) return -sol.hhat.values[g.idx(-i, 0)];
        return sol.hhat.values[g.idx(i, 0)];
    };
    const double h = g.hx;
    const double d = (-at(m + 2) + 8.0 * at(m + 1) - 8.0 * at(m - 1) + at(m - 2)) / (12.0 * h);
    return (d - 1.0) / sol.eps;
}

RadialSamples self_similar_profile(const PlaneSolution& sol)
{
    const RectGrid& g = sol.hhat.rect();
    RadialSamples out;
    out.x.reserve(g.nx);
    out.f.reserve(g.nx);
    for (int i = 0; i < g.nx; ++i) {
        out.x.push_back(sol.eps * g.x(i));
        out.f.push_back(sol.hhat.values[g.idx(i, 0)] / sol.eps);
    }
    return out;
}

double RadialSamples::at(double xq) const
{
    if (xq < x.front() || xq > x.back())
        throw std::out_of_range("RadialSamples: query outside sampled range");
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    if (it == x.begin()) return f.front();
    const auto k = static_cast<std::size_t>(std::distance(x.begin(), it)) - 1;
    if (k + 1 >= x.size()) return f.back();
    const double t = (xq - x[k]) / (x[k + 1] - x[k]);
    return (1.0 - t) * f[k] + t * f[k + 1];
}

ConformalTable conformal_table_plane(const std::vector<double>& eps_list, const GridPolicy& pol,
                                     int workers)
{
    const std::size_t n = eps_list.size();
    if (n < 3) throw std::invalid_argument("conformal_table_plane: need at least 3 eps samples");
    for (std::size_t i = 1; i < n; ++i)
        if (!(eps_list[i] > eps_list[i - 1]))
            throw std::invalid_argument("conformal_table_plane: eps_list must be ascending");

    std::vector<double> bvals(n);
    workers = std::max(1, workers);
    std::exception_ptr failure;
    std::mutex fail_mtx;
    auto run = [&](int offset) {
        for (std::size_t i = offset; i < n; i += workers) {
            try {
                auto sol = solve_plane(eps_list[i], plane_grid(eps_list[i], pol));
                bvals[i] = extract_b(sol);
            } catch (...) {
                std::scoped_lock lk(fail_mtx);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(run, t);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // difference the smooth product s = eps*b; b' + b/eps = s'/eps
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = eps_list[i] * bvals[i];

    ConformalTable tab;
    tab.eps = eps_list;
    tab.b = bvals;
    tab.bprime.resize(n);
    tab.F.resize(n);
    tab.lambda.resize(n);
    tab.provenance.assign(n, Provenance::numeric);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = (i == 0) ? 0 : (i == n - 1 ? n - 3 : i - 1);
        const std::vector<double> xs{eps_list[lo], eps_list[lo + 1], eps_list[lo + 2]};
        const auto wts = fd_weights(eps_list[i], xs, 1);
        const double sp = wts[0] * s[lo] + wts[1] * s[lo + 1] + wts[2] * s[lo + 2];
        const double comb = sp / eps_list[i];  // b' + b/eps
        tab.bprime[i] = comb - bvals[i] / eps_list[i];
        tab.F[i] = 2.0 * M_PI * (2.0 + comb);
        tab.lambda[i] = 0.25 * comb;
    }
    tab.validate();
    return tab;
}

PairMetric pair_metric_plane(std::complex<double> z_plus, std::complex<double> z_minus,
                             const ConformalTable& table)
{
    const double sep = std::abs(z_plus - z_minus);
    if (!(sep > 0.0)) throw std::invalid_argument("pair_metric_plane: z+ and z- must differ");
    const double lam = table.lambda_at(0.5 * sep);
    return PairMetric{2.0 * M_PI * (1.0 + lam), -2.0 * M_PI * lam, lam};
}

}  // namespace vxm::plane
