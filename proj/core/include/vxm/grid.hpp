#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <variant>

namespace vxm {

/// Uniform rectangular grid, node (i,j) at (x0 + i*hx, y0 + j*hy),
/// flat index i + nx*j.
struct RectGrid {
    int nx = 0, ny = 0;
    double hx = 0.0, hy = 0.0;
    double x0 = 0.0, y0 = 0.0;

    RectGrid() = default;
    RectGrid(int nx_, int ny_, double hx_, double hy_, double x0_ = 0.0, double y0_ = 0.0)
        : nx(nx_), ny(ny_), hx(hx_), hy(hy_), x0(x0_), y0(y0_)
    {
        if (nx < 3 || ny < 3) throw std::invalid_argument("RectGrid: nx, ny >= 3 required");
        if (!(hx > 0.0) || !(hy > 0.0)) throw std::invalid_argument("RectGrid: hx, hy > 0 required");
    }

    int size() const { return nx * ny; }
    int idx(int i, int j) const { return i + nx * j; }
    double x(int i) const { return x0 + i * hx; }
    double y(int j) const { return y0 + j * hy; }
};

/// Polar grid on the closed unit disk sector r in [0,1], theta in [0, theta_max],
/// node (i,j) at (i*dr, j*dtheta), flat index i + nr*j.
struct PolarGrid {
    int nr = 0, ntheta = 0;
    double theta_max = 0.0;

    PolarGrid() = default;
    PolarGrid(int nr_, int ntheta_, double theta_max_)
        : nr(nr_), ntheta(ntheta_), theta_max(theta_max_)
    {
        if (nr < 3 || ntheta < 3) throw std::invalid_argument("PolarGrid: nr, ntheta >= 3 required");
        if (!(theta_max > 0.0)) throw std::invalid_argument("PolarGrid: theta_max > 0 required");
    }

    int size() const { return nr * ntheta; }
    int idx(int i, int j) const { return i + nr * j; }
    double dr() const { return 1.0 / (nr - 1); }
    double dtheta() const { return theta_max / (ntheta - 1); }
    double r(int i) const { return i * dr(); }
    double theta(int j) const { return j * dtheta(); }
};

/// Scalar field sampled on a grid, one value per node.
struct Field2D {
    std::variant<RectGrid, PolarGrid> grid;
    Eigen::VectorXd values;

    Field2D() = default;
    Field2D(RectGrid g, Eigen::VectorXd v) : grid(g), values(std::move(v)) { check_size(); }
    Field2D(PolarGrid g, Eigen::VectorXd v) : grid(g), values(std::move(v)) { check_size(); }
    explicit Field2D(RectGrid g) : grid(g), values(Eigen::VectorXd::Zero(g.size())) {}
    explicit Field2D(PolarGrid g) : grid(g), values(Eigen::VectorXd::Zero(g.size())) {}

    bool is_rect() const { return std::holds_alternative<RectGrid>(grid); }
    const RectGrid& rect() const
    {
        if (!is_rect()) throw std::invalid_argument("Field2D: rectangular grid required");
        return std::get<RectGrid>(grid);
    }
    const PolarGrid& polar() const
    {
        if (is_rect()) throw std::invalid_argument("Field2D: polar grid required");
        return std::get<PolarGrid>(grid);
    }
    bool all_finite() const { return values.allFinite(); }

  private:
    void check_size() const
    {
        const int n = is_rect() ? std::get<RectGrid>(grid).size() : std::get<PolarGrid>(grid).size();
        if (values.size() != n) throw std::invalid_argument("Field2D: value count does not match grid");
    }
};

}  // namespace vxm
