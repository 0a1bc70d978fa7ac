#pragma once

#include <cstddef>
#include <vector>

namespace vxm {

enum class Provenance { numeric, f_star, f_infinity };

/// Sampled conformal-factor data eps -> (b, b', F, Lambda) for the
/// centred-pair metric F(eps)(deps^2 + eps^2 dpsi^2).
/// Invariants: eps strictly increasing, F > 0 at every sample.
struct ConformalTable {
    std::vector<double> eps;
    std::vector<double> b;
    std::vector<double> bprime;
    std::vector<double> F;
    std::vector<double> lambda;
    std::vector<Provenance> provenance;

    std::size_t size() const { return eps.size(); }
    void validate() const;

    double eps_min() const { return eps.front(); }
    double eps_max() const { return eps.back(); }

    /// Cubic (4-point Lagrange) interpolation of Lambda; throws
    /// std::out_of_range outside the sampled range.
    double lambda_at(double e) const;
    double F_at(double e) const;
};

}  // namespace vxm
