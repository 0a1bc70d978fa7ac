#include "vxm/conformal_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vxm {

void ConformalTable::validate() const
{
    const std::size_t n = eps.size();
    if (b.size() != n || bprime.size() != n || F.size() != n || lambda.size() != n ||
        provenance.size() != n)
        throw std::invalid_argument("ConformalTable: column lengths differ");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(F[i] > 0.0)) throw std::invalid_argument("ConformalTable: F must be positive");
        if (i > 0 && !(eps[i] > eps[i - 1]))
            throw std::invalid_argument("ConformalTable: eps must be strictly increasing");
    }
}

namespace {

double lagrange4(const std::vector<double>& xs, const std::vector<double>& ys, double x)
{
    const auto n = static_cast<long>(xs.size());
    if (n == 0 || x < xs.front() || x > xs.back())
        throw std::out_of_range("ConformalTable: query outside sampled range");
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    long k = std::distance(xs.begin(), it) - 1;       // xs[k] <= x
    long lo = std::clamp(k - 1, 0L, n - 4);
    if (n < 4) lo = 0;
    const long m = std::min<long>(4, n);
    double acc = 0.0;
    for (long i = lo; i < lo + m; ++i) {
        double w = 1.0;
        for (long j = lo; j < lo + m; ++j)
            if (j != i) w *= (x - xs[j]) / (xs[i] - xs[j]);
        acc += w * ys[i];
    }
    return acc;
}

}  // namespace

double ConformalTable::lambda_at(double e) const { return lagrange4(eps, lambda, e); }
double ConformalTable::F_at(double e) const { return lagrange4(eps, F, e); }

}  // namespace vxm
