#include "netrel/metrics.hpp"

#include "netrel/errors.hpp"

#include <algorithm>
#include <cmath>

namespace netrel {

double observed_error(double estimate, double truth) {
    if (!(estimate > 0.0) || !(truth > 0.0))
        throw InvalidArgument("observed error needs positive estimate and truth");
    // Written as ratios: same value as (est - truth)/truth and (est - truth)/est,
    // one rounding fewer.
    return estimate > truth ? estimate / truth - 1.0 : 1.0 - truth / estimate;
}

double observed_confidence(std::span<const double> errors, double eps) {
    if (errors.empty()) throw InvalidArgument("observed confidence of an empty error list");
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0,1)");
    const auto misses = std::count_if(errors.begin(), errors.end(), [eps](double e) { return std::fabs(e) >= eps; });
    return static_cast<double>(misses) / static_cast<double>(errors.size());
}

double efficiency_ratio(double var_cmc, double tau_cmc, double var_a, double tau_a) {
    if (!(var_cmc > 0.0 && tau_cmc > 0.0 && var_a > 0.0 && tau_a > 0.0))
        throw InvalidArgument("efficiency ratio needs positive variances and times");
    return (var_cmc / var_a) * (tau_cmc / tau_a);
}

double wnrv(double tau, double variance, double mean) {
    if (!(mean > 0.0)) throw InvalidArgument("wnrv needs a positive mean");
    if (!(tau >= 0.0) || !(variance >= 0.0)) throw InvalidArgument("wnrv needs non-negative time and variance");
    return tau * variance / (mean * mean);
}

double cmc_variance(double mu, double n) {
    if (!(mu >= 0.0 && mu <= 1.0) || !(n > 0.0)) throw InvalidArgument("cmc variance needs mu in [0,1], n > 0");
    return mu * (1.0 - mu) / n;
}

} // namespace netrel
