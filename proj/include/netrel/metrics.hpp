#pragma once

#include <span>

namespace netrel {

// (est - truth)/truth when est > truth, else (est - truth)/est. Both inputs
// must be positive; the measure is undefined at zero.
double observed_error(double estimate, double truth);

// Fraction of |error| >= eps.
double observed_confidence(std::span<const double> errors, double eps);

// (var_cmc / var_a) * (tau_cmc / tau_a); below 1 plain CMC is preferable.
double efficiency_ratio(double var_cmc, double tau_cmc, double var_a, double tau_a);

// Work-normalized relative variance tau * var / mean^2.
double wnrv(double tau, double variance, double mean);

// Variance of the CMC mean over n samples: mu (1 - mu) / n.
double cmc_variance(double mu, double n);

} // namespace netrel
