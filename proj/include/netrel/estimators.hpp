#pragma once

#include "netrel/random.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace netrel {

// Target relative error eps and failure probability delta, both in (0,1).
struct PacParams {
    double eps;
    double delta;

    PacParams(double eps, double delta);
};

struct Estimate {
    double value = 0.0;
    std::optional<PacParams> params;
    std::uint64_t samples_used = 0;
    double elapsed_seconds = 0.0;
    std::string method;
    // Trial samples drawn before the timed phase (AA steps 1 and 2).
    std::uint64_t auxiliary_samples = 0;
};

inline constexpr std::uint64_t kNoSampleLimit = std::numeric_limits<std::uint64_t>::max();

// ---- Stopping rule ------------------------------------------------------

struct SraConstants {
    double upsilon;   // 4(e-2) ln(2/delta) / eps^2
    double upsilon1;  // 1 + (1+eps) upsilon
};

SraConstants sra_constants(const PacParams& params);

// Sums samples until the total reaches upsilon1, returns upsilon1 / N.
// Requires E[Y] > 0; max_samples guards against a zero-mean stream.
Estimate sra(SampleStream& stream, const PacParams& params, std::uint64_t max_samples = kNoSampleLimit);

// ---- Gamma Bernoulli approximation scheme ------------------------------

// Probability that (k-1)/G lies in [1-eps, 1+eps] for G ~ Gamma(k, 1),
// i.e. that the GBAS estimate is within relative error eps.
double gbas_coverage(std::uint64_t k, double eps);

// Smallest k >= 2 with gbas_coverage(k, eps) >= 1 - delta, found by
// galloping then bisection.
std::uint64_t choose_k(const PacParams& params);

// Runs until k successes, where each step thins Y_N by a uniform draw and
// adds an Exp(1) draw to R. Returns (k-1)/R, which is unbiased.
Estimate gbas(SampleStream& stream, std::uint64_t k, Entropy& entropy,
              std::uint64_t max_samples = kNoSampleLimit);
// choose_k(params), then gbas.
Estimate gbas(SampleStream& stream, const PacParams& params, Entropy& entropy,
              std::uint64_t max_samples = kNoSampleLimit);

// ---- Approximation algorithm --------------------------------------------

// 2(1+sqrt eps)(1+2 sqrt eps)(1 + ln(3/2)/ln(2/delta)) upsilon
double aa_upsilon2(const PacParams& params);

struct AaDiagnostics {
    double mu_hat = 0.0;         // step 1 estimate from the cheap stream
    double upsilon2 = 0.0;
    std::uint64_t pairs = 0;     // step 2 pair count
    double variance_sum = 0.0;   // step 2 accumulator
    double rho_hat = 0.0;        // max(S/N, eps mu_hat) / mu_hat^2
    std::uint64_t final_samples = 0;
};

struct AaResult {
    Estimate estimate;
    AaDiagnostics diagnostics;
};

// Step 1 estimates the mean with SRA(min(1/2, sqrt eps), delta/3) on
// `cheap`; step 2 estimates the relative variance from paired samples of
// `stream`; step 3 averages ceil(upsilon2 * rho_hat) fresh samples. Only
// step 3 is timed and counted in samples_used. Throws DegenerateMean if the
// step 1 estimate is not positive.
AaResult aa_with_diagnostics(SampleStream& cheap, SampleStream& stream, const PacParams& params,
                             std::uint64_t max_samples = kNoSampleLimit);
Estimate aa(SampleStream& cheap, SampleStream& stream, const PacParams& params,
            std::uint64_t max_samples = kNoSampleLimit);

// ---- Median of means ----------------------------------------------------

// r = ceil(2 ln(1/delta) / ln(4/3)); enough repetitions that the median of
// r experiments, each correct with probability 3/4, fails with probability
// at most delta.
std::uint64_t mom_repetitions(double delta);

// Per-experiment sample size n = sigma^2 / ((1-s) eps^2 mu^2), given the
// relative variance sigma^2/mu^2. The caller must know it; nothing here
// estimates it.
std::uint64_t mom_samples_per_experiment(double relative_variance, double eps, double s = 0.75);

// Lower median (element (r-1)/2 of the sorted values).
double lower_median(std::vector<double> values);

Estimate median_of_means(SampleStream& stream, std::uint64_t n_per_experiment, double delta);

} // namespace netrel
