#include "netrel/estimators.hpp"

#include "netrel/errors.hpp"
#include "netrel/gamma.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace netrel {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_budget(std::uint64_t used, std::uint64_t max_samples, const char* method) {
    if (used >= max_samples)
        throw ResourceLimit(std::string(method) + " exceeded its sample budget of " + std::to_string(max_samples));
}

std::uint64_t ceil_count(double x) {
    if (!std::isfinite(x) || x >= 1.8e19) throw NumericError("sample count overflow");
    return static_cast<std::uint64_t>(std::ceil(x));
}

} // namespace

PacParams::PacParams(double e, double d) : eps(e), delta(d) {
    if (!(e > 0.0 && e < 1.0)) throw InvalidArgument("eps must lie in (0,1)");
    if (!(d > 0.0 && d < 1.0)) throw InvalidArgument("delta must lie in (0,1)");
}

SraConstants sra_constants(const PacParams& p) {
    const double upsilon = 4.0 * (std::numbers::e - 2.0) * std::log(2.0 / p.delta) / (p.eps * p.eps);
    return {upsilon, 1.0 + (1.0 + p.eps) * upsilon};
}

Estimate sra(SampleStream& stream, const PacParams& params, std::uint64_t max_samples) {
    const auto start = Clock::now();
    const double threshold = sra_constants(params).upsilon1;
    double sum = 0.0;
    std::uint64_t n = 0;
    while (sum < threshold) {
        check_budget(n, max_samples, "SRA");
        ++n;
        sum += stream.next();
    }
    Estimate est;
    est.value = threshold / static_cast<double>(n);
    est.params = params;
    est.samples_used = n;
    est.elapsed_seconds = seconds_since(start);
    est.method = "sra";
    return est;
}

double gbas_coverage(std::uint64_t k, double eps) {
    const double a = static_cast<double>(k);
    const double lo = (a - 1.0) / (1.0 + eps);
    const double hi = (a - 1.0) / (1.0 - eps);
    return regularized_gamma_p(a, hi) - regularized_gamma_p(a, lo);
}

std::uint64_t choose_k(const PacParams& params) {
    const double target = 1.0 - params.delta;
    auto passes = [&](std::uint64_t k) { return gbas_coverage(k, params.eps) >= target; };

    std::uint64_t lo = 1;  // known to fail (or below the admissible range)
    std::uint64_t hi = 2;
    while (!passes(hi)) {
        lo = hi;
        if (hi > (std::uint64_t{1} << 40))
            throw NumericError("choose_k: no admissible k below 2^41 for eps=" + std::to_string(params.eps) +
                               " delta=" + std::to_string(params.delta));
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (passes(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

Estimate gbas(SampleStream& stream, std::uint64_t k, Entropy& entropy, std::uint64_t max_samples) {
    if (k < 2) throw InvalidArgument("GBAS needs k >= 2");
    const auto start = Clock::now();
    std::uint64_t successes = 0;
    std::uint64_t n = 0;
    double r = 0.0;
    while (successes != k) {
        check_budget(n, max_samples, "GBAS");
        ++n;
        const double y = stream.next();
        if (entropy.uniform() <= y) ++successes;
        r += entropy.exponential();
    }
    Estimate est;
    est.value = static_cast<double>(k - 1) / r;
    est.samples_used = n;
    est.elapsed_seconds = seconds_since(start);
    est.method = "gbas";
    return est;
}

Estimate gbas(SampleStream& stream, const PacParams& params, Entropy& entropy, std::uint64_t max_samples) {
    Estimate est = gbas(stream, choose_k(params), entropy, max_samples);
    est.params = params;
    return est;
}

double aa_upsilon2(const PacParams& p) {
    const double root = std::sqrt(p.eps);
    return 2.0 * (1.0 + root) * (1.0 + 2.0 * root) * (1.0 + std::log(1.5) / std::log(2.0 / p.delta)) *
           sra_constants(p).upsilon;
}

AaResult aa_with_diagnostics(SampleStream& cheap, SampleStream& stream, const PacParams& params,
                             std::uint64_t max_samples) {
    AaResult out;
    AaDiagnostics& diag = out.diagnostics;

    const PacParams rough(std::min(0.5, std::sqrt(params.eps)), params.delta / 3.0);
    const Estimate first = sra(cheap, rough, max_samples);
    diag.mu_hat = first.value;
    if (!(diag.mu_hat > 0.0) || !std::isfinite(diag.mu_hat))
        throw DegenerateMean("AA step 1 produced a non-positive mean estimate");

    diag.upsilon2 = aa_upsilon2(params);
    diag.pairs = ceil_count(diag.upsilon2 * params.eps / diag.mu_hat);
    check_budget(diag.pairs, max_samples / 2, "AA step 2");
    double s = 0.0;
    for (std::uint64_t i = 0; i < diag.pairs; ++i) {
        const double a = stream.next();
        const double b = stream.next();
        s += (a - b) * (a - b) / 2.0;
    }
    diag.variance_sum = s;
    diag.rho_hat = std::max(s / static_cast<double>(diag.pairs), params.eps * diag.mu_hat) /
                   (diag.mu_hat * diag.mu_hat);

    diag.final_samples = ceil_count(diag.upsilon2 * diag.rho_hat);
    check_budget(diag.final_samples, max_samples, "AA step 3");
    const auto start = Clock::now();
    double sum = 0.0;
    for (std::uint64_t i = 0; i < diag.final_samples; ++i) sum += stream.next();
    out.estimate.value = sum / static_cast<double>(diag.final_samples);
    out.estimate.elapsed_seconds = seconds_since(start);
    out.estimate.params = params;
    out.estimate.samples_used = diag.final_samples;
    out.estimate.auxiliary_samples = first.samples_used + 2 * diag.pairs;
    out.estimate.method = "aa";
    return out;
}

Estimate aa(SampleStream& cheap, SampleStream& stream, const PacParams& params, std::uint64_t max_samples) {
    return aa_with_diagnostics(cheap, stream, params, max_samples).estimate;
}

std::uint64_t mom_repetitions(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0,1)");
    return std::max<std::uint64_t>(1, ceil_count(2.0 * std::log(1.0 / delta) / std::log(4.0 / 3.0)));
}

std::uint64_t mom_samples_per_experiment(double relative_variance, double eps, double s) {
    if (!(relative_variance >= 0.0)) throw InvalidArgument("relative variance must be non-negative");
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in (0,1)");
    if (!(s > 0.5 && s < 1.0)) throw InvalidArgument("per-experiment success probability must lie in (1/2,1)");
    return std::max<std::uint64_t>(1, ceil_count(relative_variance / ((1.0 - s) * eps * eps)));
}

double lower_median(std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("median of an empty list");
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
    std::nth_element(values.begin(), mid, values.end());
    return *mid;
}

Estimate median_of_means(SampleStream& stream, std::uint64_t n_per_experiment, double delta) {
    if (n_per_experiment == 0) throw InvalidArgument("median of means needs n >= 1");
    const auto start = Clock::now();
    const std::uint64_t r = mom_repetitions(delta);
    std::vector<double> means;
    means.reserve(r);
    for (std::uint64_t i = 0; i < r; ++i) {
        double sum = 0.0;
        for (std::uint64_t j = 0; j < n_per_experiment; ++j) sum += stream.next();
        means.push_back(sum / static_cast<double>(n_per_experiment));
    }
    Estimate est;
    est.value = lower_median(std::move(means));
    est.samples_used = r * n_per_experiment;
    est.elapsed_seconds = seconds_since(start);
    est.method = "mom";
    return est;
}

} // namespace netrel
