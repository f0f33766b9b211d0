#pragma once

#include "netrel/graph_model.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace netrel {

std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed of replication `index` under `master`; distinct indices give
// statistically independent streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

// Counter-based generator: output i is mix64(key + i * golden). Cheap to
// split, and a (key, counter) pair fully determines the sequence.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept
        : key_(mix64(key)), counter_(counter) {}

    static CounterRng substream(std::uint64_t master, std::uint64_t index) noexcept {
        return CounterRng(derive_seed(master, index));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    // Uniform on [0,1) with 53 random bits.
    double uniform_co() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    // Uniform on (0,1].
    double uniform_oc() noexcept { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

// Auxiliary randomness used by the estimators.
class Entropy {
public:
    virtual ~Entropy() = default;
    // Uniform on (0,1].
    virtual double uniform() = 0;
    // Exp(1) via -ln(U), U uniform on (0,1].
    virtual double exponential();
};

class RngEntropy final : public Entropy {
public:
    explicit RngEntropy(CounterRng rng) : rng_(rng) {}
    double uniform() override { return rng_.uniform_oc(); }

private:
    CounterRng rng_;
};

// Source of i.i.d. samples in [0,1]. next() rejects anything outside that
// range with ContractViolation and counts what it hands out.
class SampleStream {
public:
    virtual ~SampleStream() = default;

    double next();
    std::uint64_t drawn() const noexcept { return drawn_; }

protected:
    virtual double generate() = 0;

private:
    std::uint64_t drawn_ = 0;
};

class BernoulliStream final : public SampleStream {
public:
    BernoulliStream(double p, CounterRng rng);

protected:
    double generate() override { return rng_.uniform_co() < p_ ? 1.0 : 0.0; }

private:
    double p_;
    CounterRng rng_;
};

class FunctionStream final : public SampleStream {
public:
    explicit FunctionStream(std::function<double()> fn) : fn_(std::move(fn)) {}

protected:
    double generate() override { return fn_(); }

private:
    std::function<double()> fn_;
};

// Crude Monte Carlo: fail each edge independently with its exact dyadic
// probability, report 1 iff the terminals are disconnected.
class CmcSampler {
public:
    explicit CmcSampler(const NetworkInstance& instance);
    int sample(CounterRng& rng);

private:
    const NetworkInstance* instance_;
    StructureEvaluator eval_;
    std::vector<std::uint8_t> states_;
};

int cmc_sample(const NetworkInstance& instance, CounterRng& rng);

class CmcStream final : public SampleStream {
public:
    CmcStream(const NetworkInstance& instance, CounterRng rng) : sampler_(instance), rng_(rng) {}

protected:
    double generate() override { return sampler_.sample(rng_); }

private:
    CmcSampler sampler_;
    CounterRng rng_;
};

} // namespace netrel
