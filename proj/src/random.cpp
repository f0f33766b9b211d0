#include "netrel/random.hpp"

#include "netrel/errors.hpp"

#include <cmath>

namespace netrel {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(mix64(master) ^ mix64(index * kGolden + 0x632BE59BD9B4E019ULL));
}

CounterRng::result_type CounterRng::operator()() noexcept {
    return mix64(key_ + (++counter_) * kGolden);
}

double Entropy::exponential() {
    return -std::log(uniform());
}

double SampleStream::next() {
    const double y = generate();
    if (!(y >= 0.0 && y <= 1.0)) throw ContractViolation("sample " + std::to_string(y) + " outside [0,1]");
    ++drawn_;
    return y;
}

BernoulliStream::BernoulliStream(double p, CounterRng rng) : p_(p), rng_(rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("Bernoulli parameter outside [0,1]");
}

CmcSampler::CmcSampler(const NetworkInstance& instance)
    : instance_(&instance), eval_(instance), states_(instance.edge_count()) {}

int CmcSampler::sample(CounterRng& rng) {
    const auto& edges = instance_->edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const DyadicProb& p = edges[i].failure;
        // Top `bits` random bits compared against the numerator: failure
        // with probability exactly numerator / 2^bits.
        const std::uint64_t draw = rng() >> (64 - p.bits());
        states_[i] = draw < p.numerator() ? 0 : 1;
    }
    return eval_.safe(states_) ? 0 : 1;
}

int cmc_sample(const NetworkInstance& instance, CounterRng& rng) {
    CmcSampler sampler(instance);
    return sampler.sample(rng);
}

} // namespace netrel
