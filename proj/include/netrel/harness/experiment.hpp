#pragma once

#include "netrel/dyadic.hpp"
#include "netrel/estimators.hpp"
#include "netrel/graph_model.hpp"
#include "netrel/oracle.hpp"
#include "netrel/projected_counter.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace netrel {

enum class Method { Exact, Gbas, Sra, Aa, Mom, Relnet };

std::string_view to_string(Method m);
Method parse_method(std::string_view text);

struct ExperimentConfig {
    // Instance file path, or a generator string "grid:<side>:<all|two|checker>:<p>".
    std::string instance;
    Method method = Method::Gbas;
    double eps = 0.2;
    double delta = 0.2;
    std::uint64_t replications = 1;
    std::uint64_t seed = 1;
    // External projected counter for relnet; the internal exact counter
    // is used when absent.
    std::optional<std::string> counter_command;
    std::chrono::milliseconds counter_timeout{600'000};
    // Samples per experiment for median of means (required for mom).
    std::uint64_t mom_samples = 0;
    std::uint64_t max_samples = kNoSampleLimit;
    std::size_t oracle_edge_limit = kDefaultOracleEdgeLimit;
    CounterOptions counter_options;
    // 0 = one worker per hardware thread.
    unsigned workers = 0;
    // Written when non-empty.
    std::string csv_out;
    std::string json_out;

    // Throws InvalidArgument if a method-specific field is missing.
    void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

// Either an exact dyadic value or a floating-point estimate.
using Number = std::variant<double, Dyadic>;

double to_double(const Number& n);
// Shortest round-trip decimal for doubles, "p/q" for dyadics.
std::string format_number(const Number& n);
Number parse_number(std::string_view text);

struct ReportRow {
    std::string instance;
    std::string method;
    std::optional<double> eps;
    std::optional<double> delta;
    Number estimate;
    std::optional<Dyadic> truth;
    std::optional<double> eps_o;
    std::uint64_t N = 0;
    // Millisecond resolution.
    double tau_seconds = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct LoadedInstance {
    std::string id;
    NetworkInstance instance;
};

LoadedInstance load_instance(const std::string& source, ProbabilityDomain domain = ProbabilityDomain::Closed);

// M replications with seeds derive_seed(seed, i), run on a bounded worker
// pool and returned in replication order. Truth and eps_o are attached when
// the oracle accepts the instance. Writes csv_out / json_out when set.
std::vector<ReportRow> run_experiment(const ExperimentConfig& config);

} // namespace netrel
