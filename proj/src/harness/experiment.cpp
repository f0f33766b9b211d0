#include "netrel/harness/experiment.hpp"

#include "netrel/encoder.hpp"
#include "netrel/errors.hpp"
#include "netrel/harness/counter_process.hpp"
#include "netrel/harness/report.hpp"
#include "netrel/metrics.hpp"
#include "netrel/transform.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <unistd.h>

namespace netrel {

std::string_view to_string(Method m) {
    switch (m) {
    case Method::Exact: return "exact";
    case Method::Gbas: return "gbas";
    case Method::Sra: return "sra";
    case Method::Aa: return "aa";
    case Method::Mom: return "mom";
    case Method::Relnet: return "relnet";
    }
    return "?";
}

Method parse_method(std::string_view text) {
    for (Method m : {Method::Exact, Method::Gbas, Method::Sra, Method::Aa, Method::Mom, Method::Relnet})
        if (to_string(m) == text) return m;
    throw InvalidArgument("unknown method '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
    if (instance.empty()) throw InvalidArgument("no instance given");
    if (replications < 1) throw InvalidArgument("replications must be at least 1");
    if (method != Method::Exact) PacParams(eps, delta);
    if (method == Method::Mom && mom_samples == 0)
        throw InvalidArgument("method mom needs a per-experiment sample count (mom_samples)");
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.instance = j.at("instance").get<std::string>();
    c.method = parse_method(j.at("method").get<std::string>());
    c.eps = j.value("eps", c.eps);
    c.delta = j.value("delta", c.delta);
    c.replications = j.value("replications", c.replications);
    c.seed = j.value("seed", c.seed);
    if (j.contains("counter_command") && !j["counter_command"].is_null())
        c.counter_command = j["counter_command"].get<std::string>();
    c.counter_timeout = std::chrono::milliseconds(
        static_cast<long long>(j.value("counter_timeout_seconds", 600.0) * 1000.0));
    c.mom_samples = j.value("mom_samples", c.mom_samples);
    c.max_samples = j.value("max_samples", c.max_samples);
    c.oracle_edge_limit = j.value("oracle_edge_limit", c.oracle_edge_limit);
    c.workers = j.value("workers", c.workers);
    c.csv_out = j.value("csv_out", c.csv_out);
    c.json_out = j.value("json_out", c.json_out);
    c.validate();
    return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["instance"] = c.instance;
    j["method"] = std::string(to_string(c.method));
    j["eps"] = c.eps;
    j["delta"] = c.delta;
    j["replications"] = c.replications;
    j["seed"] = c.seed;
    j["counter_command"] = c.counter_command ? nlohmann::json(*c.counter_command) : nlohmann::json(nullptr);
    j["counter_timeout_seconds"] = static_cast<double>(c.counter_timeout.count()) / 1000.0;
    j["mom_samples"] = c.mom_samples;
    j["max_samples"] = c.max_samples;
    j["oracle_edge_limit"] = c.oracle_edge_limit;
    j["workers"] = c.workers;
    j["csv_out"] = c.csv_out;
    j["json_out"] = c.json_out;
    return j;
}

double to_double(const Number& n) {
    return std::visit([](const auto& v) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>)
            return v;
        else
            return v.to_double();
    }, n);
}

std::string format_number(const Number& n) {
    if (const auto* d = std::get_if<Dyadic>(&n)) return d->to_string();
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(n));
    return std::string(buf, end);
}

Number parse_number(std::string_view text) {
    if (text.find('/') != std::string_view::npos) return Dyadic::parse(text);
    double v = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size())
        throw InvalidArgument("not a number: '" + std::string(text) + "'");
    return v;
}

LoadedInstance load_instance(const std::string& source, ProbabilityDomain domain) {
    if (source.rfind("grid:", 0) == 0) {
        std::vector<std::string> parts;
        std::stringstream ss(source);
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
        if (parts.size() != 4) throw InvalidArgument("generator string must be grid:<side>:<pattern>:<p>");
        std::size_t side = 0;
        auto [end, ec] = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), side);
        if (ec != std::errc{} || end != parts[1].data() + parts[1].size())
            throw InvalidArgument("bad grid side '" + parts[1] + "'");
        const DyadicProb p = parse_probability(parts[3]);
        if (domain == ProbabilityDomain::Open && !p.is_open())
            throw InvalidArgument("failure probability must lie strictly inside (0,1)");
        return {source, make_grid(side, parse_terminal_pattern(parts[2]), p)};
    }
    std::ifstream in(source);
    if (!in) throw InvalidArgument("cannot open instance file '" + source + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return {std::filesystem::path(source).stem().string(), parse_instance(buf.str(), domain)};
}

namespace {

using Clock = std::chrono::steady_clock;

double to_millis_resolution(double seconds) {
    return std::round(seconds * 1000.0) / 1000.0;
}

std::optional<double> error_against(const Number& estimate, const Dyadic& truth) {
    if (const auto* d = std::get_if<Dyadic>(&estimate); d && *d == truth) return 0.0;
    const double est = to_double(estimate);
    const double tru = truth.to_double();
    if (est == tru) return 0.0;
    // Undefined at zero; the harness records the limiting value so that the
    // row still shows a miss.
    if (!(est > 0.0)) return -INFINITY;
    if (!(tru > 0.0)) return INFINITY;
    return observed_error(est, tru);
}

struct RelnetPlan {
    ProjectedCnf cnf;
    std::size_t M = 0;
};

class Replicator {
public:
    Replicator(const ExperimentConfig& config, const LoadedInstance& loaded)
        : config_(config), loaded_(loaded) {
        if (config.method == Method::Relnet) {
            UnweightedInstance uw = unweight(loaded.instance);
            relnet_ = RelnetPlan{encode(uw), uw.M};
            if (config.counter_command) {
                dimacs_path_ = std::filesystem::temp_directory_path() /
                               ("netrel-" + std::to_string(::getpid()) + "-" + std::to_string(config.seed) + ".cnf");
                std::ofstream(dimacs_path_) << emit_dimacs(relnet_->cnf);
            }
        }
    }

    ~Replicator() {
        if (!dimacs_path_.empty()) {
            std::error_code ec;
            std::filesystem::remove(dimacs_path_, ec);
        }
    }

    ReportRow run(std::uint64_t index) const {
        const std::uint64_t seed = derive_seed(config_.seed, index);
        ReportRow row;
        row.instance = loaded_.id;
        row.method = std::string(to_string(config_.method));
        row.seed = seed;
        if (config_.method != Method::Exact) {
            row.eps = config_.eps;
            row.delta = config_.delta;
        }
        const NetworkInstance& g = loaded_.instance;
        const auto start = Clock::now();
        switch (config_.method) {
        case Method::Exact: {
            ExactResult exact = exact_unreliability(g, config_.oracle_edge_limit);
            row.estimate = exact.unreliability;
            row.N = exact.states_enumerated;
            row.tau_seconds = std::chrono::duration<double>(Clock::now() - start).count();
            break;
        }
        case Method::Relnet: {
            BigInt count = config_.counter_command
                               ? invoke_counter(dimacs_path_, *config_.counter_command, config_.counter_timeout)
                               : exact_projected_count(relnet_->cnf, config_.counter_options);
            row.estimate = count_to_unreliability(count, relnet_->M);
            row.N = 1;
            row.tau_seconds = std::chrono::duration<double>(Clock::now() - start).count();
            break;
        }
        default: {
            const Estimate est = run_estimator(g, seed);
            row.estimate = est.value;
            row.N = est.samples_used;
            row.tau_seconds = est.elapsed_seconds;
            break;
        }
        }
        row.tau_seconds = to_millis_resolution(row.tau_seconds);
        return row;
    }

private:
    Estimate run_estimator(const NetworkInstance& g, std::uint64_t seed) const {
        const PacParams params(config_.eps, config_.delta);
        CmcStream stream(g, CounterRng::substream(seed, 0));
        switch (config_.method) {
        case Method::Sra: return sra(stream, params, config_.max_samples);
        case Method::Gbas: {
            RngEntropy entropy(CounterRng::substream(seed, 1));
            return gbas(stream, params, entropy, config_.max_samples);
        }
        case Method::Aa: {
            CmcStream cheap(g, CounterRng::substream(seed, 2));
            return aa(cheap, stream, params, config_.max_samples);
        }
        case Method::Mom: {
            Estimate est = median_of_means(stream, config_.mom_samples, config_.delta);
            est.params = params;
            return est;
        }
        default: throw ContractViolation("not a sampling method");
        }
    }

    const ExperimentConfig& config_;
    const LoadedInstance& loaded_;
    std::optional<RelnetPlan> relnet_;
    std::filesystem::path dimacs_path_;
};

} // namespace

std::vector<ReportRow> run_experiment(const ExperimentConfig& config) {
    config.validate();
    const ProbabilityDomain domain =
        config.method == Method::Relnet ? ProbabilityDomain::Open : ProbabilityDomain::Closed;
    const LoadedInstance loaded = load_instance(config.instance, domain);

    std::optional<Dyadic> truth;
    if (loaded.instance.edge_count() <= config.oracle_edge_limit)
        truth = exact_unreliability(loaded.instance, config.oracle_edge_limit).unreliability;

    const Replicator replicator(config, loaded);
    std::vector<ReportRow> rows(config.replications);
    unsigned workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, config.replications));

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::uint64_t i; (i = next.fetch_add(1)) < config.replications;) {
            try {
                rows[i] = replicator.run(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = config.replications;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    if (truth) {
        for (ReportRow& row : rows) {
            row.truth = truth;
            row.eps_o = error_against(row.estimate, *truth);
        }
    }
    if (!config.csv_out.empty()) write_report(rows, ReportFormat::Csv, config.csv_out);
    if (!config.json_out.empty()) write_report(rows, ReportFormat::Json, config.json_out);
    return rows;
}

} // namespace netrel
