#include "netrel/cnf.hpp"
#include "netrel/encoder.hpp"
#include "netrel/errors.hpp"
#include "netrel/harness/counter_process.hpp"
#include "netrel/harness/experiment.hpp"
#include "netrel/harness/report.hpp"
#include "netrel/oracle.hpp"
#include "netrel/transform.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace netrel;

namespace {

enum Exit { kOk = 0, kOther = 1, kUsage = 2, kCounter = 3, kResource = 4 };

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

bool looks_like_dimacs(const std::string& path) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".cnf") == 0) return true;
    std::ifstream in(path);
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') continue;
        return line[0] == 'c' || line[0] == 'p';
    }
    return false;
}

// Shared experiment flags; --config supplies defaults that flags override.
struct ExperimentFlags {
    std::string config_path;
    std::string method = "gbas";
    double eps = 0.2;
    double delta = 0.2;
    std::uint64_t seed = 1;
    std::uint64_t reps = 1;
    std::string counter_cmd;
    double timeout_seconds = 600.0;
    std::uint64_t mom_samples = 0;
    unsigned workers = 0;
    std::string out;
    std::string json_out;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
        app->add_option("--method", method, "exact, gbas, sra, aa, mom or relnet");
        app->add_option("--eps", eps, "relative error target");
        app->add_option("--delta", delta, "failure probability target");
        app->add_option("--seed", seed, "master seed");
        app->add_option("--reps", reps, "replications");
        app->add_option("--counter-cmd", counter_cmd, "external projected counter (relnet)");
        app->add_option("--timeout", timeout_seconds, "counter timeout in seconds");
        app->add_option("--mom-samples", mom_samples, "samples per experiment for mom");
        app->add_option("--workers", workers, "worker threads (0 = all cores)");
        app->add_option("--out", out, "CSV output path");
        app->add_option("--json-out", json_out, "JSON output path");
    }

    ExperimentConfig build(const CLI::App* app, const std::string& instance) const {
        ExperimentConfig c;
        if (!config_path.empty()) {
            nlohmann::json j = nlohmann::json::parse(read_file(config_path));
            if (!instance.empty()) j["instance"] = instance;
            if (!j.contains("method")) j["method"] = method;
            c = config_from_json(j);
        }
        if (!instance.empty()) c.instance = instance;
        auto given = [&](const char* flag) { return config_path.empty() || app->count(flag) > 0; };
        if (given("--method")) c.method = parse_method(method);
        if (given("--eps")) c.eps = eps;
        if (given("--delta")) c.delta = delta;
        if (given("--seed")) c.seed = seed;
        if (given("--reps")) c.replications = reps;
        if (given("--counter-cmd") && !counter_cmd.empty()) c.counter_command = counter_cmd;
        if (given("--timeout"))
            c.counter_timeout = std::chrono::milliseconds(static_cast<long long>(timeout_seconds * 1000.0));
        if (given("--mom-samples")) c.mom_samples = mom_samples;
        if (given("--workers")) c.workers = workers;
        if (given("--out")) c.csv_out = out;
        if (given("--json-out")) c.json_out = json_out;
        c.validate();
        return c;
    }
};

void print_rows(const std::vector<ReportRow>& rows, const ExperimentConfig& c) {
    if (c.csv_out.empty() && c.json_out.empty()) std::cout << to_csv(rows);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"netrel: network unreliability by exact enumeration, model counting and PAC sampling"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "write a square grid instance");
    std::size_t side = 3;
    std::string pattern = "two", prob = "1/2", gen_out;
    gen->add_option("--side", side, "grid side length")->check(CLI::PositiveNumber);
    gen->add_option("--terminals", pattern, "all, two or checker");
    gen->add_option("-p,--p", prob, "edge failure probability, e.g. 1/8");
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // exact
    auto* exact = app.add_subcommand("exact", "exact unreliability by enumeration");
    std::string exact_in;
    std::size_t edge_limit = kDefaultOracleEdgeLimit;
    exact->add_option("instance", exact_in, "instance file or grid:<side>:<pattern>:<p>")->required();
    exact->add_option("--edge-limit", edge_limit, "refuse instances with more edges (max 40)");

    // encode
    auto* enc = app.add_subcommand("encode", "unweight an instance and write the projected CNF");
    std::string enc_in, enc_out, map_out;
    enc->add_option("instance", enc_in, "instance file or grid:<side>:<pattern>:<p>")->required();
    enc->add_option("--out", enc_out, "DIMACS output path (default stdout)");
    enc->add_option("--map", map_out, "write the edge-to-gadget map here");

    // count
    auto* cnt = app.add_subcommand("count", "projected model count of a DIMACS file or an instance");
    std::string cnt_in, cnt_cmd, cnt_strategy = "search";
    double cnt_timeout = 600.0;
    std::size_t node_limit = CounterOptions{}.node_limit;
    cnt->add_option("input", cnt_in, "DIMACS file, instance file or grid:<side>:<pattern>:<p>")->required();
    cnt->add_option("--counter-cmd", cnt_cmd, "external counter; the CNF path is appended");
    cnt->add_option("--timeout", cnt_timeout, "counter timeout in seconds");
    cnt->add_option("--strategy", cnt_strategy, "internal counter: search or enumerate");
    cnt->add_option("--node-limit", node_limit, "internal search node budget");

    // estimate
    auto* est = app.add_subcommand("estimate", "run an experiment on one instance");
    std::string est_in;
    ExperimentFlags est_flags;
    est->add_option("instance", est_in, "instance file or grid:<side>:<pattern>:<p>");
    est_flags.attach(est);

    // bench
    auto* bench = app.add_subcommand("bench", "sweep grid sides and failure probabilities 2^-i");
    std::vector<std::size_t> sides{3};
    std::vector<unsigned> exponents{1, 3, 5, 7, 9, 11, 13, 15};
    std::string bench_pattern = "two";
    ExperimentFlags bench_flags;
    bench->add_option("--sides", sides, "grid sides")->delimiter(',');
    bench->add_option("--exponents", exponents, "i in p = 2^-i")->delimiter(',');
    bench->add_option("--terminals", bench_pattern, "all, two or checker");
    bench_flags.attach(bench);

    // report
    auto* rep = app.add_subcommand("report", "convert a CSV report to csv, json or svg plots");
    std::string rep_in, rep_format = "csv", rep_axis = "index", rep_out;
    rep->add_option("input", rep_in, "CSV produced by estimate or bench")->required()->check(CLI::ExistingFile);
    rep->add_option("--format", rep_format, "csv, json or svg");
    rep->add_option("--axis", rep_axis, "plot x axis: side, p or index");
    rep->add_option("--out", rep_out, "output path (stem for svg)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            const NetworkInstance g = make_grid(side, parse_terminal_pattern(pattern), parse_probability(prob));
            write_or_print(gen_out, serialize_instance(g));
        } else if (*exact) {
            const LoadedInstance li = load_instance(exact_in);
            const ExactResult r = exact_unreliability(li.instance, edge_limit);
            std::cout << "unreliability " << r.unreliability.to_string() << "\n"
                      << "unreliability_decimal " << format_number(Number(r.unreliability.to_double())) << "\n"
                      << "reliability " << r.reliability().to_string() << "\n"
                      << "states " << r.states_enumerated << "\n";
            if (r.failure_state_count) std::cout << "failure_states " << *r.failure_state_count << "\n";
        } else if (*enc) {
            const LoadedInstance li = load_instance(enc_in, ProbabilityDomain::Open);
            const UnweightedInstance uw = unweight(li.instance);
            write_or_print(enc_out, emit_dimacs(encode(uw)));
            if (!map_out.empty()) write_or_print(map_out, serialize_edge_map(uw));
        } else if (*cnt) {
            ProjectedCnf cnf;
            std::optional<std::size_t> M;
            std::filesystem::path path;
            std::optional<std::filesystem::path> temp;
            if (cnt_in.rfind("grid:", 0) != 0 && looks_like_dimacs(cnt_in)) {
                cnf = parse_dimacs(read_file(cnt_in));
                path = cnt_in;
            } else {
                const LoadedInstance li = load_instance(cnt_in, ProbabilityDomain::Open);
                const UnweightedInstance uw = unweight(li.instance);
                cnf = encode(uw);
                M = uw.M;
            }
            BigInt count;
            if (!cnt_cmd.empty()) {
                if (path.empty()) {
                    temp = std::filesystem::temp_directory_path() / ("netrel-count-" + std::to_string(::getpid()) + ".cnf");
                    std::ofstream(*temp) << emit_dimacs(cnf);
                    path = *temp;
                }
                try {
                    count = invoke_counter(path, cnt_cmd,
                                           std::chrono::milliseconds(static_cast<long long>(cnt_timeout * 1000.0)));
                } catch (...) {
                    if (temp) std::filesystem::remove(*temp);
                    throw;
                }
                if (temp) std::filesystem::remove(*temp);
            } else {
                CounterOptions opts;
                if (cnt_strategy == "enumerate")
                    opts.strategy = CountStrategy::Enumerate;
                else if (cnt_strategy != "search")
                    throw InvalidArgument("unknown strategy '" + cnt_strategy + "'");
                opts.node_limit = node_limit;
                count = exact_projected_count(cnf, opts);
            }
            std::cout << "count " << count.str() << "\n";
            const std::size_t m = M ? *M : cnf.M();
            const Dyadic u = count_to_unreliability(count, m);
            std::cout << "unreliability " << u.to_string() << "\n"
                      << "unreliability_decimal " << format_number(Number(u.to_double())) << "\n";
        } else if (*est) {
            const ExperimentConfig c = est_flags.build(est, est_in);
            print_rows(run_experiment(c), c);
        } else if (*bench) {
            ExperimentConfig base = bench_flags.build(bench, "grid:1:all:1/2");
            const std::string csv_out = base.csv_out, json_out = base.json_out;
            base.csv_out.clear();
            base.json_out.clear();
            std::vector<ReportRow> all;
            for (std::size_t s : sides) {
                for (unsigned i : exponents) {
                    if (i < 1 || i > 62) throw InvalidArgument("exponent must lie in 1..62");
                    ExperimentConfig c = base;
                    c.instance = "grid:" + std::to_string(s) + ":" + bench_pattern + ":1/" +
                                 std::to_string(std::uint64_t{1} << i);
                    auto rows = run_experiment(c);
                    std::cerr << c.instance << ": " << rows.size() << " rows\n";
                    all.insert(all.end(), rows.begin(), rows.end());
                }
            }
            if (!csv_out.empty()) write_report(all, ReportFormat::Csv, csv_out);
            if (!json_out.empty()) write_report(all, ReportFormat::Json, json_out);
            if (csv_out.empty() && json_out.empty()) std::cout << to_csv(all);
        } else if (*rep) {
            const auto rows = parse_csv(read_file(rep_in));
            const ReportFormat f = parse_report_format(rep_format);
            if (f == ReportFormat::Svg) {
                for (const auto& p : write_plots(rows, parse_plot_axis(rep_axis), rep_out))
                    std::cout << p.string() << "\n";
            } else {
                write_report(rows, f, rep_out);
            }
        }
        return kOk;
    } catch (const CounterError& e) {
        std::cerr << "counter error: " << e.what() << "\n";
        if (!e.captured_output().empty()) std::cerr << e.captured_output() << "\n";
        return kCounter;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
}
