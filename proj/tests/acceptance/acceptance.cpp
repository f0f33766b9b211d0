// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and run counts are fixed here.

#include "netrel/cnf.hpp"
#include "netrel/encoder.hpp"
#include "netrel/errors.hpp"
#include "netrel/estimators.hpp"
#include "netrel/harness/counter_process.hpp"
#include "netrel/harness/experiment.hpp"
#include "netrel/metrics.hpp"
#include "netrel/oracle.hpp"
#include "netrel/projected_counter.hpp"
#include "netrel/transform.hpp"

#include <boost/math/distributions/binomial.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace netrel;

namespace {

using Clock = std::chrono::steady_clock;

std::string data_path(const std::string& name) { return std::string(NETREL_TEST_DATA) + "/" + name; }

std::string read_data(const std::string& name) {
    std::ifstream in(data_path(name), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto start = Clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    char timing[96];
    std::snprintf(timing, sizeof timing, "%.2fs (limit %.0fs)", secs, limit_seconds);
    out.require(secs < limit_seconds, "runtime over limit");
    if (!out.pass) ++failures;
    std::cout << "criterion " << id << ": " << (out.pass ? "PASS" : "FAIL") << "  " << title << "  [" << timing
              << "]  " << out.detail << std::endl;
}

std::string fmt(double v) { return format_number(Number(v)); }

// Largest failure count still consistent with a true rate of delta: the
// smallest c with P(Binomial(n, delta) > c) <= 0.01.
std::uint64_t binomial_slack(std::uint64_t n, double delta) {
    const boost::math::binomial_distribution<double> dist(static_cast<double>(n), delta);
    for (std::uint64_t c = 0; c <= n; ++c)
        if (boost::math::cdf(boost::math::complement(dist, static_cast<double>(c))) <= 0.01) return c;
    return n;
}

DyadicProb random_prob(std::mt19937_64& rng, unsigned max_bits) {
    const unsigned b = std::uniform_int_distribution<unsigned>(1, max_bits)(rng);
    return DyadicProb(std::uniform_int_distribution<std::uint64_t>(1, (std::uint64_t{1} << b) - 1)(rng), b);
}

NetworkInstance random_multigraph(std::mt19937_64& rng) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 7)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t u = pick(rng);
        std::size_t v = pick(rng);
        while (v == u) v = pick(rng);
        edges.push_back({u, v, random_prob(rng, 3)});
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(std::uniform_int_distribution<std::size_t>(2, n)(rng));
    return NetworkInstance(names, edges, order);
}

void diamond_pipeline(Outcome& out) {
    const NetworkInstance g = parse_instance(read_data("diamond.nrel"));
    out.require(g.vertex_count() == 4 && g.edge_count() == 4, "fixture shape");
    const UnweightedInstance uw = unweight(g);
    out.require(uw.instance.edge_count() == 6 && uw.M == 6, "6 edges after unweighting");
    out.require(uw.instance.vertex_count() == g.vertex_count() + 1, "one added vertex");
    const ProjectedCnf cnf = encode(uw);
    out.require(cnf.num_vars == 11 && cnf.clauses.size() == 14, "11 vars / 14 clauses");
    const BigInt count = exact_projected_count(cnf);
    out.require(count == 33, "count 33");
    const Dyadic u = count_to_unreliability(count, uw.M);
    out.require(u == Dyadic(33, 6), "count/2^M = 33/64");
    const Dyadic oracle = exact_unreliability(g).unreliability;
    out.require(oracle == Dyadic(33, 6), "oracle 33/64");
    out.note("vars=" + std::to_string(cnf.num_vars) + " clauses=" + std::to_string(cnf.clauses.size()) +
             " count=" + count.str() + " u=" + u.to_string() + " oracle=" + oracle.to_string());
}

void gadget_exactness(Outcome& out) {
    std::mt19937_64 rng(2024);
    std::size_t checked = 0, mismatches = 0;
    for (int t = 0; t < 200; ++t) {
        const DyadicProb q = random_prob(rng, 8);
        const BitExpansion b = dyadic_expansion(q);
        const Gadget gadget = build_gadget(b);
        std::vector<std::string> names;
        for (std::size_t i = 0; i < gadget.vertex_count; ++i) names.push_back(std::to_string(i));
        std::vector<Edge> edges;
        for (auto [x, y] : gadget.edges) edges.push_back({x, y, DyadicProb::half()});
        const NetworkInstance inst(names, edges, {gadget.entry(), gadget.exit()});
        const Dyadic rel = exact_unreliability(inst).reliability();
        const std::size_t m = b.length(), zm = b.zeros_prefix(m);
        const bool ok = rel == Dyadic(q) &&
                        gadget.vertex_count + gadget.edges.size() == zm + 2 + m;
        mismatches += !ok;
        ++checked;
    }
    out.require(mismatches == 0, std::to_string(mismatches) + " gadget mismatches");
    out.note(std::to_string(checked) + " random q with <= 8 bits, all exact");
}

void encoding_equivalence(Outcome& out) {
    std::mt19937_64 rng(77);
    std::size_t mismatches = 0, max_m = 0;
    for (int t = 0; t < 100; ++t) {
        const NetworkInstance g = random_multigraph(rng);
        const UnweightedInstance uw = unweight(g);
        const BigInt count = exact_projected_count(encode(uw));
        max_m = std::max(max_m, uw.M);
        mismatches += count_to_unreliability(count, uw.M) != exact_unreliability(g).unreliability;
    }
    out.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
    out.note("100 random multigraphs, max M=" + std::to_string(max_m) + ", all exact");
}

struct CalibrationCase {
    std::string name;
    std::function<double(std::uint64_t seed, double p)> run;
    double eps;
};

void calibration(Outcome& out) {
    const PacParams params(0.2, 0.2);
    const std::uint64_t k = choose_k(params);
    const std::uint64_t runs = 500;
    const std::uint64_t slack = binomial_slack(runs, params.delta);
    const std::vector<CalibrationCase> cases{
        {"sra", [&](std::uint64_t s, double p) {
             BernoulliStream y(p, CounterRng::substream(s, 0));
             return sra(y, params).value;
         }, params.eps},
        {"gbas", [&](std::uint64_t s, double p) {
             BernoulliStream y(p, CounterRng::substream(s, 0));
             RngEntropy ent(CounterRng::substream(s, 1));
             return gbas(y, k, ent).value;
         }, params.eps},
        {"aa", [&](std::uint64_t s, double p) {
             BernoulliStream cheap(p, CounterRng::substream(s, 2));
             BernoulliStream y(p, CounterRng::substream(s, 0));
             return aa(cheap, y, params).value;
         }, params.eps},
        {"mom", [&](std::uint64_t s, double p) {
             BernoulliStream y(p, CounterRng::substream(s, 0));
             const std::uint64_t n = mom_samples_per_experiment((1.0 - p) / p, 0.3);
             return median_of_means(y, n, params.delta).value;
         }, 0.3},
    };
    out.note("k=" + std::to_string(k) + " r=" + std::to_string(mom_repetitions(params.delta)) +
             " allowed failures <= " + std::to_string(slack) + "/500 (delta=0.2 at 99%)");
    std::uint64_t case_index = 0;
    for (const CalibrationCase& c : cases) {
        for (double p : {0.5, 0.1, 0.02}) {
            std::uint64_t fails = 0;
            for (std::uint64_t i = 0; i < runs; ++i) {
                const double est = c.run(derive_seed(1000 + case_index, i), p);
                fails += std::abs(est - p) >= c.eps * p;
            }
            ++case_index;
            out.require(fails <= slack, c.name + " p=" + fmt(p));
            out.note(c.name + "(p=" + fmt(p) + ") " + std::to_string(fails) + "/500");
        }
    }
}

void unbiasedness(Outcome& out) {
    const std::uint64_t k = choose_k(PacParams(0.2, 0.2));
    const int runs = 500;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < runs; ++i) {
        BernoulliStream y(0.5, CounterRng::substream(derive_seed(55, i), 0));
        RngEntropy ent(CounterRng::substream(derive_seed(55, i), 1));
        const double v = gbas(y, k, ent).value;
        sum += v;
        sq += v * v;
    }
    const double mean = sum / runs;
    const double se = std::sqrt((sq / runs - mean * mean) / (runs - 1));
    const double z = (mean - 0.5) / se;
    out.require(std::abs(z) <= 3.0, "mean outside 3 standard errors");
    out.note("mean=" + fmt(mean) + " se=" + fmt(se) + " z=" + fmt(z));
}

void grid_end_to_end(Outcome& out) {
    const NetworkInstance g = make_grid(3, TerminalPattern::TwoTerminal, DyadicProb(1, 3));
    out.require(g.edge_count() == 12, "12 edges");
    const Dyadic truth = exact_unreliability(g).unreliability;
    out.require(truth == Dyadic::parse("3121220313/68719476736"), "oracle equals reference value");

    ExperimentConfig c;
    c.instance = "grid:3:two:1/8";
    c.method = Method::Gbas;
    c.replications = 50;
    c.seed = 7;
    const auto rows = run_experiment(c);
    std::vector<double> errors;
    std::size_t additive_misses = 0;
    for (const ReportRow& r : rows) {
        out.require(r.truth == truth && r.eps_o.has_value(), "row carries truth and eps_o");
        if (r.eps_o) errors.push_back(*r.eps_o);
        const double est = to_double(r.estimate);
        additive_misses += std::abs(est - truth.to_double()) >= 0.2 * truth.to_double();
    }
    const double delta_o = observed_confidence(errors, 0.2);
    const std::uint64_t slack = binomial_slack(50, 0.2);
    out.require(errors.size() == 50, "50 rows");
    out.require(delta_o * 50 <= static_cast<double>(slack) + 1e-9, "delta_o beyond binomial slack");
    out.note("truth=" + truth.to_string() + " delta_o=" + fmt(delta_o) + " (allowed <= " +
             std::to_string(slack) + "/50 at 99%), |u^-u|>=0.2u in " + std::to_string(additive_misses) + "/50");

    ExperimentConfig rc;
    rc.instance = "grid:3:two:1/8";
    rc.method = Method::Relnet;
    const auto counted = run_experiment(rc);
    const Dyadic via_count = std::get<Dyadic>(counted.at(0).estimate);
    out.require(via_count == truth, "counting pipeline equals oracle");
    out.note("count pipeline=" + via_count.to_string());
}

void metric_identities(Outcome& out) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> pos(1e-6, 10.0);
    std::size_t unit_misses = 0;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double var_c = pos(rng), tau_c = pos(rng), var_a = pos(rng), tau_a = pos(rng), mean = pos(rng);
        unit_misses += efficiency_ratio(var_c, tau_c, var_c, tau_c) != 1.0;
        const double er = efficiency_ratio(var_c, tau_c, var_a, tau_a);
        const double ratio = wnrv(tau_c, var_c, mean) / wnrv(tau_a, var_a, mean);
        worst = std::max(worst, std::abs(er - ratio) / er);
    }
    out.require(unit_misses == 0, "er(x,t,x,t) = 1");
    out.require(worst <= 1e-12, "er = wnrv ratio");
    const double up = observed_error(1.2, 1.0), down = observed_error(0.8, 1.0);
    // 1.2 is not a binary fraction: double(1.2) - 1 is exactly
    // 0.19999999999999996, which is the best any double routine can return.
    // Tolerance is the representation error of the input, 2^-53.
    out.require(up == 1.2 - 1.0, "observed_error(1.2,1.0) is the exact difference");
    out.require(std::abs(up - 0.2) <= 0x1p-53, "observed_error(1.2,1.0) within 2^-53 of 0.2");
    out.require(down == -0.25, "observed_error(0.8,1.0) = -0.25");
    out.note("worst relative gap=" + fmt(worst) + " observed_error(1.2,1.0)=" + fmt(up) +
             " observed_error(0.8,1.0)=" + fmt(down));
}

void dimacs_and_counter(Outcome& out) {
    const NetworkInstance edge({"s", "t"}, {Edge{0, 1, DyadicProb::half()}}, {0, 1});
    const std::string text = emit_dimacs(encode(edge));
    out.require(text == read_data("single_edge.cnf"), "byte-identical to fixture file");
    out.require(text == "c ind 1 0\np cnf 3 4\n2 3 0\n-2 -3 0\n-2 -1 3 0\n-3 -1 2 0\n", "byte-identical to literal");
    const std::filesystem::path cnf = data_path("single_edge.cnf");
    out.require(invoke_counter(cnf, "sh " + data_path("stub_mc33.sh")) == 33, "stub s mc 33 -> 33");
    out.require(invoke_counter(cnf, "sh " + data_path("stub_chatter.sh")) == 0, "chatter then s mc 0 -> 0");
    bool raised = false;
    try {
        invoke_counter(cnf, "sh " + data_path("stub_fail.sh"));
    } catch (const CounterError&) {
        raised = true;
    }
    out.require(raised, "nonzero exit -> counter error");
    out.note("golden file matches; stubs 33, 0, error");
}

} // namespace

int main() {
    criterion(1, "four-edge example pipeline is exact", 1, diamond_pipeline);
    criterion(2, "gadget reliability equals q", 60, gadget_exactness);
    criterion(3, "count/2^M equals oracle on random multigraphs", 300, encoding_equivalence);
    criterion(4, "PAC calibration of sra, gbas, aa, mom", 600, calibration);
    criterion(5, "GBAS unbiased on Bernoulli(0.5)", 60, unbiasedness);
    criterion(6, "3x3 grid end to end", 300, grid_end_to_end);
    criterion(7, "metric identities", 10, metric_identities);
    criterion(8, "DIMACS golden file and counter protocol", 10, dimacs_and_counter);
    std::cout << "criterion 9: NOT REPRODUCED  CPU-time curves and power-network results depend on "
                 "third-party estimators, an external dataset and specific hardware; criteria 1-8 stand in"
              << std::endl;
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
