// pzf — probabilistic zero forcing toolkit.
//
// Subcommands:
//   simulate     Monte Carlo propagation-time campaigns
//   exact        exact expected propagation time (rational arithmetic)
//   chain        d-window Markov chain: matrix, stationary values, sampling
//   verify       regression suite against known constants
//   couple-test  monotone-coupling battery on one graph
//
// Exit codes: 0 success, 1 verification/runtime failure, 2 usage error,
// 3 resource cap exceeded.
#include <CLI11.hpp>
#include <json.hpp>

#include "pzf/engine.hpp"
#include "pzf/errors.hpp"
#include "pzf/exact_ept.hpp"
#include "pzf/graph.hpp"
#include "pzf/parallel.hpp"
#include "pzf/summary.hpp"
#include "pzf/verify.hpp"
#include "pzf/window_chain.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using nlohmann::json;

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
    out << text;
}

struct SimulateArgs {
    pzf::ExperimentConfig config;
    std::string format = "csv";
};

int run_simulate(const SimulateArgs& args) {
    pzf::Graph g = pzf::Graph::from_spec(args.config.graph_spec);
    pzf::ExperimentConfig config = args.config;
    config.format = args.format == "json" ? pzf::OutputFormat::json : pzf::OutputFormat::csv;
    pzf::CampaignResult result = pzf::run_campaign(g, config);

    if (!config.out_path.empty()) {
        if (config.format == pzf::OutputFormat::csv) {
            write_output(pzf::records_csv(result), config.out_path + ".csv");
            write_output(pzf::counts_json(result), config.out_path + ".counts.json");
        } else {
            write_output(pzf::records_json(result), config.out_path + ".trials.json");
        }
        write_output(pzf::summary_json(result), config.out_path + ".summary.json");
    }
    std::cout << pzf::summary_json(result);
    return 0;
}

struct ExactArgs {
    std::string graph_spec;
    std::string start_spec;
    bool min_mode = false;
    int cap = 20;
    int cdf_t = -1;
};

int run_exact(const ExactArgs& args) {
    pzf::Graph g = pzf::Graph::from_spec(args.graph_spec);
    pzf::EptOptions opts;
    opts.vertex_cap = args.cap;

    pzf::BlueSet start;
    if (args.min_mode) {
        pzf::MinEptResult best = pzf::min_expected_pt(g, opts);
        std::cout << "min start vertex: " << best.vertex << "\n";
        std::cout << "expected_pt: " << pzf::fraction_string(best.value) << "\n";
        std::cout << "decimal: " << pzf::decimal_string(best.value) << "\n";
        start = pzf::BlueSet::of(g.vertex_count(), {best.vertex});
    } else {
        auto resolved = pzf::resolve_start(g, args.start_spec);
        if (!resolved) throw std::invalid_argument("exact: min-over-vertices is spelled --min here");
        start = *resolved;
        pzf::Rational e = pzf::expected_pt(g, start, opts);
        std::cout << "expected_pt: " << pzf::fraction_string(e) << "\n";
        std::cout << "decimal: " << pzf::decimal_string(e) << "\n";
    }
    if (args.cdf_t >= 0) {
        auto cdf = pzf::pt_distribution(g, start, args.cdf_t, opts);
        for (size_t t = 0; t < cdf.size(); ++t)
            std::cout << "cdf[" << t << "]: " << pzf::fraction_string(cdf[t]) << " = "
                      << pzf::decimal_string(cdf[t]) << "\n";
    }
    return 0;
}

struct ChainArgs {
    int d = -1;
    bool exact_mode = false;
    bool float_mode = false;
    bool matrix = false;
    bool stationary = false;
    std::string table_range;
    int64_t sample_steps = -1;
    uint64_t seed = 1;
    int workers = 0;
    std::string out_path;
    pzf::ChainLimits limits;
    pzf::StationaryOptions stat_opts;
};

std::pair<int, int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        int d = std::stoi(text);
        return {d, d};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

json matrix_json(const pzf::TransitionMatrix& m) {
    const bool exact = m.mode == pzf::ChainMode::exact;
    json j;
    j["d"] = m.d;
    j["mode"] = exact ? "exact" : "float";
    j["order"] = "lexicographic";
    json states = json::array();
    for (uint32_t rank = 0; rank < m.states(); ++rank)
        states.push_back(pzf::tuple_string({m.d, pzf::state_at_lex_rank(m.d, rank)}));
    j["states"] = states;

    // rank of a state = rank of its bit-reversal
    std::vector<uint32_t> rank_of(m.states());
    for (uint32_t rank = 0; rank < m.states(); ++rank)
        rank_of[pzf::state_at_lex_rank(m.d, rank)] = rank;

    auto entry_string = [&](uint32_t state, uint32_t target) -> std::optional<std::string> {
        if (exact) {
            for (const auto& [s, q] : m.exact_rows[state])
                if (s == target) return pzf::fraction_string(q);
            return std::nullopt;
        }
        for (uint64_t k = m.row_ptr[state]; k < m.row_ptr[state + 1]; ++k)
            if (m.col[k] == target) return g17(m.val[k]);
        return std::nullopt;
    };

    if (m.d <= 4) {
        j["format"] = "dense";
        json rows = json::array();
        for (uint32_t rrank = 0; rrank < m.states(); ++rrank) {
            uint32_t rstate = pzf::state_at_lex_rank(m.d, rrank);
            json row = json::array();
            for (uint32_t crank = 0; crank < m.states(); ++crank) {
                auto e = entry_string(rstate, pzf::state_at_lex_rank(m.d, crank));
                row.push_back(e ? *e : "0");
            }
            rows.push_back(row);
        }
        j["rows"] = rows;
    } else {
        j["format"] = "triplets";
        json entries = json::array();
        for (uint32_t state = 0; state < m.states(); ++state) {
            if (exact) {
                for (const auto& [s, q] : m.exact_rows[state])
                    entries.push_back({rank_of[state], rank_of[s], pzf::fraction_string(q)});
            } else {
                for (uint64_t k = m.row_ptr[state]; k < m.row_ptr[state + 1]; ++k)
                    entries.push_back({rank_of[state], rank_of[m.col[k]], g17(m.val[k])});
            }
        }
        j["entries"] = entries;
    }
    return j;
}

int run_chain(const ChainArgs& args) {
    pzf::ChainMode mode = args.float_mode ? pzf::ChainMode::floating : pzf::ChainMode::exact;

    if (!args.table_range.empty()) {
        auto [lo, hi] = parse_range(args.table_range);
        if (lo < 2 || hi < lo) throw std::invalid_argument("chain: bad table range");
        std::string out = "d,mu_d,eps_d\n";
        for (int d = lo; d <= hi; ++d) {
            pzf::TransitionMatrix m = pzf::build_matrix(d, mode, args.limits, args.workers);
            pzf::StationaryDist dist = pzf::stationary(m, args.stat_opts);
            out += std::to_string(d) + ",";
            if (mode == pzf::ChainMode::exact)
                out += pzf::fraction_string(dist.mu) + "," + pzf::fraction_string(dist.epsilon) + "\n";
            else out += g17(dist.mu_f) + "," + g17(dist.eps_f) + "\n";
        }
        write_output(out, args.out_path);
        return 0;
    }

    if (args.d < 0) throw std::invalid_argument("chain: d is required unless --table is given");

    if (args.sample_steps >= 0) {
        if (args.sample_steps < 1) throw std::invalid_argument("chain: --sample needs steps >= 1");
        pzf::ChainSampleReport rep =
            pzf::sample_chain(args.d, static_cast<uint64_t>(args.sample_steps), args.seed);
        json j;
        j["d"] = rep.d;
        j["steps"] = rep.steps;
        j["seed"] = rep.seed;
        j["all_white_visits"] = rep.all_white_visits;
        j["elapsed_time"] = rep.elapsed_time;
        j["net_distance"] = rep.net_distance;
        j["all_white_frequency"] =
            static_cast<double>(rep.all_white_visits) / static_cast<double>(rep.steps);
        j["disc_final"] = rep.disc_final;
        j["disc_max_abs"] = rep.disc_max_abs;
        j["mean_disc_increment"] = rep.mean_disc_increment();
        j["disc_increment_stderr"] = rep.disc_increment_stderr();
        if (rep.d <= 8) {
            json freq = json::array();
            for (uint32_t rank = 0; rank < rep.state_counts.size(); ++rank) {
                uint32_t s = pzf::state_at_lex_rank(rep.d, rank);
                freq.push_back({pzf::tuple_string({rep.d, s}),
                                static_cast<double>(rep.state_counts[s]) /
                                    static_cast<double>(rep.steps)});
            }
            j["state_frequencies"] = freq;
        }
        write_output(j.dump(2) + "\n", args.out_path);
        return 0;
    }

    pzf::TransitionMatrix m = pzf::build_matrix(args.d, mode, args.limits, args.workers);
    if (args.matrix) {
        write_output(matrix_json(m).dump(2) + "\n", args.out_path);
        return 0;
    }
    // default: stationary
    pzf::StationaryDist dist = pzf::stationary(m, args.stat_opts);
    json j;
    j["d"] = args.d;
    j["mode"] = mode == pzf::ChainMode::exact ? "exact" : "float";
    if (mode == pzf::ChainMode::exact) {
        j["mu"] = pzf::fraction_string(dist.mu);
        j["epsilon"] = pzf::fraction_string(dist.epsilon);
        j["mu_decimal"] = pzf::decimal_string(dist.mu, 17);
        j["epsilon_decimal"] = pzf::decimal_string(dist.epsilon, 17);
    } else {
        j["mu"] = g17(dist.mu_f);
        j["epsilon"] = g17(dist.eps_f);
        j["power_iterations"] = dist.iterations;
    }
    if (args.d <= 8) {
        json pi = json::array();
        for (uint32_t rank = 0; rank < m.states(); ++rank) {
            uint32_t s = pzf::state_at_lex_rank(args.d, rank);
            if (mode == pzf::ChainMode::exact)
                pi.push_back({pzf::tuple_string({args.d, s}), pzf::fraction_string(dist.pi_exact[s])});
            else pi.push_back({pzf::tuple_string({args.d, s}), g17(dist.pi_float[s])});
        }
        j["pi"] = pi;
    }
    write_output(j.dump(2) + "\n", args.out_path);
    return 0;
}

int run_verify_cmd(const pzf::VerifyOptions& opts) {
    pzf::VerifyReport report = pzf::run_verify(opts);
    for (const auto& c : report.checks)
        std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.name << ": " << c.detail << "\n";
    size_t failed = 0;
    for (const auto& c : report.checks)
        if (!c.pass) ++failed;
    std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) FAILED")
              << " (" << report.checks.size() << " total)\n";
    return failed == 0 ? 0 : 1;
}

struct CoupleArgs {
    std::string graph_spec;
    uint64_t trials = 1000;
    uint64_t seed = 0x5eedf00d;
    int max_rounds = 0;
};

int run_couple_test(const CoupleArgs& args) {
    pzf::Graph g = pzf::Graph::from_spec(args.graph_spec);
    pzf::CouplingBatteryResult r = pzf::coupling_battery(g, args.trials, args.seed, args.max_rounds);
    std::cout << "graph: " << args.graph_spec << "\n";
    std::cout << "trials: " << r.trials << "\n";
    std::cout << "containment violations: " << r.containment_violations << "\n";
    std::cout << "domination violations: " << r.domination_violations << "\n";
    std::cout << (r.pass() ? "PASS" : "FAIL") << "\n";
    return r.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"probabilistic zero forcing: simulation, exact analysis, d-window chain"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "run a Monte Carlo campaign");
    sim_cmd->add_option("--graph", sim.config.graph_spec, "graph spec, e.g. grid:9x9")->required();
    sim_cmd->add_option("--start", sim.config.start_spec,
                        "vertex:ID | origin | principal:K | min-over-vertices");
    sim_cmd->add_option("--trials", sim.config.trials, "number of trials")->required();
    sim_cmd->add_option("--seed", sim.config.seed, "master seed");
    sim_cmd->add_option("--max-rounds", sim.config.max_rounds, "round cap (0 = 50*(n+diam))");
    sim_cmd->add_option("--workers", sim.config.workers, "worker threads (0 = PZF_WORKERS/hardware)");
    sim_cmd->add_option("--out", sim.config.out_path, "output base path");
    sim_cmd->add_option("--format", sim.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    ExactArgs exact;
    auto* exact_cmd = app.add_subcommand("exact", "exact expected propagation time");
    exact_cmd->add_option("--graph", exact.graph_spec, "graph spec")->required();
    auto* start_opt = exact_cmd->add_option("--start", exact.start_spec, "start spec");
    auto* min_flag = exact_cmd->add_flag("--min", exact.min_mode, "minimize over vertex orbits");
    start_opt->excludes(min_flag);
    exact_cmd->add_option("--cap", exact.cap, "vertex cap (default 20)");
    exact_cmd->add_option("--cdf", exact.cdf_t, "also print the pt CDF up to this round");

    ChainArgs chain;
    auto* chain_cmd = app.add_subcommand("chain", "d-window Markov chain");
    chain_cmd->add_option("d", chain.d, "window length");
    auto* exact_flag = chain_cmd->add_flag("--exact", chain.exact_mode, "exact rational mode");
    chain_cmd->add_flag("--float", chain.float_mode, "floating-point mode")->excludes(exact_flag);
    chain_cmd->add_flag("--matrix", chain.matrix, "emit the transition matrix as JSON");
    chain_cmd->add_flag("--stationary", chain.stationary, "emit stationary distribution (default)");
    chain_cmd->add_option("--table", chain.table_range, "sweep d over A..B, emit CSV of mu/eps");
    chain_cmd->add_option("--sample", chain.sample_steps, "simulate the chain for STEPS steps");
    chain_cmd->add_option("--seed", chain.seed, "sampling seed");
    chain_cmd->add_option("--workers", chain.workers, "worker threads");
    chain_cmd->add_option("--out", chain.out_path, "write output to file instead of stdout");
    chain_cmd->add_option("--exact-cap", chain.limits.exact_cap, "exact-mode d cap (default 8)");
    chain_cmd->add_option("--float-cap", chain.limits.float_cap, "float-mode d cap (default 16)");
    chain_cmd->add_option("--dense-cap", chain.stat_opts.dense_solve_cap_d,
                          "float mode: dense solve up to this d, power iteration beyond");

    pzf::VerifyOptions verify_opts;
    auto* verify_cmd = app.add_subcommand("verify", "run the regression suite");
    verify_cmd->add_option("--max-float-d", verify_opts.max_float_d, "float table sweep end (default 14)");
    verify_cmd->add_option("--coupling-trials", verify_opts.coupling_trials, "coupling battery size");
    verify_cmd->add_option("--seed", verify_opts.seed, "battery seed");
    verify_cmd->add_option("--workers", verify_opts.workers, "worker threads");

    CoupleArgs couple;
    auto* couple_cmd = app.add_subcommand("couple-test", "monotone coupling battery");
    couple_cmd->add_option("--graph", couple.graph_spec, "graph spec")->required();
    couple_cmd->add_option("--trials", couple.trials, "number of coupled trials");
    couple_cmd->add_option("--seed", couple.seed, "battery seed");
    couple_cmd->add_option("--max-rounds", couple.max_rounds, "round cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim_cmd->parsed()) return run_simulate(sim);
        if (exact_cmd->parsed()) {
            if (!exact.min_mode && exact.start_spec.empty())
                throw std::invalid_argument("exact: provide --start or --min");
            return run_exact(exact);
        }
        if (chain_cmd->parsed()) return run_chain(chain);
        if (verify_cmd->parsed()) return run_verify_cmd(verify_opts);
        if (couple_cmd->parsed()) return run_couple_test(couple);
    } catch (const pzf::CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
