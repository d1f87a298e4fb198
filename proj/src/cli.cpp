#include "qfc/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qfc/bounds.hpp"
#include "qfc/codec.hpp"
#include "qfc/errors.hpp"
#include "qfc/serialize.hpp"
#include "qfc/sim.hpp"
#include "qfc/solver.hpp"
#include "qfc/table.hpp"

namespace qfc::cli {

namespace {

int default_threads() {
    if (const char* env = std::getenv("QFC_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed >= 1) return parsed;
    }
    return 1;
}

std::vector<int> parse_symbols(const std::string& text, int q) {
    std::vector<int> symbols;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) throw InvalidArgument("symbol list: empty entry");
        const int value = std::stoi(token);
        if (value < 0 || value >= q) throw InvalidArgument("symbol list: symbol outside alphabet");
        symbols.push_back(value);
    }
    return symbols;
}

// Writes either to --out or to the primary stream.
void deliver(const std::string& payload, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw InvalidArgument("cannot open output file '" + out_path + "'");
    file << payload;
}

std::string slurp(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw InvalidArgument("cannot open input file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

FeedbackCode build_solver_code(const Int& M, int e, int q, int n, std::uint64_t node_budget,
                               std::ostream& err) {
    Solver solver(q, Solver::Options{node_budget, true, true});
    int block = n;
    if (block < 0) {
        block = min_blocklength_converse(M, e, q);
        while (!solver.is_winning(initial_state(M, e), block).winning) ++block;
        err << "minimal block length " << block << "\n";
    } else if (!solver.is_winning(initial_state(M, e), block).winning) {
        throw NotWinning("no feedback code with these parameters at n = " + std::to_string(block));
    }
    return build_from_strategy(solver.extract_strategy(initial_state(M, e), block), M, e);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"q-ary feedback codes against adversarial substitution errors"};
    app.require_subcommand(1);

    // ------------------------------------------------------------------ solve
    auto* solve_cmd = app.add_subcommand("solve", "decide whether a state is winnable in n questions");
    int q = 3, n = 0;
    std::string state_text, out_path;
    std::uint64_t node_budget = 10'000'000;
    bool no_prune = false;
    solve_cmd->add_option("--q", q, "alphabet size")->required();
    solve_cmd->add_option("--state", state_text, "state literal, bottom-up: c0,c1,...,ce")->required();
    solve_cmd->add_option("--n", n, "questions remaining")->required();
    solve_cmd->add_option("--node-budget", node_budget, "search node cap (default 10^7)");
    solve_cmd->add_flag("--no-prune", no_prune, "disable bound-based pruning");

    // --------------------------------------------------------------- strategy
    auto* strategy_cmd = app.add_subcommand("strategy", "export a winning strategy as JSON");
    strategy_cmd->add_option("--q", q, "alphabet size")->required();
    strategy_cmd->add_option("--state", state_text, "state literal")->required();
    strategy_cmd->add_option("--n", n, "questions remaining")->required();
    strategy_cmd->add_option("--node-budget", node_budget, "search node cap");
    strategy_cmd->add_option("--out", out_path, "output file (default stdout)");

    // ----------------------------------------------------------------- bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "finite converse bounds for M messages");
    std::string m_text = "1";
    int e = 0;
    int opt_n = -1;
    bounds_cmd->add_option("--q", q, "alphabet size")->required();
    bounds_cmd->add_option("--M", m_text, "message-space size")->required();
    bounds_cmd->add_option("--e", e, "error budget")->required();
    bounds_cmd->add_option("--n", opt_n, "block length to check (optional)");

    // ------------------------------------------------------------ rate-region
    auto* region_cmd = app.add_subcommand("rate-region", "emit the asymptotic rate-region curves as CSV");
    int points = 201;
    region_cmd->add_option("--q", q, "alphabet size")->required();
    region_cmd->add_option("--points", points, "grid points on [0, 1/2] (default 201)");
    region_cmd->add_option("--out", out_path, "output file (default stdout)");

    // ------------------------------------------------------------------ table
    auto* table_cmd = app.add_subcommand("table", "build and inspect the construction table");
    int m_max = 8, k_max = 8;
    bool check = false, csv = false;
    table_cmd->add_option("--q", q, "alphabet size (>= 3)")->required();
    table_cmd->add_option("--m", m_max, "rows (default 8)");
    table_cmd->add_option("--k", k_max, "columns (default 8)");
    table_cmd->add_flag("--check", check, "verify all table properties; nonzero exit on failure");
    table_cmd->add_flag("--csv", csv, "emit CSV instead of aligned text");
    table_cmd->add_option("--out", out_path, "output file (default stdout)");

    // ------------------------------------------------------------------ codec
    auto* codec_cmd = app.add_subcommand("codec", "build and run feedback codes");
    codec_cmd->require_subcommand(1);
    auto* build_cmd = codec_cmd->add_subcommand("build", "construct a code and write it as JSON");
    std::string via = "solver";
    int block_n = -1;
    build_cmd->add_option("--M", m_text, "message-space size")->required();
    build_cmd->add_option("--e", e, "error budget")->required();
    build_cmd->add_option("--q", q, "alphabet size")->required();
    build_cmd->add_option("--via", via, "solver|table (default solver)")
        ->check(CLI::IsMember({"solver", "table"}));
    build_cmd->add_option("--n", block_n, "block length (solver route; default: minimal)");
    build_cmd->add_option("--node-budget", node_budget, "search node cap");
    build_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* decode_cmd = codec_cmd->add_subcommand("decode", "decode a received word with a stored code");
    std::string code_path, received_text;
    decode_cmd->add_option("--code", code_path, "code JSON file")->required();
    decode_cmd->add_option("--received", received_text, "received symbols, comma-separated")->required();

    // --------------------------------------------------------------- simulate
    auto* sim_cmd = app.add_subcommand("simulate", "run one message through an adversary");
    std::string theta_text = "0", adversary = "silent";
    std::uint64_t seed = 0;
    sim_cmd->add_option("--code", code_path, "code JSON file")->required();
    sim_cmd->add_option("--theta", theta_text, "message id")->required();
    sim_cmd->add_option("--adversary", adversary, "silent|greedy|random|scripted")
        ->check(CLI::IsMember({"silent", "greedy", "random", "scripted"}));
    sim_cmd->add_option("--seed", seed, "seed for the random adversary");
    sim_cmd->add_option("--received", received_text, "received word for the scripted adversary");

    // ----------------------------------------------------------------- verify
    auto* verify_cmd = app.add_subcommand("verify", "exhaustively verify a code against all budgeted adversaries");
    std::uint64_t leaf_cap = 10'000'000;
    int threads = default_threads();
    verify_cmd->add_option("--code", code_path, "code JSON file")->required();
    verify_cmd->add_option("--cap", leaf_cap, "leaf cap (default 10^7)");
    verify_cmd->add_option("--threads", threads, "worker threads (default $QFC_THREADS or 1)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& help) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& parse_error) {
        err << "error: " << parse_error.what() << "\n";
        return 2;
    }

    try {
        if (solve_cmd->parsed()) {
            Solver solver(q, Solver::Options{node_budget, !no_prune, !no_prune});
            const SolveVerdict verdict = solver.is_winning(parse_state(state_text), n);
            out << (verdict.winning ? "winning" : "losing") << "\n";
            err << "nodes " << verdict.stats.nodes << ", cache hits " << verdict.stats.cache_hits
                << "\n";
            return verdict.winning ? 0 : 1;
        }
        if (strategy_cmd->parsed()) {
            Solver solver(q, Solver::Options{node_budget, true, true});
            const State c = parse_state(state_text);
            if (!solver.is_winning(c, n).winning) {
                err << "losing state; no strategy exists\n";
                return 1;
            }
            deliver(strategy_to_json(solver.extract_strategy(c, n), q) + "\n", out_path, out);
            return 0;
        }
        if (bounds_cmd->parsed()) {
            const Int M(m_text);
            const State fresh = initial_state(M, e);
            bool all_hold = true;
            if (opt_n >= 0) {
                const Int v = volume(fresh, opt_n, q);
                const bool vb = volume_bound_holds(fresh, opt_n, q);
                const bool tb = translated_volume_bounds(M, e, q, opt_n);
                out << "volume " << v << "\n";
                out << "alphabet_power " << ipow(q, opt_n) << "\n";
                out << "volume_bound " << (vb ? "holds" : "fails") << "\n";
                out << "translated_bounds " << (tb ? "hold" : "fail") << "\n";
                all_hold = vb && tb;
            }
            out << "min_blocklength_converse " << min_blocklength_converse(M, e, q) << "\n";
            if (q >= 3) {
                const auto ach = achievable_blocklength(M, e, q);
                out << "achievable_blocklength " << ach.n << " (first-column row " << ach.i << ")\n";
            }
            return all_hold ? 0 : 1;
        }
        if (region_cmd->parsed()) {
            if (points < 2) throw InvalidArgument("rate-region: at least two points required");
            std::vector<double> grid;
            grid.reserve(static_cast<size_t>(points));
            for (int j = 0; j < points; ++j)
                grid.push_back(0.5 * static_cast<double>(j) / static_cast<double>(points - 1));
            std::ostringstream csv_text;
            write_rate_region_csv(csv_text, emit_rate_region(q, grid));
            deliver(csv_text.str(), out_path, out);
            return 0;
        }
        if (table_cmd->parsed()) {
            const ConstructionTable table = ConstructionTable::build(q, m_max, k_max);
            std::ostringstream text;
            if (csv) {
                write_table_csv(text, table);
            } else {
                for (int m = 1; m <= table.m_max(); ++m) {
                    for (int k = 1; k <= table.k_max(); ++k) {
                        if (k > 1) text << ' ';
                        text << table.at(m, k);
                    }
                    text << '\n';
                }
            }
            deliver(text.str(), out_path, out);
            if (check) {
                const TableReport report = verify_table(table);
                err << report.summary();
                return report.ok() ? 0 : 1;
            }
            return 0;
        }
        if (build_cmd->parsed()) {
            const Int M(m_text);
            FeedbackCode code = via == "table" ? build_from_table(M, e, q)
                                               : build_solver_code(M, e, q, block_n, node_budget, err);
            err << "n " << code.n << ", rate " << rate_string(code) << "\n";
            deliver(code_to_json(code) + "\n", out_path, out);
            return 0;
        }
        if (decode_cmd->parsed()) {
            const FeedbackCode code = code_from_json(slurp(code_path));
            try {
                out << decode(code, parse_symbols(received_text, code.q)) << "\n";
            } catch (const NoUniqueSurvivor& ambiguous) {
                err << ambiguous.what() << "\n";
                return 1;
            }
            return 0;
        }
        if (sim_cmd->parsed()) {
            const FeedbackCode code = code_from_json(slurp(code_path));
            const Int theta(theta_text);
            std::unique_ptr<Adversary> foe;
            if (adversary == "silent") foe = make_silent_adversary();
            if (adversary == "greedy") foe = make_greedy_adversary(theta);
            if (adversary == "random") foe = make_random_adversary(seed);
            if (adversary == "scripted") {
                if (received_text.empty())
                    throw InvalidArgument("simulate: the scripted adversary needs --received");
                foe = make_scripted_adversary(parse_symbols(received_text, code.q));
            }
            const Transcript t = simulate(code, *foe, theta);
            out << transcript_line(t) << "\n";
            return t.ok ? 0 : 1;
        }
        if (verify_cmd->parsed()) {
            const FeedbackCode code = code_from_json(slurp(code_path));
            const VerifyOutcome outcome = exhaustive_verify(code, leaf_cap, threads);
            if (outcome.ok) {
                out << "verified " << code.M << " messages over " << outcome.leaves
                    << " adaptive paths: OK\n";
                return 0;
            }
            out << "verification FAILED";
            if (outcome.counterexample) out << ": " << transcript_line(*outcome.counterexample);
            out << "\n";
            return 1;
        }
    } catch (const Error& domain_error) {
        err << "error: " << domain_error.what() << "\n";
        return 2;
    } catch (const std::exception& other) {
        err << "error: " << other.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace qfc::cli
