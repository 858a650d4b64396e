#include "rainbow/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "rainbow/constructions.hpp"
#include "rainbow/core.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/io.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/solver.hpp"

namespace rainbow::cli {

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNone = 1;
constexpr int kExitUsage = 2;
constexpr int kExitExhausted = 3;
constexpr int kDeskScaleCap = 7;

using Clock = std::chrono::steady_clock;

std::string join_args(const std::vector<std::string>& args) {
    std::string out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += " ";
        out += args[i];
    }
    return out;
}

struct TargetSpec {
    solver::Target target;
    std::string name;
};

TargetSpec parse_target(const std::string& text) {
    if (text == "ham") return {solver::Target::hamiltonian(), "ham"};
    if (text == "pm") return {solver::Target::perfect_matching(), "pm"};
    if (text.rfind("cycle:", 0) == 0) {
        int len = 0;
        try {
            len = std::stoi(text.substr(6));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--target", "bad cycle length in '" + text + "'");
        }
        return {solver::Target::cycle(len), text};
    }
    throw CLI::ValidationError("--target", "expected ham, cycle:L or pm, got '" + text + "'");
}

/// Exact graph-count check: cycle targets need 2n graphs, pm needs n.
void check_role(const BipartiteFamily& family, const solver::Target& target, std::ostream& err) {
    const int n = family.n();
    const int s = family.graph_count();
    if (target.kind == solver::Target::Kind::PerfectMatching) {
        if (s != n)
            throw std::invalid_argument("target pm needs a matching-family with n = " +
                                        std::to_string(n) + " graphs, file has " +
                                        std::to_string(s));
    } else {
        if (s != 2 * n)
            throw std::invalid_argument("cycle targets need a cycle-family with 2n = " +
                                        std::to_string(2 * n) + " graphs, file has " +
                                        std::to_string(s));
        if (target.kind == solver::Target::Kind::Cycle &&
            (target.length % 2 != 0 || target.length < 4 || target.length > 2 * n))
            throw std::invalid_argument("cycle length must be even and in [4, 2n]");
    }
    (void)err;
}

void emit_report(const io::Report& report, const std::string& path, bool json,
                 std::ostream& out) {
    std::string rendered = json ? report.json() : report.text();
    if (path.empty()) {
        out << rendered;
    } else {
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write report file: " + path);
        file << rendered;
    }
}

struct GenOptions {
    int n{0};
    int graphs{0};
    int slack{0};
    std::uint64_t seed{0};
    bool near_miss{false};
    std::string construction;
    std::string out_path;
};

int run_gen(const GenOptions& opt, std::ostream& out) {
    std::optional<BipartiteFamily> family;
    if (!opt.construction.empty()) {
        if (opt.construction == "complete") {
            if (opt.n <= 0 || opt.graphs <= 0)
                throw std::invalid_argument("--construction complete needs --n and --graphs");
            family = complete_family(opt.n, opt.graphs);
        } else if (opt.construction == "two-blocks") {
            if (opt.n <= 0) throw std::invalid_argument("--construction two-blocks needs --n");
            family = two_blocks_family(opt.n);
        } else if (opt.construction == "pm-blocks") {
            if (opt.n <= 0) throw std::invalid_argument("--construction pm-blocks needs --n");
            family = pm_blocks_family(opt.n);
        } else if (opt.construction == "hexagon") {
            family = hexagon_family();
        } else {
            throw std::invalid_argument("unknown construction '" + opt.construction + "'");
        }
    } else {
        if (opt.n <= 0 || opt.graphs <= 0)
            throw std::invalid_argument("random generation needs --n and --graphs");
        gen::GenSpec spec{opt.n, opt.graphs, opt.slack, opt.seed};
        family = opt.near_miss ? gen::random_near_miss_family(spec)
                               : gen::random_valid_family(spec);
    }
    io::save_family_file(*family, opt.out_path);
    out << io::family_digest(*family) << "\n";
    return kExitFound;
}

int run_check(const std::string& path, const std::string& role_name, std::ostream& out) {
    BipartiteFamily family = io::load_family_file(path);
    FamilyRole role =
        role_name == "matching" ? FamilyRole::MatchingFamily : FamilyRole::CycleFamily;
    ValidationReport report = validate_family(family, role);
    auto thresholds = report.thresholds;
    out << "role " << (role == FamilyRole::CycleFamily ? "cycle" : "matching") << "\n";
    out << "thresholds red " << thresholds.red_min << " blue " << thresholds.blue_min << "\n";
    for (std::size_t g = 0; g < report.per_graph.size(); ++g) {
        out << "graph " << g + 1 << " min-red " << report.per_graph[g].min_red_degree
            << " min-blue " << report.per_graph[g].min_blue_degree << "\n";
    }
    for (const auto& msg : report.structural_errors) out << "structural-error " << msg << "\n";
    for (const auto& msg : report.role_errors) out << "role-error " << msg << "\n";
    for (const auto& v : report.violations) {
        out << "violation graph " << v.graph << " vertex " << to_string(v.vertex) << " degree "
            << v.degree << " required " << v.required << "\n";
    }
    out << "verdict " << (report.pass() ? "pass" : "fail") << "\n";
    return report.pass() ? kExitFound : kExitNone;
}

struct SolveOptions {
    std::string file;
    std::string target_text;
    std::uint64_t budget_nodes{0};  // 0 = unlimited
    double time_limit{0};           // seconds; 0 = unlimited
    std::uint64_t seed{0};
    bool no_fallback{false};
    std::string report_path;
    bool json{false};
    bool use_solver{true};
};

int run_solve(const SolveOptions& opt, const std::vector<std::string>& echo, std::ostream& out,
              std::ostream& err) {
    BipartiteFamily family = io::load_family_file(opt.file);
    TargetSpec target = parse_target(opt.target_text);
    check_role(family, target.target, err);

    oracle::SearchBudget budget;
    if (opt.budget_nodes > 0) budget.max_nodes = opt.budget_nodes;
    if (opt.time_limit > 0)
        budget.time_limit =
            std::chrono::milliseconds(static_cast<std::int64_t>(opt.time_limit * 1000.0));

    io::Report report;
    report.add("command", join_args(echo));
    report.add("digest", io::family_digest(family));
    report.add("seed", opt.seed);
    report.add("target", target.name);

    auto started = Clock::now();
    std::string outcome;
    std::optional<RainbowSubgraph> witness;
    int exit_code = kExitNone;

    if (opt.use_solver) {
        solver::SolveResult result =
            solver::solve(family, target.target, budget, !opt.no_fallback, opt.seed);
        switch (result.status) {
            case solver::SolveStatus::Found:
                outcome = "found";
                witness = result.witness;
                exit_code = kExitFound;
                break;
            case solver::SolveStatus::None:
                outcome = "none";
                exit_code = kExitNone;
                break;
            case solver::SolveStatus::Stalled:
                outcome = "no_move";
                exit_code = kExitExhausted;
                break;
            case solver::SolveStatus::BudgetExhausted:
                outcome = "budget_exhausted";
                exit_code = kExitExhausted;
                break;
        }
        report.add("outcome", outcome);
        if (witness) {
            report.add("witness-length", std::to_string(witness->edges.size()));
            for (const auto& line : io::witness_lines(*witness)) report.add("witness", line);
        }
        report.add("restarts", result.stats.restarts);
        report.add("moves-rotate", result.stats.rotate_calls);
        report.add("moves-extend", result.stats.extend_calls);
        report.add("moves-close", result.stats.close_calls);
        report.add("moves-shorten", result.stats.shorten_calls);
        report.add("moves-shift", result.stats.shift_calls);
        report.add("moves-bondy", result.stats.bondy_calls);
        report.add("moves-pm-swap", result.stats.pm_swap_calls);
        report.add("greedy-nodes", result.stats.greedy_nodes);
        if (!result.stats.stall_kind.empty()) report.add("stall-kind", result.stats.stall_kind);
        report.add("used-fallback", result.used_fallback ? "yes" : "no");
        report.add("oracle-nodes", result.oracle_nodes);
    } else {
        oracle::SearchResult result;
        switch (target.target.kind) {
            case solver::Target::Kind::Hamiltonian:
                result = oracle::find_rainbow_hamiltonian(family, budget);
                break;
            case solver::Target::Kind::Cycle:
                result = oracle::find_rainbow_cycle(family, target.target.length, budget);
                break;
            case solver::Target::Kind::PerfectMatching:
                result = oracle::find_rainbow_perfect_matching(family, budget);
                break;
        }
        switch (result.status) {
            case oracle::SearchStatus::Found:
                outcome = "found";
                witness = result.witness;
                exit_code = kExitFound;
                break;
            case oracle::SearchStatus::None:
                outcome = "none";
                exit_code = kExitNone;
                break;
            case oracle::SearchStatus::BudgetExhausted:
                outcome = "budget_exhausted";
                exit_code = kExitExhausted;
                break;
        }
        report.add("outcome", outcome);
        if (witness) {
            report.add("witness-length", std::to_string(witness->edges.size()));
            for (const auto& line : io::witness_lines(*witness)) report.add("witness", line);
        }
        report.add("nodes", result.nodes);
    }
    auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started).count();
    report.add("time-ms", static_cast<std::uint64_t>(elapsed));
    emit_report(report, opt.report_path, opt.json, out);
    return exit_code;
}

struct VerifyOptions {
    int theorem{0};
    int n_min{2};
    int n_max{5};
    int trials{10};
    std::uint64_t seed{0};
    std::string report_path;
    bool json{false};
};

int run_verify_theorem(const VerifyOptions& opt, const std::vector<std::string>& echo,
                       std::ostream& out) {
    if (opt.theorem < 3 || opt.theorem > 5)
        throw std::invalid_argument("--theorem must be 3, 4 or 5");
    if (opt.n_min < 2 || opt.n_max < opt.n_min)
        throw std::invalid_argument("need 2 <= n-min <= n-max");
    if (opt.n_max > kDeskScaleCap)
        throw std::invalid_argument("n-max exceeds the desk-scale cap of " +
                                    std::to_string(kDeskScaleCap));
    if (opt.trials < 1) throw std::invalid_argument("--trials must be >= 1");

    io::Report report;
    report.add("command", join_args(echo));
    report.add("theorem", static_cast<std::uint64_t>(opt.theorem));
    report.add("n-min", static_cast<std::uint64_t>(opt.n_min));
    report.add("n-max", static_cast<std::uint64_t>(opt.n_max));
    report.add("trials", static_cast<std::uint64_t>(opt.trials));
    report.add("seed", opt.seed);

    auto started = Clock::now();
    bool all_pass = true;
    std::optional<std::string> counterexample;
    std::uint64_t trial_index = 0;

    for (int n = opt.n_min; n <= opt.n_max && all_pass; ++n) {
        const int graphs = opt.theorem == 5 ? n : 2 * n;
        for (int t = 0; t < opt.trials && all_pass; ++t, ++trial_index) {
            std::uint64_t trial_seed = gen::derive_seed(opt.seed, trial_index);
            gen::GenSpec spec{n, graphs, 0, trial_seed};
            BipartiteFamily family = gen::random_valid_family(spec);

            std::vector<std::pair<std::string, bool>> outcomes;
            if (opt.theorem == 3) {
                auto res = oracle::find_rainbow_hamiltonian(family);
                bool ok = res.found() && verify_rainbow(*res.witness, family).ok;
                outcomes.emplace_back("ham", ok);
            } else if (opt.theorem == 4) {
                for (int len = 4; len <= 2 * n; len += 2) {
                    if (n == 3 && len == 4) continue;  // below the theorem's range
                    auto res = oracle::find_rainbow_cycle(family, len);
                    bool ok = res.found() && verify_rainbow(*res.witness, family).ok;
                    outcomes.emplace_back("cycle:" + std::to_string(len), ok);
                }
            } else {
                auto res = oracle::find_rainbow_perfect_matching(family);
                bool ok = res.found() && verify_rainbow(*res.witness, family).ok;
                outcomes.emplace_back("pm", ok);
            }
            for (const auto& [target, ok] : outcomes) {
                report.add("trial", std::to_string(trial_index) + " n=" + std::to_string(n) +
                                        " target=" + target +
                                        " outcome=" + (ok ? "found" : "MISSING"));
                if (!ok) {
                    all_pass = false;
                    counterexample = io::write_family(family);
                }
            }
        }
    }

    report.add("result", all_pass ? "pass" : "fail");
    if (counterexample) {
        std::istringstream lines(*counterexample);
        std::string line;
        while (std::getline(lines, line)) report.add("counterexample", line);
    }
    auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started).count();
    report.add("time-ms", static_cast<std::uint64_t>(elapsed));
    emit_report(report, opt.report_path, opt.json, out);
    return all_pass ? kExitFound : kExitNone;
}

}  // namespace

RunResult run(const std::vector<std::string>& args) {
    RunResult result;
    std::ostringstream out, err;

    CLI::App app{"rainbow structures in bipartite graph families"};
    app.require_subcommand(1);

    GenOptions gen_opt;
    auto* gen_cmd = app.add_subcommand("gen", "generate a family file");
    gen_cmd->add_option("--n", gen_opt.n, "half vertex count");
    gen_cmd->add_option("--graphs", gen_opt.graphs, "number of graphs");
    auto* slack_opt = gen_cmd->add_option("--slack", gen_opt.slack, "extra degree above threshold");
    auto* seed_opt = gen_cmd->add_option("--seed", gen_opt.seed, "random seed");
    auto* near_opt = gen_cmd->add_flag("--near-miss", gen_opt.near_miss,
                                       "damage one vertex to one edge below threshold");
    auto* cons_opt = gen_cmd->add_option("--construction", gen_opt.construction,
                                         "complete|two-blocks|pm-blocks|hexagon");
    gen_cmd->add_option("--out", gen_opt.out_path, "output file")->required();
    cons_opt->excludes(slack_opt);
    cons_opt->excludes(seed_opt);
    cons_opt->excludes(near_opt);

    std::string check_file, check_role_name{"cycle"};
    auto* check_cmd = app.add_subcommand("check", "validate a family file");
    check_cmd->add_option("file", check_file, "family file")->required();
    check_cmd->add_option("--role", check_role_name, "cycle|matching")
        ->check(CLI::IsMember({"cycle", "matching"}));

    SolveOptions solve_opt, oracle_opt;
    auto add_solve_options = [](CLI::App* cmd, SolveOptions& opt) {
        cmd->add_option("file", opt.file, "family file")->required();
        cmd->add_option("--target", opt.target_text, "ham|cycle:L|pm")->required();
        cmd->add_option("--budget-nodes", opt.budget_nodes, "search node budget");
        cmd->add_option("--time-limit", opt.time_limit, "time limit in seconds");
        cmd->add_option("--seed", opt.seed, "solver seed");
        cmd->add_option("--report", opt.report_path, "write the report here");
        cmd->add_flag("--json", opt.json, "render the report as JSON");
    };
    auto* solve_cmd = app.add_subcommand("solve", "proof-guided search with oracle fallback");
    add_solve_options(solve_cmd, solve_opt);
    solve_cmd->add_flag("--no-fallback", solve_opt.no_fallback, "never defer to the oracle");
    auto* oracle_cmd = app.add_subcommand("oracle", "exact exhaustive search");
    add_solve_options(oracle_cmd, oracle_opt);
    oracle_opt.use_solver = false;

    VerifyOptions verify_opt;
    auto* verify_cmd = app.add_subcommand("verify-theorem", "spot-check a theorem at desk scale");
    verify_cmd->add_option("--theorem", verify_opt.theorem, "3|4|5")->required();
    verify_cmd->add_option("--n-min", verify_opt.n_min, "smallest n");
    verify_cmd->add_option("--n-max", verify_opt.n_max, "largest n (capped at 7)");
    verify_cmd->add_option("--trials", verify_opt.trials, "families per n");
    verify_cmd->add_option("--seed", verify_opt.seed, "master seed");
    verify_cmd->add_option("--report", verify_opt.report_path, "write the report here");
    verify_cmd->add_flag("--json", verify_opt.json, "render the report as JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        result.out = app.help();
        result.exit_code = kExitFound;
        return result;
    } catch (const CLI::ParseError& e) {
        result.err = std::string(e.what()) + "\n";
        result.exit_code = kExitUsage;
        return result;
    }

    try {
        if (gen_cmd->parsed()) {
            result.exit_code = run_gen(gen_opt, out);
        } else if (check_cmd->parsed()) {
            result.exit_code = run_check(check_file, check_role_name, out);
        } else if (solve_cmd->parsed()) {
            result.exit_code = run_solve(solve_opt, args, out, err);
        } else if (oracle_cmd->parsed()) {
            result.exit_code = run_solve(oracle_opt, args, out, err);
        } else if (verify_cmd->parsed()) {
            result.exit_code = run_verify_theorem(verify_opt, args, out);
        }
    } catch (const io::ParseException& e) {
        err << e.what() << "\n";
        result.exit_code = kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = kExitUsage;
    }

    result.out = out.str();
    result.err = err.str();
    return result;
}

}  // namespace rainbow::cli
