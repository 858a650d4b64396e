// Acceptance suite: one check per criterion, each printing a PASS/FAIL
// line. The process exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rainbow/cli.hpp"
#include "rainbow/constructions.hpp"
#include "rainbow/core.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/io.hpp"
#include "rainbow/lemmas.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/solver.hpp"

using namespace rainbow;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kMasterSeed = 11;

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> check;
    double limit_seconds;
};

// ---- shared instance pools -------------------------------------------------

struct HamInstance {
    int n;
    std::uint64_t seed;
    BipartiteFamily family;
};

std::vector<HamInstance>& theorem3_instances() {
    static std::vector<HamInstance> instances = [] {
        std::vector<HamInstance> out;
        std::uint64_t trial = 0;
        for (int n = 2; n <= 6; ++n) {
            for (int t = 0; t < 50; ++t, ++trial) {
                std::uint64_t seed = gen::derive_seed(kMasterSeed, trial);
                out.push_back({n, seed, gen::random_valid_family({n, 2 * n, 0, seed})});
            }
        }
        return out;
    }();
    return instances;
}

// ---- criteria ---------------------------------------------------------------

bool criterion1_lemma10(std::string& detail) {
    long long checked = 0;
    for (int m = 2; m <= 12; m += 2) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
            CyclicSet a(m, bits);
            for (int d = 1; d <= m / 2; ++d) {
                ++checked;
                if (!lemma10_implication_holds(a, d)) {
                    detail = "failed at m=" + std::to_string(m) + " bits=" + std::to_string(bits) +
                             " d=" + std::to_string(d);
                    return false;
                }
            }
        }
    }
    detail = std::to_string(checked) + " (A, d) pairs";
    return true;
}

bool criterion2_lemma11(std::string& detail) {
    long long checked = 0;
    for (int m = 4; m <= 16; m += 2) {
        const int n = m / 2;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
            CyclicSet a(m, bits);
            if (a.empty() || 2 * a.size() > n) continue;
            bool all_odd = true;
            for (int v : a.members())
                if (v % 2 == 0) all_odd = false;
            if (!all_odd) continue;
            ++checked;
            auto r = lemma11_analyze(a);
            if (!r.bound_holds || (r.equality && !r.is_progression)) {
                detail = "failed at m=" + std::to_string(m) + " bits=" + std::to_string(bits);
                return false;
            }
        }
    }
    detail = std::to_string(checked) + " odd sets";
    return true;
}

bool criterion3_theorem3(std::string& detail) {
    int found = 0;
    for (const auto& inst : theorem3_instances()) {
        auto res = oracle::find_rainbow_hamiltonian(inst.family);
        if (!res.found() || !verify_rainbow(*res.witness, inst.family).ok) {
            detail = "missing witness at n=" + std::to_string(inst.n) +
                     " seed=" + std::to_string(inst.seed);
            return false;
        }
        ++found;
    }
    detail = std::to_string(found) + "/250 rainbow Hamiltonian cycles";
    return true;
}

bool criterion4_theorem4(std::string& detail) {
    int found = 0;
    std::uint64_t trial = 1000;
    for (int n : {4, 5, 6}) {
        for (int t = 0; t < 25; ++t, ++trial) {
            std::uint64_t seed = gen::derive_seed(kMasterSeed, trial);
            auto family = gen::random_valid_family({n, 2 * n, 0, seed});
            for (int len = 4; len <= 2 * n; len += 2) {
                auto res = oracle::find_rainbow_cycle(family, len);
                if (!res.found() || !verify_rainbow(*res.witness, family).ok) {
                    detail = "missing length " + std::to_string(len) + " at n=" +
                             std::to_string(n) + " seed=" + std::to_string(seed);
                    return false;
                }
                ++found;
            }
        }
    }
    detail = std::to_string(found) + " prescribed-length cycles";
    return true;
}

bool criterion5_theorem5(std::string& detail) {
    int found = 0;
    std::uint64_t trial = 2000;
    for (int n = 2; n <= 7; ++n) {
        for (int t = 0; t < 50; ++t, ++trial) {
            std::uint64_t seed = gen::derive_seed(kMasterSeed, trial);
            auto family = gen::random_valid_family({n, n, 0, seed});
            auto res = oracle::find_rainbow_perfect_matching(family);
            if (!res.found() || !verify_rainbow(*res.witness, family).ok) {
                detail = "missing matching at n=" + std::to_string(n) +
                         " seed=" + std::to_string(seed);
                return false;
            }
            ++found;
        }
    }
    detail = std::to_string(found) + "/300 rainbow perfect matchings";
    return true;
}

bool criterion6_sharpness(std::string& detail) {
    using oracle::SearchStatus;
    struct Expectation {
        std::string name;
        bool ok;
    };
    std::vector<Expectation> results;
    results.push_back({"two-blocks n=4 no ham",
                       oracle::find_rainbow_hamiltonian(two_blocks_family(4)).status ==
                           SearchStatus::None});
    results.push_back({"two-blocks n=6 no ham",
                       oracle::find_rainbow_hamiltonian(two_blocks_family(6)).status ==
                           SearchStatus::None});
    for (int n : {4, 5, 6}) {
        results.push_back({"pm-blocks n=" + std::to_string(n) + " no pm",
                           oracle::find_rainbow_perfect_matching(pm_blocks_family(n)).status ==
                               SearchStatus::None});
    }
    results.push_back({"hexagon no 4-cycle",
                       oracle::find_rainbow_cycle(hexagon_family(), 4).status ==
                           SearchStatus::None});
    results.push_back(
        {"hexagon has 6-cycle", oracle::find_rainbow_cycle(hexagon_family(), 6).found()});
    for (const auto& r : results) {
        if (!r.ok) {
            detail = r.name + " violated";
            return false;
        }
    }
    detail = std::to_string(results.size()) + " exhaustive outcomes exact";
    return true;
}

bool criterion7_agreement(std::string& detail) {
    struct Instance {
        BipartiteFamily family;
        solver::Target target;
    };
    std::vector<Instance> instances;
    std::uint64_t trial = 3000;
    for (int n = 2; n <= 5; ++n) {
        for (int t = 0; t < 15; ++t, ++trial) {
            std::uint64_t seed = gen::derive_seed(kMasterSeed, trial);
            instances.push_back(
                {gen::random_valid_family({n, 2 * n, 0, seed}), solver::Target::hamiltonian()});
            instances.push_back({gen::random_valid_family({n, n, 0, seed}),
                                 solver::Target::perfect_matching()});
        }
        if (n >= 3) {
            for (int t = 0; t < 15; ++t, ++trial) {
                std::uint64_t seed = gen::derive_seed(kMasterSeed, trial);
                instances.push_back({gen::random_near_miss_family({n, 2 * n, 0, seed}),
                                     solver::Target::hamiltonian()});
                instances.push_back({gen::random_near_miss_family({n, n, 0, seed}),
                                     solver::Target::perfect_matching()});
            }
        }
    }
    instances.push_back({two_blocks_family(4), solver::Target::hamiltonian()});
    instances.push_back({pm_blocks_family(4), solver::Target::perfect_matching()});
    instances.push_back({pm_blocks_family(5), solver::Target::perfect_matching()});
    instances.push_back({hexagon_family(), solver::Target::hamiltonian()});
    instances.push_back({hexagon_family(), solver::Target::cycle(4)});
    instances.push_back({complete_family(4, 8), solver::Target::cycle(6)});
    instances.push_back({complete_family(4, 4), solver::Target::perfect_matching()});
    instances.push_back({complete_family(5, 10), solver::Target::hamiltonian()});

    if (instances.size() < 200) {
        detail = "only " + std::to_string(instances.size()) + " instances";
        return false;
    }
    std::uint64_t solver_seed = 0;
    for (const auto& inst : instances) {
        auto solved = solver::solve(inst.family, inst.target, oracle::SearchBudget::unlimited(),
                                    true, solver_seed++);
        bool solver_found = solved.found();
        bool oracle_found = false;
        switch (inst.target.kind) {
            case solver::Target::Kind::Hamiltonian:
                oracle_found = oracle::find_rainbow_hamiltonian(inst.family).found();
                break;
            case solver::Target::Kind::Cycle:
                oracle_found =
                    oracle::find_rainbow_cycle(inst.family, inst.target.length).found();
                break;
            case solver::Target::Kind::PerfectMatching:
                oracle_found = oracle::find_rainbow_perfect_matching(inst.family).found();
                break;
        }
        if (solver_found != oracle_found) {
            detail = "verdict mismatch (solver " + std::string(solver_found ? "found" : "none") +
                     ", oracle " + (oracle_found ? "found" : "none") + ")";
            return false;
        }
        if (solver_found && !verify_rainbow(*solved.witness, inst.family).ok) {
            detail = "solver witness failed verification";
            return false;
        }
    }
    detail = std::to_string(instances.size()) + " instances agree";
    return true;
}

bool criterion8_fuzz(std::string& detail) {
    long long invocations = 0;
    long long witnesses = 0;
    std::uint64_t trial = 5000;

    auto check_witness = [&](const RainbowSubgraph& w, const BipartiteFamily& f) {
        ++witnesses;
        return verify_rainbow(w, f).ok;
    };

    for (int n : {3, 4, 5}) {
        for (int t = 0; t < 14; ++t, ++trial) {
            std::uint64_t seed = gen::derive_seed(kMasterSeed, trial);
            bool valid = t % 2 == 0;
            auto family = valid ? gen::random_valid_family({n, 2 * n, 0, seed})
                                : gen::random_near_miss_family({n, 2 * n, 0, seed});

            // rotate_path on any spanning path
            auto path = oracle::find_rainbow_hamiltonian_path(family);
            if (path.found()) {
                ++invocations;
                auto out = solver::rotate_path(*path.witness, family);
                if (out.kind == solver::MoveKind::Witness &&
                    !check_witness(*out.witness, family)) {
                    detail = "rotate_path emitted a bad witness";
                    return false;
                }
            }

            // close_hamiltonian on cycle + pendant states
            auto cycle = oracle::find_rainbow_cycle(family, 2 * n - 2);
            if (cycle.found()) {
                auto extended = solver::extend_cycle(*cycle.witness, family);
                if (extended.kind == solver::MoveKind::State) {
                    ++invocations;
                    auto closed = solver::close_hamiltonian(*extended.state, family);
                    if (closed.kind == solver::MoveKind::Witness &&
                        !check_witness(*closed.witness, family)) {
                        detail = "close_hamiltonian emitted a bad witness";
                        return false;
                    }
                }
                // bondy pairings over fuzzed (length, j)
                auto state = solver::relabel_to_canonical(*cycle.witness, family);
                for (int len = 4; len <= state.length(); len += 2) {
                    for (int j = 1; j <= state.length(); ++j) {
                        ++invocations;
                        for (const auto& w :
                             solver::bondy_pairing_moves(state, family, len, j)) {
                            if (!check_witness(w, family)) {
                                detail = "bondy_pairing_moves emitted a bad witness";
                                return false;
                            }
                        }
                    }
                }
            }

            // pm_swap on near-matchings (valid or not)
            auto pm_family = valid ? gen::random_valid_family({n, n, 0, seed})
                                   : gen::random_near_miss_family({n, n, 0, seed});
            auto pm = oracle::find_rainbow_perfect_matching(pm_family);
            if (pm.found() && pm.witness->edges.size() > 1) {
                for (std::size_t drop = 0; drop < pm.witness->edges.size(); ++drop) {
                    RainbowSubgraph near = *pm.witness;
                    near.edges.erase(near.edges.begin() + drop);
                    ++invocations;
                    auto out = solver::pm_swap(near, pm_family);
                    if (out.kind == solver::MoveKind::Witness &&
                        !check_witness(*out.witness, pm_family)) {
                        detail = "pm_swap emitted a bad witness";
                        return false;
                    }
                }
            }
        }
    }
    if (invocations < 1000) {
        detail = "only " + std::to_string(invocations) + " invocations";
        return false;
    }
    detail = std::to_string(invocations) + " move invocations, " + std::to_string(witnesses) +
             " witnesses verified";
    return true;
}

bool criterion9_digraph_bound(std::string& detail) {
    long long states = 0;
    std::uint64_t solver_seed = 1;
    for (const auto& inst : theorem3_instances()) {
        solver::SolveTrace trace;
        (void)solver::solve(inst.family, solver::Target::hamiltonian(),
                            oracle::SearchBudget::unlimited(), true, solver_seed++, &trace);
        auto thresholds = degree_thresholds(inst.n);
        for (const auto& state : trace.states) {
            ++states;
            auto digraph = solver::build_auxiliary_digraph(state, inst.family);
            for (int i = 2; i <= state.length(); i += 2) {
                if (digraph.out_degree(state.vertex(i)) < thresholds.red_min - 1) {
                    detail = "out-degree bound violated at n=" + std::to_string(inst.n) +
                             " seed=" + std::to_string(inst.seed);
                    return false;
                }
            }
        }
    }
    detail = std::to_string(states) + " pipeline states satisfy the out-degree bound";
    return true;
}

bool criterion10_determinism(std::string& detail) {
    auto strip_time = [](const std::string& text) {
        std::istringstream in(text);
        std::string line, out;
        while (std::getline(in, line))
            if (line.rfind("time-", 0) != 0) out += line + "\n";
        return out;
    };

    const std::string family_path = "acceptance_det.rbf";
    const std::string report_a = "acceptance_det_a.txt", report_b = "acceptance_det_b.txt";
    auto cleanup = [&] {
        std::remove(family_path.c_str());
        std::remove(report_a.c_str());
        std::remove(report_b.c_str());
    };

    std::vector<std::vector<std::string>> commands = {
        {"solve", family_path, "--target", "ham", "--seed", "4", "--report", report_a},
        {"oracle", family_path, "--target", "cycle:6", "--report", report_a},
        {"verify-theorem", "--theorem", "5", "--n-min", "2", "--n-max", "4", "--trials", "5",
         "--seed", "11", "--report", report_a},
    };
    auto gen_res = cli::run({"gen", "--n", "4", "--graphs", "8", "--seed", "9", "--out",
                             family_path});
    if (gen_res.exit_code != 0) {
        detail = "gen failed";
        cleanup();
        return false;
    }
    for (auto command : commands) {
        auto first = cli::run(command);
        std::ifstream a(report_a, std::ios::binary);
        std::ostringstream buf_a;
        buf_a << a.rdbuf();
        command[command.size() - 1] = report_b;
        auto second = cli::run(command);
        std::ifstream b(report_b, std::ios::binary);
        std::ostringstream buf_b;
        buf_b << b.rdbuf();
        if (first.exit_code != second.exit_code ||
            strip_time(buf_a.str()) != strip_time(buf_b.str())) {
            detail = "report mismatch for subcommand " + command.front();
            cleanup();
            return false;
        }
    }

    // format round trip on 100 random families
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        int n = 2 + static_cast<int>(seed % 5);
        auto family = gen::random_valid_family({n, (seed % 2 == 0) ? 2 * n : n,
                                                static_cast<int>(seed % 3), seed});
        if (io::parse_family(io::write_family(family)) != family) {
            detail = "round trip failed at seed " + std::to_string(seed);
            cleanup();
            return false;
        }
    }
    cleanup();
    detail = "3 command reports byte-stable; 100 round trips exact";
    return true;
}

bool criterion11_stall_rate(std::string& detail) {
    int stalls = 0, total = 0;
    std::uint64_t solver_seed = 77;
    for (const auto& inst : theorem3_instances()) {
        ++total;
        auto res = solver::solve(inst.family, solver::Target::hamiltonian(),
                                 oracle::SearchBudget::unlimited(), false, solver_seed++);
        if (res.found()) {
            if (!verify_rainbow(*res.witness, inst.family).ok) {
                detail = "move witness failed verification";
                return false;
            }
            continue;
        }
        // stall must be detected as such, carry no witness, and complete
        // under fallback
        ++stalls;
        if (res.status != solver::SolveStatus::Stalled || res.witness.has_value() ||
            res.stats.stall_kind.empty()) {
            detail = "stall not reported correctly";
            return false;
        }
        auto completed = solver::solve(inst.family, solver::Target::hamiltonian(),
                                       oracle::SearchBudget::unlimited(), true, solver_seed);
        if (!completed.found() || !completed.used_fallback) {
            detail = "stalled instance not completed by fallback";
            return false;
        }
    }
    std::ostringstream rate;
    rate.setf(std::ios::fixed);
    rate.precision(1);
    rate << (100.0 * stalls / total);
    detail = "stall rate " + rate.str() + "% (" + std::to_string(stalls) + "/" +
             std::to_string(total) + "), all stalls detected and completed";
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"C1 lemma-10 exhaustive sweep", criterion1_lemma10, 30.0},
        {"C2 lemma-11 exhaustive sweep", criterion2_lemma11, 30.0},
        {"C3 hamiltonian harness n=2..6 x50", criterion3_theorem3, 600.0},
        {"C4 bipancyclicity harness n=4..6 x25", criterion4_theorem4, 900.0},
        {"C5 perfect-matching harness n=2..7 x50", criterion5_theorem5, 300.0},
        {"C6 sharpness constructions exhaustive", criterion6_sharpness, 600.0},
        {"C7 solver/oracle agreement >=200 instances", criterion7_agreement, 600.0},
        {"C8 move soundness fuzz >=1000 invocations", criterion8_fuzz, 600.0},
        {"C9 auxiliary digraph out-degree bound", criterion9_digraph_bound, 600.0},
        {"C10 determinism and format round trip", criterion10_determinism, 300.0},
        {"C11 stall-rate measurement", criterion11_stall_rate, 600.0},
    };

    int failures = 0;
    for (auto& criterion : criteria) {
        auto start = Clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (seconds > criterion.limit_seconds) {
            ok = false;
            detail += " [over time budget]";
        }
        std::printf("[%s] %s (%.2fs) %s\n", ok ? "PASS" : "FAIL", criterion.name.c_str(), seconds,
                    detail.c_str());
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
