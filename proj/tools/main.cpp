// entsim: photonic-entanglement protocol simulator CLI.
//
// Subcommands drive the library modules: one-way pattern runs and all-branch
// verification, communication-complexity scans and Monte Carlo simulation,
// entanglement swapping / GHZ merging, and the feed-forward timing budget.
// All randomness is seeded (--seed, default 0); identical command lines
// produce byte-identical machine-readable output.

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "entsim/cluster.hpp"
#include "entsim/commcomplex.hpp"
#include "entsim/mbqc.hpp"
#include "entsim/network.hpp"
#include "entsim/statevec.hpp"

namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kFidelityFloor = 1.0 - 1e-9;

std::string fmt(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string correction_name(const entsim::ByproductRecord& record) {
    if (record.a && record.b) return "XZ";
    if (record.a) return "X";
    if (record.b) return "Z";
    return "I";
}

std::string frame_name(const entsim::PauliFrame& frame) {
    if (frame.x && frame.z) return "XZ";
    if (frame.x) return "X";
    if (frame.z) return "Z";
    return "I";
}

// Inclusive lo:hi:step grid; a bare value is a single grid point.
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ':')) parts.push_back(std::stod(token));
    if (parts.size() == 1) return {parts[0]};
    if (parts.size() != 3) throw std::invalid_argument("grid must be lo:hi:step, got '" + spec + "'");
    const double lo = parts[0], hi = parts[1], step = parts[2];
    if (hi < lo) throw std::invalid_argument("grid upper bound below lower bound");
    if (step <= 0.0) {
        if (hi != lo) throw std::invalid_argument("grid step must be positive");
        return {lo};
    }
    const long long count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
    std::vector<double> values;
    for (long long i = 0; i <= count; ++i) values.push_back(lo + static_cast<double>(i) * step);
    return values;
}

std::vector<int> parse_int_list(const std::string& spec) {
    std::vector<int> values;
    if (spec.empty()) return values;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) values.push_back(std::stoi(token));
    return values;
}

std::vector<entsim::OutcomeMode> forced_modes(const std::string& bits) {
    std::vector<entsim::OutcomeMode> modes;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("--forced must be a bitstring of 0s and 1s");
        }
        modes.push_back(entsim::OutcomeMode::forced(c - '0'));
    }
    return modes;
}

int cmd_mbqc_run(const std::string& pattern_path, const std::string& forced,
                 std::uint64_t seed) {
    const entsim::Pattern pattern = entsim::load_pattern(pattern_path);
    const std::size_t k = pattern.angles.size();

    entsim::Rng rng(seed);
    std::vector<entsim::OutcomeMode> modes;
    if (!forced.empty()) {
        if (forced.size() != k) {
            throw std::invalid_argument("--forced length " + std::to_string(forced.size()) +
                                        " does not match pattern length " + std::to_string(k));
        }
        modes = forced_modes(forced);
    } else {
        modes.assign(k, entsim::OutcomeMode::sample(rng));
    }

    const entsim::RunResult run = entsim::run_pattern(pattern, modes);
    const double fidelity =
        entsim::fidelity_up_to_phase(run.corrected_output, entsim::circuit_oracle(pattern));

    std::string nominal, adapted, outcomes;
    for (std::size_t j = 0; j < k; ++j) {
        if (j) {
            nominal += ',';
            adapted += ',';
        }
        nominal += fmt(pattern.angles[j], 9);
        adapted += fmt(run.adapted_angles[j], 9);
        outcomes += static_cast<char>('0' + run.outcomes[j]);
    }
    double branch_probability = 1.0;
    for (double p : run.branch_probabilities) branch_probability *= p;

    std::cout << "pattern: " << k << " measurement(s), cluster length " << (k + 1) << "\n";
    for (std::size_t j = 0; j < k; ++j) {
        std::cout << "step " << (j + 1) << ": basis B(" << fmt(run.adapted_angles[j], 9)
                  << ")  outcome s=" << run.outcomes[j] << "  p="
                  << fmt(run.branch_probabilities[j], 9) << "\n";
    }
    std::cout << "byproduct record: a=" << run.byproduct.a << " b=" << run.byproduct.b << "\n";
    std::cout << "correction applied: " << correction_name(run.byproduct) << "\n";
    std::cout << "fidelity vs circuit model: " << fmt(fidelity, 9) << "\n";
    std::cout << "--- machine ---\n";
    std::cout << "k=" << k << "\n";
    std::cout << "nominal=" << nominal << "\n";
    std::cout << "adapted=" << adapted << "\n";
    std::cout << "outcomes=" << outcomes << "\n";
    std::cout << "a=" << run.byproduct.a << "\n";
    std::cout << "b=" << run.byproduct.b << "\n";
    std::cout << "correction=" << correction_name(run.byproduct) << "\n";
    std::cout << "fidelity=" << fmt(fidelity, 9) << "\n";
    std::cout << "branch_probability=" << fmt(branch_probability, 9) << "\n";

    return fidelity >= kFidelityFloor ? 0 : 1;
}

int cmd_mbqc_verify(int max_len, int grid_density, int tuples, std::uint64_t seed,
                    double fidelity_floor) {
    if (max_len < 1 || max_len > 10) {
        throw std::invalid_argument("--max-len must lie in [1, 10]");
    }
    entsim::Rng rng(seed);
    bool all_pass = true;
    for (int k = 1; k <= max_len; ++k) {
        // Short chains get a full angle grid, longer ones random tuples.
        std::vector<std::vector<double>> angle_sets;
        if (k <= 2) {
            const int d = grid_density;
            std::vector<double> tuple(k, 0.0);
            const long long total = static_cast<long long>(std::pow(d, k));
            for (long long idx = 0; idx < total; ++idx) {
                long long rest = idx;
                for (int j = 0; j < k; ++j) {
                    tuple[j] = kTwoPi * static_cast<double>(rest % d) / d;
                    rest /= d;
                }
                angle_sets.push_back(tuple);
            }
        } else {
            for (int t = 0; t < tuples; ++t) {
                std::vector<double> tuple(k);
                for (double& a : tuple) a = kTwoPi * rng.next_unit();
                angle_sets.push_back(tuple);
            }
        }

        double min_fidelity = 1.0;
        double max_prob_error = 0.0;
        for (const auto& angles : angle_sets) {
            const entsim::VerifyReport report = entsim::verify_pattern(entsim::Pattern{angles});
            min_fidelity = std::min(min_fidelity, report.min_fidelity);
            max_prob_error = std::max(max_prob_error, report.max_probability_error);
        }
        const bool pass = min_fidelity >= fidelity_floor && max_prob_error <= 1e-9;
        all_pass = all_pass && pass;
        std::cout << "k=" << k << " tuples=" << angle_sets.size() << " branches="
                  << (1 << k) << " min_fidelity=" << fmt(min_fidelity, 12)
                  << " max_prob_error=" << fmt(max_prob_error, 12) << " "
                  << (pass ? "PASS" : "FAIL") << "\n";
    }
    std::cout << "total: " << (all_pass ? "PASS" : "FAIL") << "\n";
    return all_pass ? 0 : 1;
}

int cmd_cc_scan(const std::string& n_spec, const std::string& v_spec, const std::string& eta_spec,
                const std::string& out_path) {
    const std::vector<int> ns = parse_int_list(n_spec);
    const std::vector<double> vs = parse_grid(v_spec);
    const std::vector<double> etas = parse_grid(eta_spec);
    const auto samples = entsim::scan_region(ns, vs, etas);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot open output file: " + out_path);
        out = &file;
    }

    *out << "n,V,eta,p_quantum,p_classical,advantage\n";
    for (const auto& cell : samples) {
        *out << cell.n << ',' << fmt(cell.visibility, 6) << ',' << fmt(cell.efficiency, 6) << ','
             << fmt(cell.p_quantum, 6) << ',' << fmt(cell.p_classical, 6) << ','
             << (cell.advantage ? "true" : "false") << "\n";
    }
    out->flush();
    if (!*out) throw std::runtime_error("write failed");
    return 0;
}

int cmd_cc_simulate(int n, double v, double eta, long long trials, std::uint64_t seed) {
    if (n % 2 == 0) {
        std::cerr << "error: n must be odd for simulation\n";
        return 2;
    }
    const entsim::NoiseParams noise{v, eta};
    const entsim::MonteCarloResult mc = entsim::monte_carlo(n, noise, trials, seed);
    const double analytic = entsim::analytic_success(n, noise);
    const double diff = std::abs(mc.estimate - analytic);
    const bool pass = diff <= 3.0 * mc.std_error;

    std::cout << "n=" << n << " V=" << fmt(v, 6) << " eta=" << fmt(eta, 6) << " trials=" << trials
              << " seed=" << seed << "\n";
    std::cout << "estimate=" << fmt(mc.estimate, 6) << " std_error=" << fmt(mc.std_error, 6)
              << "\n";
    std::cout << "analytic=" << fmt(analytic, 6) << "\n";
    std::cout << "abs_difference=" << fmt(diff, 6) << "\n";
    std::cout << "verdict: " << (pass ? "PASS" : "FAIL") << " (3 standard errors)\n";
    return pass ? 0 : 1;
}

int cmd_cc_min_partners(double v, double eta, bool odd_only) {
    const std::optional<int> n = entsim::min_partners(entsim::NoiseParams{v, eta}, odd_only);
    std::cout << "V=" << fmt(v, 6) << " eta=" << fmt(eta, 6) << " odd_only="
              << (odd_only ? "true" : "false") << "\n";
    std::cout << "min_partners=" << (n ? std::to_string(*n) : "none") << "\n";
    return 0;
}

int cmd_swap(int forced, std::uint64_t seed) {
    entsim::Rng rng(seed);
    const entsim::OutcomeMode mode =
        forced >= 0 ? entsim::OutcomeMode::forced(forced) : entsim::OutcomeMode::sample(rng);
    const entsim::SwapResult result = entsim::entanglement_swap(mode);
    const double fidelity = entsim::fidelity_up_to_phase(result.pair, entsim::bell_pair());

    std::cout << "node outcome k=" << result.outcome.k << " ("
              << entsim::kBellLabels[result.outcome.k] << ") probability="
              << fmt(result.outcome.probability, 6) << "\n";
    std::cout << "user correction: " << frame_name(entsim::swap_correction(result.outcome.k))
              << "\n";
    std::cout << "fidelity with phi+: " << fmt(fidelity, 6) << "\n";
    return fidelity >= kFidelityFloor ? 0 : 1;
}

int cmd_ghz_merge(int n, int m, int forced, std::uint64_t seed) {
    entsim::Rng rng(seed);
    const entsim::OutcomeMode mode =
        forced >= 0 ? entsim::OutcomeMode::forced(forced) : entsim::OutcomeMode::sample(rng);
    const entsim::MergeResult result = entsim::ghz_merge(n, m, mode);
    const double fidelity =
        entsim::fidelity_up_to_phase(result.merged, entsim::ghz_state(n + m - 2));

    std::cout << "node outcome k=" << result.outcome.k << " ("
              << entsim::kBellLabels[result.outcome.k] << ") probability="
              << fmt(result.outcome.probability, 6) << "\n";
    std::cout << "merged parties: " << (n + m - 2) << "\n";
    std::cout << "fidelity with ghz(" << (n + m - 2) << "): " << fmt(fidelity, 6) << "\n";
    return fidelity >= kFidelityFloor ? 0 : 1;
}

int cmd_timing(double detector_ns, double logic_ns, double eom_ns, double index) {
    const entsim::FeedForwardBudget budget = entsim::feed_forward_budget(
        entsim::LatencyBudget{detector_ns, logic_ns, eom_ns, index});
    std::cout << "cycle " << fmt(budget.cycle_ns, 1) << " ns, fiber "
              << fmt(budget.fiber_delay_m, 1) << " m\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"photonic entanglement protocol simulator"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;

    auto* run = app.add_subcommand("mbqc-run", "run a measurement pattern on a linear cluster");
    std::string pattern_path, forced_bits;
    run->add_option("--pattern", pattern_path, "pattern file, one angle (radians) per line")
        ->required();
    run->add_option("--forced", forced_bits, "forced outcome bitstring, one bit per measurement");
    run->add_option("--seed", seed, "RNG seed for sampled outcomes (default 0)");

    auto* verify = app.add_subcommand("mbqc-verify",
                                      "all-branch feed-forward equivalence suite");
    int max_len = 5, grid_density = 8, tuples = 5;
    double fidelity_floor = kFidelityFloor;
    verify->add_option("--max-len", max_len, "largest chain length to verify (<= 10)");
    verify->add_option("--grid-density", grid_density, "angle grid density for chains of 1-2");
    verify->add_option("--tuples", tuples, "random angle tuples per longer chain");
    verify->add_option("--seed", seed, "RNG seed for random angle tuples");
    verify->add_option("--fidelity-floor", fidelity_floor)->group(""); // test hook

    auto* scan = app.add_subcommand("cc-scan", "advantage-region scan, CSV output");
    std::string n_spec, v_spec = "1.0", eta_spec = "1.0", out_path;
    scan->add_option("--n", n_spec, "party counts, comma separated (empty: header only)");
    scan->add_option("--v-grid", v_spec, "visibility grid lo:hi:step or single value");
    scan->add_option("--eta-grid", eta_spec, "efficiency grid lo:hi:step or single value");
    scan->add_option("--out", out_path, "output path (default: stdout)");

    auto* simulate = app.add_subcommand("cc-simulate",
                                        "Monte Carlo protocol run vs analytic success rate");
    int sim_n = 3;
    double sim_v = 1.0, sim_eta = 1.0;
    long long trials = 100000;
    simulate->add_option("--n", sim_n, "odd party count")->required();
    simulate->add_option("--v", sim_v, "visibility in [0,1]")->required();
    simulate->add_option("--eta", sim_eta, "detector efficiency in [0,1]")->required();
    simulate->add_option("--trials", trials, "number of trials (default 100000)");
    simulate->add_option("--seed", seed, "RNG seed (default 0)");

    auto* min_partners = app.add_subcommand("cc-min-partners",
                                            "smallest party count with a quantum advantage");
    double mp_v = 0.9, mp_eta = 0.8;
    bool odd_only = false;
    min_partners->add_option("--v", mp_v, "visibility in [0,1]")->required();
    min_partners->add_option("--eta", mp_eta, "detector efficiency in [0,1]")->required();
    min_partners->add_flag("--odd-only", odd_only, "restrict the search to odd party counts");

    auto* swap = app.add_subcommand("swap", "entanglement swap across a central node");
    int forced_k = -1;
    swap->add_option("--forced", forced_k, "force the node outcome k in 0..3");
    swap->add_option("--seed", seed, "RNG seed for a sampled node outcome");

    auto* merge = app.add_subcommand("ghz-merge", "merge two GHZ resources at a node");
    int merge_n = 3, merge_m = 3;
    merge->add_option("--n", merge_n, "parties of the first resource (>= 2)")->required();
    merge->add_option("--m", merge_m, "parties of the second resource (>= 2)")->required();
    merge->add_option("--forced", forced_k, "force the node outcome k in 0..3");
    merge->add_option("--seed", seed, "RNG seed for a sampled node outcome");

    auto* timing = app.add_subcommand("timing", "feed-forward cycle and fiber delay budget");
    double detector_ns = 30.0, logic_ns = 10.0, eom_ns = 110.0, index = 1.4990;
    timing->add_option("--detector-ns", detector_ns, "detector response (default 30)");
    timing->add_option("--logic-ns", logic_ns, "logic processing (default 10)");
    timing->add_option("--eom-ns", eom_ns, "modulator switching (default 110)");
    timing->add_option("--index", index, "fiber refractive index (default 1.4990)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run) return cmd_mbqc_run(pattern_path, forced_bits, seed);
        if (*verify) return cmd_mbqc_verify(max_len, grid_density, tuples, seed, fidelity_floor);
        if (*scan) return cmd_cc_scan(n_spec, v_spec, eta_spec, out_path);
        if (*simulate) return cmd_cc_simulate(sim_n, sim_v, sim_eta, trials, seed);
        if (*min_partners) return cmd_cc_min_partners(mp_v, mp_eta, odd_only);
        if (*swap) return cmd_swap(forced_k, seed);
        if (*merge) return cmd_ghz_merge(merge_n, merge_m, forced_k, seed);
        if (*timing) return cmd_timing(detector_ns, logic_ns, eom_ns, index);
    } catch (const entsim::PatternParseError& e) {
        std::cerr << "error: " << pattern_path << ": " << e.what() << "\n";
        return 2;
    } catch (const entsim::ImpossibleOutcomeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
