#include "entsim/mbqc.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "entsim/cluster.hpp"

namespace entsim {

namespace {

constexpr double kSpeedOfLight = 299792458.0; // m/s

void validate_pattern(const Pattern& p) {
    if (p.angles.empty()) throw std::invalid_argument("pattern needs at least one angle");
    for (double a : p.angles) {
        if (!std::isfinite(a)) throw std::invalid_argument("pattern angle is not finite");
    }
}

RunResult run_chain(const Pattern& p, std::span<const OutcomeMode> modes, bool adapt) {
    validate_pattern(p);
    const std::size_t k = p.angles.size();
    if (modes.size() != k) {
        throw std::invalid_argument("need one outcome mode per measurement (" +
                                    std::to_string(k) + ")");
    }

    RunResult result;
    result.outcomes.reserve(k);
    result.branch_probabilities.reserve(k);
    result.adapted_angles.reserve(k);

    PureState state = linear_cluster(static_cast<int>(k) + 1);
    ByproductRecord record;
    for (std::size_t j = 0; j < k; ++j) {
        const double used = adapt ? adapt_angle(record, p.angles[j]) : p.angles[j];
        // The next unmeasured chain qubit is always index 0 after removals.
        MeasurementOutcome out = measure_b_alpha(state, 0, used, modes[j]);
        state = std::move(out.posterior);
        record = update_byproduct(record, out.s);
        result.outcomes.push_back(out.s);
        result.branch_probabilities.push_back(out.probability);
        result.adapted_angles.push_back(used);
    }

    result.byproduct = record;
    result.raw_output = state;
    if (record.b) state.apply_pauli(0, Pauli::Z);
    if (record.a) state.apply_pauli(0, Pauli::X);
    result.corrected_output = std::move(state);
    return result;
}

} // namespace

Pattern parse_pattern(std::istream& in) {
    Pattern p;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(start, end - start + 1);

        char* tail = nullptr;
        const double angle = std::strtod(token.c_str(), &tail);
        if (tail == token.c_str() || *tail != '\0') {
            throw PatternParseError(line_number, "not a decimal angle: '" + token + "'");
        }
        if (!std::isfinite(angle)) {
            throw PatternParseError(line_number, "angle is not finite");
        }
        p.angles.push_back(angle);
    }
    if (p.angles.empty()) throw PatternParseError(line_number, "pattern has no angles");
    return p;
}

Pattern load_pattern(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pattern file: " + path);
    return parse_pattern(in);
}

double adapt_angle(ByproductRecord record, double nominal) {
    return record.a ? -nominal : nominal;
}

ByproductRecord update_byproduct(ByproductRecord record, int s) {
    return ByproductRecord{(s ^ record.b) & 1, record.a};
}

RunResult run_pattern(const Pattern& p, std::span<const OutcomeMode> modes) {
    return run_chain(p, modes, true);
}

RunResult run_pattern_fixed_basis(const Pattern& p, std::span<const OutcomeMode> modes) {
    return run_chain(p, modes, false);
}

PureState circuit_oracle(const Pattern& p) {
    validate_pattern(p);
    PureState state = plus_state(1);
    for (double angle : p.angles) {
        state.apply_rz(0, angle);
        state.apply_h(0);
    }
    return state;
}

bool VerifyReport::passed(double fidelity_floor, double probability_tol) const {
    return min_fidelity >= fidelity_floor && max_probability_error <= probability_tol;
}

VerifyReport verify_pattern(const Pattern& p) {
    validate_pattern(p);
    const int k = static_cast<int>(p.angles.size());
    if (k > 10) throw std::invalid_argument("verify_pattern caps the chain at 10 measurements");

    const PureState reference = circuit_oracle(p);
    const double uniform = std::ldexp(1.0, -k); // 2^-k

    VerifyReport report;
    report.branches.reserve(std::size_t{1} << k);
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << k); ++bits) {
        std::vector<OutcomeMode> modes;
        BranchReport branch;
        for (int j = 0; j < k; ++j) {
            branch.outcomes.push_back((bits >> j) & 1);
            modes.push_back(OutcomeMode::forced((bits >> j) & 1));
        }
        const RunResult run = run_pattern(p, modes);
        branch.fidelity = fidelity_up_to_phase(run.corrected_output, reference);
        branch.probability = 1.0;
        for (double prob : run.branch_probabilities) branch.probability *= prob;

        report.min_fidelity = std::min(report.min_fidelity, branch.fidelity);
        report.max_probability_error =
            std::max(report.max_probability_error, std::abs(branch.probability - uniform));
        report.branches.push_back(std::move(branch));
    }
    return report;
}

FeedForwardBudget feed_forward_budget(const LatencyBudget& b) {
    const bool finite = std::isfinite(b.detector_ns) && std::isfinite(b.logic_ns) &&
                        std::isfinite(b.modulator_ns) && std::isfinite(b.fiber_refractive_index);
    if (!finite || b.detector_ns < 0 || b.logic_ns < 0 || b.modulator_ns < 0) {
        throw std::invalid_argument("latencies must be finite and non-negative");
    }
    if (b.fiber_refractive_index < 1.0 || b.fiber_refractive_index > 3.0) {
        throw std::invalid_argument("fiber refractive index must lie in [1, 3]");
    }
    const double cycle_ns = b.detector_ns + b.logic_ns + b.modulator_ns;
    const double fiber_m = cycle_ns * 1e-9 * (kSpeedOfLight / b.fiber_refractive_index);
    return FeedForwardBudget{cycle_ns, fiber_m};
}

} // namespace entsim
