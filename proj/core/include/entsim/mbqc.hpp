#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "entsim/statevec.hpp"

namespace entsim {

// A one-way program on a linear cluster: k nominal measurement angles, chain
// length k+1, output on the last qubit. Inputs are always |+>.
struct Pattern {
    std::vector<double> angles; // radians, finite, k >= 1
};

struct PatternParseError : std::runtime_error {
    PatternParseError(int line_number, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
          line(line_number) {}
    int line;
};

// Line-oriented pattern text: one angle per line as a decimal literal in
// radians; lines beginning with '#' are comments; blank lines are ignored.
Pattern parse_pattern(std::istream& in);
Pattern load_pattern(const std::string& path);

// Running Pauli frame: accumulated sigma_x exponent a and sigma_z exponent b.
struct ByproductRecord {
    int a = 0;
    int b = 0;
};

// Basis adaptation: measure at (-1)^a * nominal instead of the nominal angle.
double adapt_angle(ByproductRecord record, double nominal);

// Frame propagation through one H R_z measurement step with outcome s:
// (a', b') = (s xor b, a). Starting from (0,0) a two-step chain ends at
// (s2, s1), i.e. the correction sigma_x^{s2} sigma_z^{s1}.
ByproductRecord update_byproduct(ByproductRecord record, int s);

struct RunResult {
    std::vector<int> outcomes;                // s_j per measurement
    std::vector<double> branch_probabilities; // Born probability per step
    std::vector<double> adapted_angles;       // angle actually measured per step
    ByproductRecord byproduct;                // final frame (a, b)
    PureState raw_output;                     // last qubit, before correction
    PureState corrected_output;               // sigma_x^a sigma_z^b applied
};

// Builds linear_cluster(k+1) and measures qubits front to back, adapting each
// basis with the running byproduct record and finishing with the Pauli
// correction. corrected_output equals circuit_oracle(p) on every branch.
RunResult run_pattern(const Pattern& p, std::span<const OutcomeMode> modes);

// Same chain measured at the nominal angles with no basis adaptation. The
// frame tracking and final Pauli are unchanged, so the corrected output keeps
// the outcome-dependent angle twist: for a two-step pattern it is
// R_x((-1)^{s1} beta) R_z(alpha) |+>.
RunResult run_pattern_fixed_basis(const Pattern& p, std::span<const OutcomeMode> modes);

// Circuit-model reference: (H R_z(a_k)) ... (H R_z(a_1)) |+> on one qubit.
PureState circuit_oracle(const Pattern& p);

struct BranchReport {
    std::vector<int> outcomes;
    double fidelity;    // corrected_output vs circuit_oracle
    double probability; // product of per-step branch probabilities
};

struct VerifyReport {
    std::vector<BranchReport> branches; // all 2^k forced outcome vectors
    double min_fidelity = 1.0;
    double max_probability_error = 0.0; // worst |probability - 2^-k|
    bool passed(double fidelity_floor = 1.0 - kFidelityTolerance,
                double probability_tol = kFidelityTolerance) const;
};

// All-branch equivalence suite for a pattern (k <= 10): every forced outcome
// vector must reproduce the circuit model with fidelity 1 and land on an
// unbiased 2^-k branch.
VerifyReport verify_pattern(const Pattern& p);

// Scalar latencies of one feed-forward cycle, nanoseconds.
struct LatencyBudget {
    double detector_ns = 30.0;
    double logic_ns = 10.0;
    double modulator_ns = 110.0;
    double fiber_refractive_index = 1.4990; // group velocity 2.0e8 m/s
};

struct FeedForwardBudget {
    double cycle_ns;     // detector + logic + modulator
    double fiber_delay_m; // single-mode fiber length storing a photon that long
};

FeedForwardBudget feed_forward_budget(const LatencyBudget& b);

} // namespace entsim
