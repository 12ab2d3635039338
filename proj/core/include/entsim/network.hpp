#pragma once

#include <array>

#include "entsim/statevec.hpp"

namespace entsim {

// Bell basis order used everywhere: 0 Phi+, 1 Phi-, 2 Psi+, 3 Psi-.
inline constexpr std::array<const char*, 4> kBellLabels = {"phi+", "phi-", "psi+", "psi-"};

struct BellOutcome {
    int k = 0;                // index into kBellLabels
    double probability = 0.0; // Born probability of the realized branch
};

// (|00> + |11>)/sqrt(2), i.e. Phi+.
PureState bell_pair();

// (|0...0> + |1...1>)/sqrt(2) on n parties, 2 <= n <= 24.
PureState ghz_state(int n);

struct BellMeasurement {
    BellOutcome outcome;
    PureState posterior;                  // both measured qubits removed
    std::array<double, 4> probabilities;  // full node distribution; sums to 1
};

// Projects qubits (q1, q2) onto the Bell basis (q1 is the first tensor slot)
// and removes them. Forced mode selects the branch index k.
BellMeasurement bell_measure(const PureState& state, int q1, int q2, OutcomeMode mode);

// Local Pauli frame on one qubit; apply() performs Z first, then X.
struct PauliFrame {
    bool x = false;
    bool z = false;
    void apply(PureState& state, int q) const;
};

// Correction the distant user applies after the node announces outcome k:
// I, Z, X, XZ for k = 0..3. Fixed by requiring entanglement_swap to end in
// Phi+ on every branch.
PauliFrame swap_correction(int k);

struct SwapResult {
    BellOutcome outcome;
    PureState pair; // fidelity 1 with Phi+ on every branch
};

// Phi+ ⊗ Phi+ on qubits (0,1),(2,3); Bell-measures the inner pair (1,2);
// applies swap_correction to the surviving qubit of the second pair. Each
// branch occurs with probability 1/4.
SwapResult entanglement_swap(OutcomeMode mode);

struct MergeResult {
    BellOutcome outcome;
    PureState merged; // fidelity 1 with ghz_state(n + m - 2) on every branch
};

// GHZ(n) ⊗ GHZ(m); Bell-measures the last qubit of the first resource against
// the first qubit of the second. Correction per branch: X on every surviving
// qubit of the second resource for Psi outcomes, plus Z on one survivor for
// the odd-phase outcomes (reduces to swap_correction at n = m = 2).
// Requires n, m >= 2 and n + m <= 14.
MergeResult ghz_merge(int n, int m, OutcomeMode mode);

} // namespace entsim
