#include "entsim/network.hpp"

#include <cmath>
#include <string>

namespace entsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Bell kets indexed [k][(b1 << 1) | b2] with b1 on the first measured qubit.
constexpr double kBellKets[4][4] = {
    {kInvSqrt2, 0.0, 0.0, kInvSqrt2},  // phi+
    {kInvSqrt2, 0.0, 0.0, -kInvSqrt2}, // phi-
    {0.0, kInvSqrt2, kInvSqrt2, 0.0},  // psi+
    {0.0, kInvSqrt2, -kInvSqrt2, 0.0}, // psi-
};

std::size_t insert_zero_bit(std::size_t x, int pos) {
    const std::size_t low = x & ((std::size_t{1} << pos) - 1);
    return ((x >> pos) << (pos + 1)) | low;
}

} // namespace

PureState bell_pair() {
    return PureState::from_amplitudes(2, {kInvSqrt2, 0.0, 0.0, kInvSqrt2});
}

PureState ghz_state(int n) {
    if (n < 2 || n > kMaxQubits) {
        throw CapacityError("ghz_state: party count " + std::to_string(n) + " outside [2, " +
                            std::to_string(kMaxQubits) + "]");
    }
    std::vector<cdouble> amps(std::size_t{1} << n, 0.0);
    amps.front() = kInvSqrt2;
    amps.back() = kInvSqrt2;
    return PureState::from_amplitudes(n, std::move(amps));
}

BellMeasurement bell_measure(const PureState& state, int q1, int q2, OutcomeMode mode) {
    const int n = state.qubit_count();
    if (q1 < 0 || q2 < 0 || q1 >= n || q2 >= n) {
        throw QubitIndexError("bell_measure: qubit index out of range");
    }
    if (q1 == q2) throw QubitIndexError("bell_measure: need two distinct qubits");

    const int lo = std::min(q1, q2);
    const int hi = std::max(q1, q2);
    const std::size_t half_dim = state.dim() >> 2;
    const auto amps = state.amplitudes();

    // v_k(j) = <B_k| psi(j)> over the four source amplitudes of each reduced
    // index j; probabilities in a first pass, branch amplitudes in a second.
    auto contracted = [&](std::size_t j, int k) {
        const std::size_t base = insert_zero_bit(insert_zero_bit(j, lo), hi);
        cdouble v = 0.0;
        for (int b1 = 0; b1 < 2; ++b1) {
            for (int b2 = 0; b2 < 2; ++b2) {
                const double coef = kBellKets[k][(b1 << 1) | b2];
                if (coef == 0.0) continue;
                const std::size_t idx = base | (static_cast<std::size_t>(b1) << q1) |
                                        (static_cast<std::size_t>(b2) << q2);
                v += coef * amps[idx];
            }
        }
        return v;
    };

    std::array<double, 4> probs{0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < half_dim; ++j) {
        for (int k = 0; k < 4; ++k) probs[k] += std::norm(contracted(j, k));
    }

    int k;
    if (mode.is_forced()) {
        k = mode.forced_outcome();
        if (k < 0 || k > 3) throw std::invalid_argument("forced Bell outcome must be 0..3");
        if (probs[k] < kImpossibleOutcomeTolerance) {
            throw ImpossibleOutcomeError(std::string("forced Bell outcome ") + kBellLabels[k] +
                                         " has vanishing probability");
        }
    } else {
        const double u = mode.rng().next_unit();
        double cumulative = 0.0;
        k = 3;
        for (int cand = 0; cand < 4; ++cand) {
            cumulative += probs[cand];
            if (u < cumulative) {
                k = cand;
                break;
            }
        }
    }

    const double scale = 1.0 / std::sqrt(probs[k]);
    std::vector<cdouble> post(half_dim);
    for (std::size_t j = 0; j < half_dim; ++j) post[j] = scale * contracted(j, k);

    BellMeasurement result;
    result.outcome = BellOutcome{k, probs[k]};
    result.posterior = PureState::from_amplitudes(n - 2, std::move(post));
    result.probabilities = probs;
    return result;
}

void PauliFrame::apply(PureState& state, int q) const {
    if (z) state.apply_pauli(q, Pauli::Z);
    if (x) state.apply_pauli(q, Pauli::X);
}

PauliFrame swap_correction(int k) {
    switch (k) {
    case 0: return PauliFrame{false, false};
    case 1: return PauliFrame{false, true};
    case 2: return PauliFrame{true, false};
    case 3: return PauliFrame{true, true};
    default: throw std::invalid_argument("Bell outcome label must be 0..3");
    }
}

SwapResult entanglement_swap(OutcomeMode mode) {
    PureState pairs = tensor(bell_pair(), bell_pair());
    BellMeasurement node = bell_measure(pairs, 1, 2, mode);
    // Survivors: qubit 0 (first user) and qubit 1 (second user, formerly 3).
    swap_correction(node.outcome.k).apply(node.posterior, 1);
    return SwapResult{node.outcome, std::move(node.posterior)};
}

MergeResult ghz_merge(int n, int m, OutcomeMode mode) {
    if (n < 2 || m < 2) throw CapacityError("ghz_merge: resources need at least 2 parties");
    if (n + m > 14) throw CapacityError("ghz_merge: combined size capped at 14 parties");

    PureState combined = tensor(ghz_state(n), ghz_state(m));
    BellMeasurement node = bell_measure(combined, n - 1, n, mode);

    // Survivors 0..n-2 kept the first resource; n-1..n+m-3 are the second.
    // Psi outcomes flip every second-resource survivor; odd-phase outcomes
    // additionally need one Z.
    PureState merged = std::move(node.posterior);
    const int k = node.outcome.k;
    if (k == 2 || k == 3) {
        for (int q = n - 1; q < n + m - 2; ++q) merged.apply_pauli(q, Pauli::X);
    }
    if (k == 1 || k == 3) {
        merged.apply_pauli(n - 1, Pauli::Z);
    }
    return MergeResult{node.outcome, std::move(merged)};
}

} // namespace entsim
