#include "entsim/statevec.hpp"

#include <cmath>
#include <string>

namespace entsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::string qubit_msg(const char* what, int q, int n) {
    return std::string(what) + ": qubit " + std::to_string(q) + " out of range for " +
           std::to_string(n) + "-qubit state";
}

} // namespace

PureState::PureState(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 0 || qubit_count > kMaxQubits) {
        throw CapacityError("qubit count " + std::to_string(qubit_count) + " outside [0, " +
                            std::to_string(kMaxQubits) + "]");
    }
    amplitudes_.assign(std::size_t{1} << qubit_count, 0.0);
    amplitudes_[0] = 1.0;
}

PureState PureState::basis_state(int qubit_count, std::uint64_t bits) {
    PureState s(qubit_count);
    if (bits >> qubit_count) {
        throw QubitIndexError("basis index " + std::to_string(bits) + " outside register");
    }
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[bits] = 1.0;
    return s;
}

PureState PureState::from_amplitudes(int qubit_count, std::vector<cdouble> amplitudes) {
    PureState s(qubit_count);
    if (amplitudes.size() != s.dim()) {
        throw std::invalid_argument("amplitude vector length " +
                                    std::to_string(amplitudes.size()) + " is not 2^" +
                                    std::to_string(qubit_count));
    }
    s.amplitudes_ = std::move(amplitudes);
    if (std::abs(s.norm_squared() - 1.0) > 1e-9) {
        throw std::invalid_argument("amplitude vector is not normalized");
    }
    return s;
}

double PureState::norm_squared() const {
    double total = 0.0;
    for (const cdouble& a : amplitudes_) total += std::norm(a);
    return total;
}

void PureState::check_qubit(int q) const {
    if (q < 0 || q >= qubit_count_) throw QubitIndexError(qubit_msg("gate/measurement", q, qubit_count_));
}

void PureState::apply_single_qubit(int q, const cdouble m00, const cdouble m01, const cdouble m10,
                                   const cdouble m11) {
    check_qubit(q);
    const std::size_t mask = std::size_t{1} << q;
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    const std::size_t half = amplitudes_.size() >> 1;
    for (std::size_t r = 0; r < half; ++r) {
        const std::size_t i0 = ((r & hi) << 1) | (r & lo);
        const std::size_t i1 = i0 | mask;
        const cdouble a0 = amplitudes_[i0];
        const cdouble a1 = amplitudes_[i1];
        amplitudes_[i0] = m00 * a0 + m01 * a1;
        amplitudes_[i1] = m10 * a0 + m11 * a1;
    }
}

void PureState::apply_h(int q) {
    apply_single_qubit(q, kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
}

void PureState::apply_rz(int q, double alpha) {
    const cdouble lower = std::exp(cdouble(0.0, -alpha / 2.0));
    const cdouble upper = std::exp(cdouble(0.0, alpha / 2.0));
    apply_single_qubit(q, lower, 0.0, 0.0, upper);
}

void PureState::apply_rx(int q, double beta) {
    const cdouble c = std::cos(beta / 2.0);
    const cdouble ms = cdouble(0.0, -std::sin(beta / 2.0));
    apply_single_qubit(q, c, ms, ms, c);
}

void PureState::apply_pauli(int q, Pauli which) {
    switch (which) {
    case Pauli::I:
        check_qubit(q);
        return;
    case Pauli::X:
        apply_single_qubit(q, 0.0, 1.0, 1.0, 0.0);
        return;
    case Pauli::Y:
        apply_single_qubit(q, 0.0, cdouble(0.0, -1.0), cdouble(0.0, 1.0), 0.0);
        return;
    case Pauli::Z:
        apply_single_qubit(q, 1.0, 0.0, 0.0, -1.0);
        return;
    }
}

void PureState::apply_cz(int q1, int q2) {
    check_qubit(q1);
    check_qubit(q2);
    if (q1 == q2) throw QubitIndexError("apply_cz: control and target coincide");
    const std::size_t m1 = std::size_t{1} << q1;
    const std::size_t m2 = std::size_t{1} << q2;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & m1) && (i & m2)) amplitudes_[i] = -amplitudes_[i];
    }
}

PureState plus_state(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw CapacityError("plus_state: qubit count " + std::to_string(n) + " outside [1, " +
                            std::to_string(kMaxQubits) + "]");
    }
    const double amp = std::pow(2.0, -0.5 * n);
    std::vector<cdouble> amps(std::size_t{1} << n, amp);
    return PureState::from_amplitudes(n, std::move(amps));
}

PureState tensor(const PureState& low, const PureState& high) {
    const int n = low.qubit_count() + high.qubit_count();
    if (n > kMaxQubits) throw CapacityError("tensor: combined register exceeds capacity");
    std::vector<cdouble> amps(std::size_t{1} << n);
    for (std::size_t jh = 0; jh < high.dim(); ++jh) {
        const cdouble ah = high.amplitude(jh);
        for (std::size_t jl = 0; jl < low.dim(); ++jl) {
            amps[(jh << low.qubit_count()) | jl] = ah * low.amplitude(jl);
        }
    }
    return PureState::from_amplitudes(n, std::move(amps));
}

namespace {

// Generic one-qubit projective measurement: branch s keeps
// bra_s = (c0[s], c1[s]) contracted against (amp_at_bit0, amp_at_bit1).
MeasurementOutcome measure_with_bras(const PureState& state, int q, const cdouble c0[2],
                                     const cdouble c1[2], OutcomeMode mode) {
    const int n = state.qubit_count();
    if (n < 1 || q < 0 || q >= n) {
        throw QubitIndexError("measurement: qubit " + std::to_string(q) +
                              " out of range for " + std::to_string(n) + "-qubit state");
    }
    const std::size_t mask = std::size_t{1} << q;
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    const std::size_t half = state.dim() >> 1;
    const auto amps = state.amplitudes();

    double p[2] = {0.0, 0.0};
    for (std::size_t r = 0; r < half; ++r) {
        const std::size_t i0 = ((r & hi) << 1) | (r & lo);
        const std::size_t i1 = i0 | mask;
        p[0] += std::norm(c0[0] * amps[i0] + c1[0] * amps[i1]);
        p[1] += std::norm(c0[1] * amps[i0] + c1[1] * amps[i1]);
    }

    int s;
    if (mode.is_forced()) {
        s = mode.forced_outcome();
        if (s != 0 && s != 1) {
            throw std::invalid_argument("forced outcome must be 0 or 1");
        }
        if (p[s] < kImpossibleOutcomeTolerance) {
            throw ImpossibleOutcomeError("forced outcome " + std::to_string(s) +
                                         " has vanishing probability " + std::to_string(p[s]));
        }
    } else {
        s = mode.rng().next_unit() < p[0] ? 0 : 1;
    }

    const double scale = 1.0 / std::sqrt(p[s]);
    std::vector<cdouble> post(half);
    for (std::size_t r = 0; r < half; ++r) {
        const std::size_t i0 = ((r & hi) << 1) | (r & lo);
        const std::size_t i1 = i0 | mask;
        post[r] = scale * (c0[s] * amps[i0] + c1[s] * amps[i1]);
    }

    MeasurementOutcome out;
    out.s = s;
    out.probability = p[s];
    out.posterior = PureState::from_amplitudes(n - 1, std::move(post));
    return out;
}

} // namespace

MeasurementOutcome measure_b_alpha(const PureState& state, int q, double alpha, OutcomeMode mode) {
    // <a±| = (<0| ± e^{+i alpha} <1|)/sqrt(2)
    const cdouble phase = std::exp(cdouble(0.0, alpha));
    const cdouble c0[2] = {kInvSqrt2, kInvSqrt2};
    const cdouble c1[2] = {kInvSqrt2 * phase, -kInvSqrt2 * phase};
    return measure_with_bras(state, q, c0, c1, mode);
}

MeasurementOutcome measure_z(const PureState& state, int q, OutcomeMode mode) {
    const cdouble c0[2] = {1.0, 0.0};
    const cdouble c1[2] = {0.0, 1.0};
    return measure_with_bras(state, q, c0, c1, mode);
}

double fidelity_up_to_phase(const PureState& a, const PureState& b) {
    if (a.qubit_count() != b.qubit_count()) {
        throw std::invalid_argument("fidelity_up_to_phase: qubit counts differ (" +
                                    std::to_string(a.qubit_count()) + " vs " +
                                    std::to_string(b.qubit_count()) + ")");
    }
    cdouble overlap = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        overlap += std::conj(a.amplitude(i)) * b.amplitude(i);
    }
    return std::norm(overlap);
}

double expect_pauli_string(const PureState& state, std::span<const Pauli> ops) {
    if (static_cast<int>(ops.size()) != state.qubit_count()) {
        throw std::invalid_argument("expect_pauli_string: got " + std::to_string(ops.size()) +
                                    " operators for " + std::to_string(state.qubit_count()) +
                                    " qubits");
    }
    PureState transformed = state;
    for (int q = 0; q < state.qubit_count(); ++q) {
        transformed.apply_pauli(q, ops[q]);
    }
    cdouble value = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        value += std::conj(state.amplitude(i)) * transformed.amplitude(i);
    }
    // Pauli strings are Hermitian; anything beyond fp noise is a bug.
    return value.real();
}

} // namespace entsim
