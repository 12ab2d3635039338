#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "entsim/rng.hpp"

namespace entsim {

using cdouble = std::complex<double>;

// Register cap. 2^24 amplitudes keep a state under ~256 MiB.
inline constexpr int kMaxQubits = 24;

// |amplitude|^2 bookkeeping tolerance after any operation.
inline constexpr double kNormTolerance = 1e-12;

// Tolerance for phase-insensitive state comparisons.
inline constexpr double kFidelityTolerance = 1e-9;

// A forced branch whose Born probability is below this is an error, never a
// silent renormalization of a null vector.
inline constexpr double kImpossibleOutcomeTolerance = 1e-12;

struct CapacityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct QubitIndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct ImpossibleOutcomeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Pauli { I, X, Y, Z };

// Selects how a projective measurement resolves its branch: Forced(k) picks
// branch k unconditionally (post-selection; errors out if the branch has
// vanishing probability), Sample(rng) draws from the Born distribution.
class OutcomeMode {
  public:
    static OutcomeMode sample(Rng& rng) {
        OutcomeMode m;
        m.rng_ = &rng;
        return m;
    }

    static OutcomeMode forced(int outcome) {
        OutcomeMode m;
        m.forced_ = outcome;
        return m;
    }

    bool is_forced() const { return rng_ == nullptr; }
    int forced_outcome() const { return forced_; }
    Rng& rng() const { return *rng_; }

  private:
    OutcomeMode() = default;
    Rng* rng_ = nullptr;
    int forced_ = 0;
};

// Dense normalized pure state. Index convention: qubit q contributes bit 2^q
// to the amplitude index (qubit 0 is least significant). A zero-qubit state
// is the scalar left over after the last measurement.
class PureState {
  public:
    // |0...0> on the given register size.
    explicit PureState(int qubit_count);
    PureState() : PureState(0) {}

    static PureState basis_state(int qubit_count, std::uint64_t bits);

    // Takes ownership of a full amplitude vector; length must be
    // 2^qubit_count and the norm must already be 1 within 1e-9.
    static PureState from_amplitudes(int qubit_count, std::vector<cdouble> amplitudes);

    int qubit_count() const { return qubit_count_; }
    std::size_t dim() const { return amplitudes_.size(); }
    cdouble amplitude(std::size_t index) const { return amplitudes_.at(index); }
    std::span<const cdouble> amplitudes() const { return amplitudes_; }
    double norm_squared() const;

    void apply_h(int q);
    void apply_rz(int q, double alpha); // exp(-i alpha sigma_z / 2)
    void apply_rx(int q, double beta);  // exp(-i beta sigma_x / 2)
    void apply_pauli(int q, Pauli which);
    void apply_cz(int q1, int q2);

    // Negates one amplitude. Breaks normalization-preserving unitarity on
    // purpose; used by stabilizer sensitivity checks.
    void flip_amplitude_sign(std::size_t index) { amplitudes_.at(index) = -amplitudes_.at(index); }

  private:
    void apply_single_qubit(int q, const cdouble m00, const cdouble m01, const cdouble m10,
                            const cdouble m11);
    void check_qubit(int q) const;

    int qubit_count_ = 0;
    std::vector<cdouble> amplitudes_;
};

struct MeasurementOutcome {
    int s = 0;                // realized branch; 0 <-> first projector of the basis
    double probability = 0.0; // Born probability of that branch
    PureState posterior;      // one qubit fewer, renormalized; indices above the
                              // measured qubit shift down by one
};

// Uniform superposition |+>^n, every amplitude 2^(-n/2). 1 <= n <= 24.
PureState plus_state(int n);

// Tensor product; the left factor keeps its indices, the right factor's
// qubits are appended above them.
PureState tensor(const PureState& low, const PureState& high);

// Measurement in B(alpha) = {|a+>, |a->}, |a±> = (|0> ± e^{-i alpha}|1>)/sqrt(2).
// Outcome s=0 corresponds to |a+>.
MeasurementOutcome measure_b_alpha(const PureState& state, int q, double alpha, OutcomeMode mode);

// Computational-basis measurement with projectors |0><0|, |1><1|.
MeasurementOutcome measure_z(const PureState& state, int q, OutcomeMode mode);

// |<a|b>|^2: symmetric, 1 iff the states are equal up to global phase.
double fidelity_up_to_phase(const PureState& a, const PureState& b);

// <state| P_0 ⊗ ... ⊗ P_{n-1} |state> for a Pauli operator per qubit.
double expect_pauli_string(const PureState& state, std::span<const Pauli> ops);

} // namespace entsim
