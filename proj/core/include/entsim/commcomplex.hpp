#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "entsim/statevec.hpp"

namespace entsim {

// One n-party input on the promise: bit i is party i's local datum x_i and
// the bit-sum is even. Party 0 sits at the least significant bit.
struct PromiseInput {
    int n = 0;
    std::uint32_t bits = 0;
};

// Visibility V of the shared state (GHZ weight in a white-noise mixture) and
// per-party detector efficiency eta, both in [0, 1].
struct NoiseParams {
    double visibility = 1.0;
    double efficiency = 1.0;
};

// The correlation Bell functional the distributed task is built on:
// coefficients g(x) = sqrt(2^{n+1}) cos(pi/2 * sum x_i) with local-realistic
// bound B(n) = 2^n. g vanishes exactly on odd bit-sums.
struct BellFunctional {
    int n;
    static BellFunctional for_parties(int n);
    double coefficient(std::uint32_t x) const;
    double bound() const;
};

// Every x in {0,1}^n with even bit-sum, ascending; exactly 2^{n-1} of them.
std::vector<PromiseInput> promise_inputs(int n);

// Task value on the promise: f(x) = (-1)^{(sum x_i)/2}, the sign of
// cos(pi/2 * sum x_i).
int f_value(const PromiseInput& x);

// Best classical success rate 1/2 (1 + 1/sqrt(2^{n-1})).
double p_classical(int n);

// Same value as an exact fraction {numerator, denominator} for odd n.
std::pair<long long, long long> p_classical_exact(int n);

// One deterministic local protocol: party i broadcasts sign(i, x_i).
// Encoded by a 2n-bit index whose ascending order is the lexicographic order
// of the sign vector (e_0(0), e_0(1), ..., e_{n-1}(1)) with +1 before -1.
class ClassicalStrategy {
  public:
    ClassicalStrategy(int n, std::uint64_t index);
    int parties() const { return n_; }
    std::uint64_t index() const { return index_; }
    int sign(int party, int input) const;

  private:
    int n_;
    std::uint64_t index_;
};

// Promise inputs (uniform) on which the strategy's broadcast product equals f.
long long strategy_successes(const ClassicalStrategy& strategy);

struct BruteForceResult {
    long long best_successes = 0;              // out of promise_count inputs
    long long promise_count = 0;               // 2^{n-1}
    std::vector<ClassicalStrategy> maximizers; // ascending index; front() is the
                                               // lexicographic tie-break winner
    double rate() const { return static_cast<double>(best_successes) / promise_count; }
};

// Exhaustive search over all 4^n deterministic strategies (odd n, 3..9).
// Shared randomness cannot beat the deterministic optimum, so this is the
// classical bound; it must coincide with p_classical_exact.
BruteForceResult classical_bruteforce(int n);

// E(x) under rho = V |GHZ><GHZ| + (1-V) I/2^n with party i measuring
// cos(phi_i) X + sin(phi_i) Y, phi_i = (pi/2) x_i: equals V * f(x).
double quantum_correlation(int n, const PromiseInput& x, double visibility);

// sum_x g(x) E(x) = V * 2^{(3n-1)/2}; violation iff it exceeds B(n) = 2^n.
double bell_value(int n, double visibility);

// Visibility at which bell_value meets the bound: 2^{(1-n)/2}.
double critical_visibility(int n);

// Success rate of the full protocol with imperfect state and detectors:
// eta^n V + (1-eta)^n P_class + (1 - eta^n V - (1-eta)^n) / 2.
// Evaluated as a formula for any n >= 1 (even n included).
double analytic_success(int n, NoiseParams noise);

// Smallest n >= 3 (odd only if requested) whose analytic success rate beats
// p_classical(n); searched up to n = 101, nullopt beyond that.
std::optional<int> min_partners(NoiseParams noise, bool odd_only);

struct MonteCarloResult {
    double estimate = 0.0;
    double std_error = 0.0; // binomial
    long long successes = 0;
    long long trials = 0;
};

// Protocol simulation, odd n in [3, 9]. Per trial: uniform promise input; the
// shared state is GHZ with probability V, else white noise (independent fair
// outcomes); each detector fires with probability eta; firing parties measure
// the state in B(-pi x_i / 2), silent ones broadcast the brute-force-optimal
// classical value; success iff the product of broadcast signs equals f(x).
// Trial i draws from Rng::for_stream(seed, i).
MonteCarloResult monte_carlo(int n, NoiseParams noise, long long trials, std::uint64_t seed);

struct RegionSample {
    int n;
    double visibility;
    double efficiency;
    double p_quantum;   // analytic_success
    double p_classical; // best classical rate for this n
    bool advantage;     // p_quantum > p_classical
};

// One sample per grid cell, ordered lexicographically by (n, V, eta).
std::vector<RegionSample> scan_region(std::span<const int> n_list, std::span<const double> v_grid,
                                      std::span<const double> eta_grid);

} // namespace entsim
