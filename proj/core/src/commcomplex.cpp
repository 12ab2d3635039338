#include "entsim/commcomplex.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "entsim/network.hpp"

namespace entsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_odd_party_count(int n, int lo, int hi, const char* who) {
    if (n < lo || n > hi || n % 2 == 0) {
        throw std::invalid_argument(std::string(who) + ": party count must be odd in [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                                    std::to_string(n));
    }
}

void require_unit_interval(double v, const char* who) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(who) + " must lie in [0, 1]");
    }
}

void validate_noise(const NoiseParams& noise) {
    require_unit_interval(noise.visibility, "visibility");
    require_unit_interval(noise.efficiency, "efficiency");
}

int sign_of_even_cosine(std::uint32_t bits) {
    // cos(pi/2 * sum) for an even bit-sum: (-1)^{sum/2}
    return ((std::popcount(bits) / 2) % 2 == 0) ? 1 : -1;
}

} // namespace

BellFunctional BellFunctional::for_parties(int n) {
    require_odd_party_count(n, 3, 31, "BellFunctional");
    return BellFunctional{n};
}

double BellFunctional::coefficient(std::uint32_t x) const {
    const int pop = std::popcount(x);
    if (pop % 2 == 1) return 0.0; // cos(pi/2 * odd) vanishes exactly
    return ((pop / 2) % 2 == 0 ? 1.0 : -1.0) * std::sqrt(std::ldexp(1.0, n + 1));
}

double BellFunctional::bound() const { return std::ldexp(1.0, n); }

std::vector<PromiseInput> promise_inputs(int n) {
    require_odd_party_count(n, 3, 15, "promise_inputs");
    std::vector<PromiseInput> inputs;
    inputs.reserve(std::size_t{1} << (n - 1));
    for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
        if (std::popcount(x) % 2 == 0) inputs.push_back(PromiseInput{n, x});
    }
    return inputs;
}

int f_value(const PromiseInput& x) {
    if (std::popcount(x.bits) % 2 != 0) {
        throw std::invalid_argument("f_value: input is off the even bit-sum promise");
    }
    return sign_of_even_cosine(x.bits);
}

double p_classical(int n) {
    if (n < 1) throw std::invalid_argument("p_classical: n must be positive");
    return 0.5 * (1.0 + 1.0 / std::sqrt(std::ldexp(1.0, n - 1)));
}

std::pair<long long, long long> p_classical_exact(int n) {
    require_odd_party_count(n, 1, 61, "p_classical_exact");
    const long long half_root = 1LL << ((n - 1) / 2); // sqrt(2^{n-1}), integral for odd n
    return {half_root + 1, 2 * half_root};
}

ClassicalStrategy::ClassicalStrategy(int n, std::uint64_t index) : n_(n), index_(index) {
    if (n < 1 || n > 31) throw std::invalid_argument("strategy party count out of range");
    if (index >> (2 * n)) throw std::invalid_argument("strategy index exceeds 2n bits");
}

int ClassicalStrategy::sign(int party, int input) const {
    if (party < 0 || party >= n_ || (input & ~1) != 0) {
        throw std::invalid_argument("no such strategy entry");
    }
    const int shift = 2 * n_ - 1 - (2 * party + input);
    return (index_ >> shift) & 1 ? -1 : 1;
}

long long strategy_successes(const ClassicalStrategy& strategy) {
    long long successes = 0;
    for (const PromiseInput& x : promise_inputs(strategy.parties())) {
        int product = 1;
        for (int i = 0; i < x.n; ++i) product *= strategy.sign(i, (x.bits >> i) & 1);
        if (product == f_value(x)) ++successes;
    }
    return successes;
}

BruteForceResult classical_bruteforce(int n) {
    require_odd_party_count(n, 3, 9, "classical_bruteforce");

    // Per promise input: the 2n-bit mask of strategy entries it selects, and
    // whether f(x) = -1. A strategy's product sign is then a popcount parity.
    const std::vector<PromiseInput> inputs = promise_inputs(n);
    std::vector<std::uint64_t> masks;
    std::vector<int> f_negative;
    masks.reserve(inputs.size());
    for (const PromiseInput& x : inputs) {
        std::uint64_t mask = 0;
        for (int i = 0; i < n; ++i) {
            const int input_bit = (x.bits >> i) & 1;
            mask |= std::uint64_t{1} << (2 * n - 1 - (2 * i + input_bit));
        }
        masks.push_back(mask);
        f_negative.push_back(f_value(x) < 0 ? 1 : 0);
    }

    BruteForceResult result;
    result.promise_count = static_cast<long long>(inputs.size());
    std::vector<std::uint64_t> best_indices;
    const std::uint64_t strategy_count = std::uint64_t{1} << (2 * n);
    for (std::uint64_t s = 0; s < strategy_count; ++s) {
        long long successes = 0;
        for (std::size_t i = 0; i < masks.size(); ++i) {
            const int negative = std::popcount(s & masks[i]) & 1;
            successes += (negative == f_negative[i]);
        }
        if (successes > result.best_successes) {
            result.best_successes = successes;
            best_indices.clear();
        }
        if (successes == result.best_successes) best_indices.push_back(s);
    }

    result.maximizers.reserve(best_indices.size());
    for (std::uint64_t s : best_indices) result.maximizers.emplace_back(n, s);
    return result;
}

double quantum_correlation(int n, const PromiseInput& x, double visibility) {
    require_odd_party_count(n, 3, 31, "quantum_correlation");
    require_unit_interval(visibility, "visibility");
    if (x.n != n) throw std::invalid_argument("input width does not match party count");
    return visibility * f_value(x);
}

double bell_value(int n, double visibility) {
    require_odd_party_count(n, 3, 41, "bell_value");
    require_unit_interval(visibility, "visibility");
    // sum_x g(x) E(x): 2^{n-1} promise terms of sqrt(2^{n+1}) V each.
    return visibility * std::ldexp(1.0, (3 * n - 1) / 2);
}

double critical_visibility(int n) {
    require_odd_party_count(n, 3, 41, "critical_visibility");
    return std::ldexp(1.0, (1 - n) / 2);
}

double analytic_success(int n, NoiseParams noise) {
    if (n < 1) throw std::invalid_argument("analytic_success: n must be positive");
    validate_noise(noise);
    const double all_fire = std::pow(noise.efficiency, n) * noise.visibility;
    const double none_fire = std::pow(1.0 - noise.efficiency, n);
    return all_fire + none_fire * p_classical(n) + (1.0 - all_fire - none_fire) * 0.5;
}

std::optional<int> min_partners(NoiseParams noise, bool odd_only) {
    validate_noise(noise);
    for (int n = 3; n <= 101; ++n) {
        if (odd_only && n % 2 == 0) continue;
        if (analytic_success(n, noise) > p_classical(n)) return n;
    }
    return std::nullopt;
}

MonteCarloResult monte_carlo(int n, NoiseParams noise, long long trials, std::uint64_t seed) {
    require_odd_party_count(n, 3, 9, "monte_carlo");
    validate_noise(noise);
    if (trials < 1) throw std::invalid_argument("monte_carlo: need at least one trial");

    const std::vector<PromiseInput> inputs = promise_inputs(n);
    const std::uint64_t input_mask = inputs.size() - 1; // 2^{n-1} inputs
    const ClassicalStrategy fallback = classical_bruteforce(n).maximizers.front();
    const PureState shared = ghz_state(n);

    long long successes = 0;
    std::vector<int> broadcast(n);
    for (long long trial = 0; trial < trials; ++trial) {
        // Draw order is fixed: input, state branch, detectors, outcomes.
        Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(trial));
        const PromiseInput& x = inputs[rng.next_u64() & input_mask];
        const bool ghz_branch = rng.bernoulli(noise.visibility);
        std::uint32_t fires = 0;
        for (int i = 0; i < n; ++i) fires |= std::uint32_t{rng.bernoulli(noise.efficiency)} << i;

        if (ghz_branch) {
            PureState state = shared;
            for (int i = 0; i < n; ++i) {
                // Party i's next qubit is index 0 of the shrinking register.
                const double basis = -0.5 * kPi * ((x.bits >> i) & 1);
                MeasurementOutcome out =
                    measure_b_alpha(state, 0, basis, OutcomeMode::sample(rng));
                broadcast[i] = out.s ? -1 : 1;
                state = std::move(out.posterior);
            }
        } else {
            // White noise: every local outcome is an independent fair sign.
            for (int i = 0; i < n; ++i) broadcast[i] = rng.bit() ? -1 : 1;
        }

        int product = 1;
        for (int i = 0; i < n; ++i) {
            const int value =
                (fires >> i) & 1 ? broadcast[i] : fallback.sign(i, (x.bits >> i) & 1);
            product *= value;
        }
        if (product == f_value(x)) ++successes;
    }

    MonteCarloResult result;
    result.successes = successes;
    result.trials = trials;
    result.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    result.std_error =
        std::sqrt(result.estimate * (1.0 - result.estimate) / static_cast<double>(trials));
    return result;
}

std::vector<RegionSample> scan_region(std::span<const int> n_list, std::span<const double> v_grid,
                                      std::span<const double> eta_grid) {
    std::vector<int> ns(n_list.begin(), n_list.end());
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::vector<double> vs(v_grid.begin(), v_grid.end());
    std::sort(vs.begin(), vs.end());
    std::vector<double> etas(eta_grid.begin(), eta_grid.end());
    std::sort(etas.begin(), etas.end());

    for (int n : ns) {
        if (n < 3) throw std::invalid_argument("scan_region: party counts start at 3");
    }
    for (double v : vs) require_unit_interval(v, "visibility");
    for (double e : etas) require_unit_interval(e, "efficiency");

    std::vector<RegionSample> samples;
    samples.reserve(ns.size() * vs.size() * etas.size());
    for (int n : ns) {
        const double classical = p_classical(n);
        for (double v : vs) {
            for (double eta : etas) {
                const double quantum = analytic_success(n, NoiseParams{v, eta});
                samples.push_back(RegionSample{n, v, eta, quantum, classical,
                                               quantum > classical});
            }
        }
    }
    return samples;
}

} // namespace entsim
