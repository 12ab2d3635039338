#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>

#include "entsim/commcomplex.hpp"
#include "entsim/network.hpp"

using namespace entsim;

namespace {

// State-vector route for the correlation: party i measures X for x_i = 0 and
// Y for x_i = 1 (phi_i = pi/2 * x_i) on the shared GHZ state.
double correlation_via_statevec(int n, std::uint32_t bits, double visibility) {
    std::vector<Pauli> ops;
    for (int i = 0; i < n; ++i) ops.push_back((bits >> i) & 1 ? Pauli::Y : Pauli::X);
    return visibility * expect_pauli_string(ghz_state(n), ops);
}

} // namespace

TEST_CASE("promise_inputs enumerates even-weight strings") {
    const auto three = promise_inputs(3);
    REQUIRE(three.size() == 4);
    CHECK(three[0].bits == 0b000);
    CHECK(three[1].bits == 0b011);
    CHECK(three[2].bits == 0b101);
    CHECK(three[3].bits == 0b110);

    CHECK(promise_inputs(5).size() == 16);

    CHECK_THROWS_AS(promise_inputs(4), std::invalid_argument);
    CHECK_THROWS_AS(promise_inputs(1), std::invalid_argument);
    CHECK_THROWS_AS(promise_inputs(17), std::invalid_argument);
}

TEST_CASE("f_value is the sign of cos(pi/2 sum)") {
    CHECK(f_value(PromiseInput{3, 0b000}) == 1);
    CHECK(f_value(PromiseInput{3, 0b011}) == -1);
    CHECK(f_value(PromiseInput{5, 0b00011}) == -1);
    CHECK(f_value(PromiseInput{5, 0b01111}) == 1);
    CHECK_THROWS_AS(f_value(PromiseInput{3, 0b001}), std::invalid_argument);

    // Cross-check the frozen signs against the cosine itself.
    for (const PromiseInput& x : promise_inputs(5)) {
        const double cosine = std::cos(0.5 * 3.14159265358979323846 * std::popcount(x.bits));
        CHECK(f_value(x) == (cosine > 0 ? 1 : -1));
    }
}

TEST_CASE("p_classical closed form") {
    CHECK(p_classical(3) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(p_classical(5) == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(p_classical(7) == doctest::Approx(0.5625).epsilon(1e-12));
    CHECK_THROWS_AS(p_classical(0), std::invalid_argument);

    CHECK(p_classical_exact(3) == std::pair<long long, long long>{3, 4});
    CHECK(p_classical_exact(5) == std::pair<long long, long long>{5, 8});
    CHECK(p_classical_exact(7) == std::pair<long long, long long>{9, 16});
}

TEST_CASE("classical_bruteforce equals the closed-form bound exactly") {
    for (int n : {3, 5, 7}) {
        const BruteForceResult result = classical_bruteforce(n);
        const auto [num, den] = p_classical_exact(n);
        // best/promise_count == num/den as exact rationals
        CHECK(result.best_successes * den == num * result.promise_count);
        CHECK(!result.maximizers.empty());
        for (std::size_t i = 0; i + 1 < std::min<std::size_t>(result.maximizers.size(), 4); ++i) {
            CHECK(result.maximizers[i].index() < result.maximizers[i + 1].index());
        }
        // Every reported maximizer really attains the optimum.
        CHECK(strategy_successes(result.maximizers.front()) == result.best_successes);
        CHECK(strategy_successes(result.maximizers.back()) == result.best_successes);
    }

    // The all-(+1) strategy only ever wins on f(x) = +1 inputs: 1 of 4 at n=3.
    CHECK(strategy_successes(ClassicalStrategy(3, 0)) == 1);

    CHECK_THROWS_AS(classical_bruteforce(4), std::invalid_argument);
    CHECK_THROWS_AS(classical_bruteforce(11), std::invalid_argument);
}

TEST_CASE("quantum_correlation analytic vs state-vector route") {
    CHECK(quantum_correlation(3, PromiseInput{3, 0b000}, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quantum_correlation(3, PromiseInput{3, 0b011}, 1.0) ==
          doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(quantum_correlation(3, PromiseInput{3, 0b110}, 0.0) ==
          doctest::Approx(0.0).epsilon(1e-12));

    for (int n : {3, 5}) {
        for (double v : {1.0, 0.7}) {
            for (const PromiseInput& x : promise_inputs(n)) {
                CHECK(quantum_correlation(n, x, v) ==
                      doctest::Approx(correlation_via_statevec(n, x.bits, v)).epsilon(1e-9));
            }
        }
    }

    CHECK_THROWS_AS(quantum_correlation(3, PromiseInput{5, 0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(quantum_correlation(3, PromiseInput{3, 0}, 1.5), std::invalid_argument);
}

TEST_CASE("bell_value, bound and critical visibility") {
    const BellFunctional bf = BellFunctional::for_parties(3);
    CHECK(bf.bound() == 8.0);
    CHECK(bf.coefficient(0b001) == 0.0);
    CHECK(bf.coefficient(0b000) == doctest::Approx(4.0).epsilon(1e-12));  // sqrt(2^4)
    CHECK(bf.coefficient(0b011) == doctest::Approx(-4.0).epsilon(1e-12));

    CHECK(bell_value(3, 1.0) == doctest::Approx(16.0).epsilon(1e-9));
    CHECK(critical_visibility(3) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(bell_value(3, 0.5) == doctest::Approx(8.0).epsilon(1e-9)); // boundary, no violation
    CHECK_THROWS_AS(bell_value(4, 1.0), std::invalid_argument);

    // Dual route: sum_x g(x) E(x) with state-vector correlations.
    for (int n : {3, 5}) {
        const BellFunctional functional = BellFunctional::for_parties(n);
        for (double v : {1.0, 0.6}) {
            double total = 0.0;
            for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
                if (std::popcount(x) % 2) continue; // g vanishes off the promise
                total += functional.coefficient(x) * correlation_via_statevec(n, x, v);
            }
            CHECK(total == doctest::Approx(bell_value(n, v)).epsilon(1e-9));
        }
        CHECK(bell_value(n, critical_visibility(n)) ==
              doctest::Approx(functional.bound()).epsilon(1e-9));
    }
}

TEST_CASE("analytic_success formula and limits") {
    CHECK(analytic_success(3, NoiseParams{1.0, 1.0}) == 1.0);
    CHECK(analytic_success(3, NoiseParams{0.9, 0.8}) == doctest::Approx(0.7324).epsilon(1e-9));
    CHECK(analytic_success(4, NoiseParams{0.9, 0.8}) ==
          doctest::Approx(0.68460284271247463).epsilon(1e-12));
    CHECK(analytic_success(4, NoiseParams{0.9, 0.8}) > p_classical(4));
    CHECK(analytic_success(5, NoiseParams{0.9, 0.8}) == doctest::Approx(0.647496).epsilon(1e-9));

    // Degenerate limits: dead detectors give the classical rate, white noise
    // with perfect detectors gives a coin toss.
    for (int n : {3, 4, 7}) {
        CHECK(analytic_success(n, NoiseParams{0.7, 0.0}) ==
              doctest::Approx(p_classical(n)).epsilon(1e-12));
        CHECK(analytic_success(n, NoiseParams{0.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-12));
    }

    CHECK_THROWS_AS(analytic_success(0, NoiseParams{1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(analytic_success(3, NoiseParams{1.2, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(analytic_success(3, NoiseParams{1.0, -0.1}), std::invalid_argument);
}

TEST_CASE("analytic_success is nondecreasing in V") {
    for (int n : {3, 4, 5, 8}) {
        for (double eta : {0.3, 0.7, 1.0}) {
            double previous = -1.0;
            for (int i = 0; i <= 20; ++i) {
                const double value = analytic_success(n, NoiseParams{i / 20.0, eta});
                CHECK(value >= previous);
                previous = value;
            }
        }
    }
}

TEST_CASE("min_partners") {
    CHECK(min_partners(NoiseParams{0.9, 0.8}, false) == 4);
    CHECK(min_partners(NoiseParams{0.9, 0.8}, true) == 5);
    CHECK(min_partners(NoiseParams{1.0, 1.0}, false) == 3);
    CHECK(min_partners(NoiseParams{1.0, 1.0}, true) == 3);
    CHECK(!min_partners(NoiseParams{0.0, 1.0}, false).has_value());
    CHECK(!min_partners(NoiseParams{0.5, 0.0}, true).has_value());
}

TEST_CASE("monte_carlo agrees with the analytic rate") {
    // Perfect apparatus solves the problem with certainty on every trial.
    const MonteCarloResult perfect = monte_carlo(3, NoiseParams{1.0, 1.0}, 10000, 0);
    CHECK(perfect.successes == perfect.trials);
    CHECK(perfect.estimate == 1.0);
    CHECK(perfect.std_error == 0.0);

    const MonteCarloResult noisy = monte_carlo(3, NoiseParams{0.9, 0.8}, 100000, 1);
    CHECK(std::abs(noisy.estimate - analytic_success(3, NoiseParams{0.9, 0.8})) <=
          3.0 * noisy.std_error);

    const MonteCarloResult white = monte_carlo(3, NoiseParams{0.0, 1.0}, 100000, 2);
    CHECK(std::abs(white.estimate - 0.5) <= 3.0 * white.std_error);

    // Seed determinism.
    const MonteCarloResult again = monte_carlo(3, NoiseParams{0.9, 0.8}, 100000, 1);
    CHECK(again.successes == noisy.successes);

    // Largest supported protocol size still runs (and stays certain).
    const MonteCarloResult nine = monte_carlo(9, NoiseParams{1.0, 1.0}, 200, 0);
    CHECK(nine.successes == nine.trials);

    CHECK_THROWS_AS(monte_carlo(4, NoiseParams{1, 1}, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS(monte_carlo(3, NoiseParams{1, 1}, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(monte_carlo(11, NoiseParams{1, 1}, 10, 0), std::invalid_argument);
}

TEST_CASE("scan_region ordering and flags") {
    const int ns[] = {4, 3};
    const double vs[] = {0.9, 0.4};
    const double etas[] = {0.8, 0.0, 1.0};
    const auto samples = scan_region(ns, vs, etas);
    REQUIRE(samples.size() == 12);

    // Lexicographic by (n, V, eta) regardless of input order.
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const auto& a = samples[i];
        const auto& b = samples[i + 1];
        const bool ordered = a.n < b.n || (a.n == b.n && a.visibility < b.visibility) ||
                             (a.n == b.n && a.visibility == b.visibility &&
                              a.efficiency < b.efficiency);
        CHECK(ordered);
    }

    for (const RegionSample& cell : samples) {
        CHECK(cell.p_classical == doctest::Approx(p_classical(cell.n)).epsilon(1e-12));
        CHECK(cell.advantage == (cell.p_quantum > cell.p_classical));
        if (cell.efficiency == 0.0) CHECK(!cell.advantage);
        if (cell.n == 4 && cell.visibility == 0.9 && cell.efficiency == 0.8) {
            CHECK(cell.advantage);
        }
        if (cell.n == 3 && cell.visibility == 0.4 && cell.efficiency == 1.0) {
            CHECK(cell.p_quantum == doctest::Approx(0.7).epsilon(1e-12));
            CHECK(!cell.advantage);
        }
    }

    CHECK_THROWS_AS(scan_region(std::vector<int>{2}, vs, etas), std::invalid_argument);
    CHECK_THROWS_AS(scan_region(ns, std::vector<double>{1.5}, etas), std::invalid_argument);
}
