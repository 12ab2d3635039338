#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "entsim/mbqc.hpp"
#include "support/matrix_oracle.hpp"

using namespace entsim;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<OutcomeMode> forced(std::initializer_list<int> bits) {
    std::vector<OutcomeMode> modes;
    for (int b : bits) modes.push_back(OutcomeMode::forced(b));
    return modes;
}

oracle::Vec rx_rz_plus(double beta, double alpha) {
    return oracle::apply(oracle::rx(beta), oracle::apply(oracle::rz(alpha), oracle::plus()));
}

} // namespace

TEST_CASE("adapt_angle flips the sign on an X frame") {
    CHECK(adapt_angle(ByproductRecord{0, 0}, 1.3) == 1.3);
    CHECK(adapt_angle(ByproductRecord{0, 1}, 1.3) == 1.3);
    CHECK(adapt_angle(ByproductRecord{1, 0}, 1.3) == -1.3);
    CHECK(adapt_angle(ByproductRecord{1, 1}, 0.0) == 0.0);
}

TEST_CASE("update_byproduct two-step frame is (s2, s1)") {
    const ByproductRecord quiet = update_byproduct(ByproductRecord{}, 0);
    CHECK(quiet.a == 0);
    CHECK(quiet.b == 0);

    for (int s1 = 0; s1 < 2; ++s1) {
        for (int s2 = 0; s2 < 2; ++s2) {
            ByproductRecord rec;
            rec = update_byproduct(rec, s1);
            rec = update_byproduct(rec, s2);
            CHECK(rec.a == s2);
            CHECK(rec.b == s1);
        }
    }
}

TEST_CASE("frame rule agrees with brute-force matrix commutation") {
    // Adapted chain: X^{s_k} H Rz((-1)^{a} angle_k) ... must equal
    // X^a Z^b * (H Rz(angle_k)) ... (H Rz(angle_1)) up to global phase,
    // with (a, b) produced by the update rule. Checked on 2x2 matrices for
    // k = 4, all 16 outcome vectors, several random angle tuples.
    Rng rng(21);
    for (int tuple = 0; tuple < 4; ++tuple) {
        double angles[4];
        for (double& a : angles) a = 2.0 * kPi * rng.next_unit();

        oracle::Mat nominal_product = oracle::eye(2);
        for (double a : angles) {
            nominal_product = oracle::mul(oracle::h(), oracle::mul(oracle::rz(a), nominal_product));
        }

        for (int bits = 0; bits < 16; ++bits) {
            ByproductRecord rec;
            oracle::Mat chain = oracle::eye(2);
            for (int j = 0; j < 4; ++j) {
                const double used = adapt_angle(rec, angles[j]);
                chain = oracle::mul(oracle::h(), oracle::mul(oracle::rz(used), chain));
                if ((bits >> j) & 1) chain = oracle::mul(oracle::x(), chain);
                rec = update_byproduct(rec, (bits >> j) & 1);
            }
            oracle::Mat framed = nominal_product;
            if (rec.b) framed = oracle::mul(oracle::z(), framed);
            if (rec.a) framed = oracle::mul(oracle::x(), framed);
            CHECK(oracle::phase_distance(chain, framed) < 1e-9);
        }
    }
}

TEST_CASE("run_pattern with no byproduct reproduces Rx(beta) Rz(alpha)") {
    const Pattern p{{0.7, 1.9}};
    const RunResult run = run_pattern(p, forced({0, 0}));
    CHECK(run.byproduct.a == 0);
    CHECK(run.byproduct.b == 0);
    CHECK(oracle::fidelity_vs(run.corrected_output, rx_rz_plus(1.9, 0.7)) >= 1.0 - 1e-9);
    CHECK(oracle::fidelity_vs(run.raw_output, rx_rz_plus(1.9, 0.7)) >= 1.0 - 1e-9);
}

TEST_CASE("adaptive run corrects the s1=1 branch back to the nominal gate") {
    const double alpha = 0.7, beta = 1.9;
    const Pattern p{{alpha, beta}};
    const RunResult run = run_pattern(p, forced({1, 0}));

    CHECK(run.adapted_angles[0] == alpha);
    CHECK(run.adapted_angles[1] == -beta); // basis switched to B(-beta)
    CHECK(run.byproduct.a == 0);
    CHECK(run.byproduct.b == 1); // correction sigma_z

    const oracle::Vec nominal = rx_rz_plus(beta, alpha);
    CHECK(oracle::fidelity_vs(run.raw_output, oracle::apply(oracle::z(), nominal)) >= 1.0 - 1e-9);
    CHECK(oracle::fidelity_vs(run.corrected_output, nominal) >= 1.0 - 1e-9);
    CHECK(fidelity_up_to_phase(run.corrected_output, circuit_oracle(p)) >= 1.0 - 1e-9);
}

TEST_CASE("fixed-basis run keeps the outcome-dependent angle twist") {
    // Without adaptation the two-step output is
    // sigma_x^{s2} sigma_z^{s1} Rx((-1)^{s1} beta) Rz(alpha) |+>.
    const double alpha = 0.7, beta = 1.9;
    const Pattern p{{alpha, beta}};

    const RunResult run = run_pattern_fixed_basis(p, forced({1, 0}));
    CHECK(run.adapted_angles[1] == beta); // nominal basis, no switch
    const oracle::Vec twisted = rx_rz_plus(-beta, alpha);
    CHECK(oracle::fidelity_vs(run.raw_output, oracle::apply(oracle::z(), twisted)) >= 1.0 - 1e-9);
    CHECK(oracle::fidelity_vs(run.corrected_output, twisted) >= 1.0 - 1e-9);

    for (int s1 = 0; s1 < 2; ++s1) {
        for (int s2 = 0; s2 < 2; ++s2) {
            const RunResult r = run_pattern_fixed_basis(p, forced({s1, s2}));
            const oracle::Vec expected = rx_rz_plus(s1 ? -beta : beta, alpha);
            CHECK(oracle::fidelity_vs(r.corrected_output, expected) >= 1.0 - 1e-9);
        }
    }
}

TEST_CASE("single zero-angle measurement computes H|+> = |0>") {
    const RunResult run = run_pattern(Pattern{{0.0}}, forced({0}));
    CHECK(oracle::fidelity_vs(run.corrected_output, oracle::ket(2, 0)) >= 1.0 - 1e-9);
}

TEST_CASE("every cluster branch is an unbiased coin") {
    const Pattern p{{1.1, 2.3}};
    for (int bits = 0; bits < 4; ++bits) {
        const RunResult run = run_pattern(p, forced({bits & 1, (bits >> 1) & 1}));
        for (double prob : run.branch_probabilities) {
            CHECK(prob == doctest::Approx(0.5).epsilon(1e-9));
        }
    }
}

TEST_CASE("run_pattern argument checks") {
    CHECK_THROWS_AS(run_pattern(Pattern{{0.5, 0.5}}, forced({0})), std::invalid_argument);
    CHECK_THROWS_AS(run_pattern(Pattern{{}}, forced({})), std::invalid_argument);
    CHECK_THROWS_AS(circuit_oracle(Pattern{{std::nan("")}}), std::invalid_argument);
}

TEST_CASE("circuit_oracle matches explicit matrix products") {
    const Pattern two{{0.9, 2.2}};
    CHECK(oracle::fidelity_vs(circuit_oracle(two), rx_rz_plus(2.2, 0.9)) >= 1.0 - 1e-9);

    CHECK(oracle::fidelity_vs(circuit_oracle(Pattern{{0.0}}), oracle::ket(2, 0)) >= 1.0 - 1e-9);

    const Pattern three{{kPi / 2, kPi / 2, kPi / 2}};
    oracle::Vec expected = oracle::plus();
    for (int j = 0; j < 3; ++j) {
        expected = oracle::apply(oracle::h(), oracle::apply(oracle::rz(kPi / 2), expected));
    }
    CHECK(oracle::fidelity_vs(circuit_oracle(three), expected) >= 1.0 - 1e-9);
}

TEST_CASE("verify_pattern: all branches, grid and random angles") {
    // k = 2 over an 8x8 grid; every forced branch must reproduce the circuit
    // model and sit on a 1/4-probability branch.
    for (int ia = 0; ia < 8; ++ia) {
        for (int ib = 0; ib < 8; ++ib) {
            const Pattern p{{2.0 * kPi * ia / 8.0, 2.0 * kPi * ib / 8.0}};
            const VerifyReport report = verify_pattern(p);
            CHECK(report.branches.size() == 4);
            CHECK(report.passed());
        }
    }

    const VerifyReport trivial = verify_pattern(Pattern{{0.0}});
    for (const BranchReport& branch : trivial.branches) {
        CHECK(branch.fidelity >= 1.0 - 1e-9);
        CHECK(branch.probability == doctest::Approx(0.5).epsilon(1e-9));
    }

    Rng rng(31);
    std::vector<double> angles(5);
    for (double& a : angles) a = 2.0 * kPi * rng.next_unit();
    const VerifyReport general = verify_pattern(Pattern{angles});
    CHECK(general.branches.size() == 32);
    CHECK(general.passed());

    CHECK_THROWS_AS(verify_pattern(Pattern{std::vector<double>(11, 0.1)}), std::invalid_argument);
}

TEST_CASE("sampled runs are seed-deterministic") {
    const Pattern p{{0.4, 1.6, 2.8}};
    auto sample_run = [&](std::uint64_t seed) {
        Rng rng(seed);
        std::vector<OutcomeMode> modes(3, OutcomeMode::sample(rng));
        return run_pattern(p, modes);
    };
    const RunResult a = sample_run(123);
    const RunResult b = sample_run(123);
    CHECK(a.outcomes == b.outcomes);
    CHECK(a.adapted_angles == b.adapted_angles);
    for (std::size_t i = 0; i < a.corrected_output.dim(); ++i) {
        CHECK(a.corrected_output.amplitude(i) == b.corrected_output.amplitude(i));
    }
}

TEST_CASE("pattern text format") {
    std::istringstream good("# leading comment\n0.5\n\n  1.25  \n# trailing\n");
    const Pattern p = parse_pattern(good);
    CHECK(p.angles == std::vector<double>{0.5, 1.25});

    std::istringstream bad("0.5\nabc\n");
    CHECK_THROWS_WITH_AS(parse_pattern(bad), "line 2: not a decimal angle: 'abc'",
                         PatternParseError);

    std::istringstream not_finite("nan\n");
    CHECK_THROWS_AS(parse_pattern(not_finite), PatternParseError);

    std::istringstream empty("# nothing here\n");
    CHECK_THROWS_AS(parse_pattern(empty), PatternParseError);

    CHECK_THROWS_AS(load_pattern("/no/such/file"), std::runtime_error);
}

TEST_CASE("feed_forward_budget") {
    const FeedForwardBudget fast = feed_forward_budget(LatencyBudget{30, 10, 100, 1.4990});
    CHECK(fast.cycle_ns == 140.0);

    const FeedForwardBudget nominal = feed_forward_budget(LatencyBudget{30, 10, 110, 1.4990});
    CHECK(nominal.cycle_ns == 150.0);
    CHECK(std::abs(nominal.fiber_delay_m - 30.0) <= 0.01 * 30.0);

    const FeedForwardBudget idle = feed_forward_budget(LatencyBudget{0, 0, 0, 1.5});
    CHECK(idle.cycle_ns == 0.0);
    CHECK(idle.fiber_delay_m == 0.0);

    CHECK_THROWS_AS(feed_forward_budget(LatencyBudget{-1, 10, 100, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(feed_forward_budget(LatencyBudget{30, 10, 100, 0.9}), std::invalid_argument);
    CHECK_THROWS_AS(feed_forward_budget(LatencyBudget{30, 10, 100, 3.5}), std::invalid_argument);
}
