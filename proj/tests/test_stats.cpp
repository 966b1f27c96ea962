#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "invmult/stats.hpp"
#include "oracles.hpp"

using namespace invmult;

namespace {

OutcomeSequence blocks(const std::vector<std::uint32_t>& counts, bool reversed) {
    std::vector<std::uint32_t> s;
    const auto k = static_cast<std::uint32_t>(counts.size());
    for (std::uint32_t r = 0; r < k; ++r) {
        const std::uint32_t symbol = reversed ? k - r : r + 1;
        s.insert(s.end(), counts[symbol - 1], symbol);
    }
    return OutcomeSequence(s, k);
}

}  // namespace

TEST(HStatistic, Endpoints) {
    EXPECT_EQ(h_statistic(blocks({10, 10, 10, 10, 10, 10}, false)), Rational(1));
    EXPECT_EQ(h_statistic(blocks({10, 10, 10, 10, 10, 10}, true)), Rational(-1));
    EXPECT_EQ(h_statistic(blocks({3, 1, 0, 2}, false)), Rational(1));
    EXPECT_EQ(h_statistic(blocks({3, 1, 0, 2}, true)), Rational(-1));
    EXPECT_EQ(h_statistic(OutcomeSequence({1, 2, 2, 1})), Rational(0));
}

TEST(HStatistic, UndefinedWithoutMixing) {
    EXPECT_FALSE(h_statistic(OutcomeSequence({2, 2, 2}, 3)).has_value());
    EXPECT_FALSE(h_statistic(OutcomeSequence({}, 3)).has_value());
}

TEST(Simulate, DegenerateCases) {
    const auto empty = simulate_experiment(0, ProbVector<Rational>::equal(3), 5);
    EXPECT_EQ(empty.sequence.size(), 0u);
    EXPECT_EQ(empty.inversions, 0u);
    EXPECT_FALSE(empty.h.has_value());

    const auto ones = simulate_experiment(25, ProbVector<Rational>({1, 0, 0}), 5);
    EXPECT_EQ(ones.sequence.symbols(), std::vector<std::uint32_t>(25, 1));
    EXPECT_EQ(ones.inversions, 0u);
    EXPECT_EQ(ones.counts, Composition({25, 0, 0}));

    const auto last = simulate_experiment(25, ProbVector<Rational>({0, 0, 1}), 5);
    EXPECT_EQ(last.sequence.symbols(), std::vector<std::uint32_t>(25, 3));
}

TEST(Simulate, SeededStreamIsReproducible) {
    // The engine itself is pinned by the standard: 10000th output of a
    // default-seeded mt19937_64.
    Engine e;
    e.discard(9999);
    EXPECT_EQ(e(), 9981545732273789042ULL);

    const auto p = ProbVector<Rational>::equal(2);
    const auto a = simulate_experiment(10, p, 42);
    const auto b = simulate_experiment(10, p, 42);
    EXPECT_EQ(a.sequence, b.sequence);
    EXPECT_EQ(a.inversions, b.inversions);
    EXPECT_EQ(a.h, b.h);
    // Frozen from an independent Python MT19937-64 implementation of the same sampling rule.
    EXPECT_EQ(a.sequence.str(), "2,2,2,1,2,1,2,1,1,1");
    EXPECT_NE(simulate_experiment(10, p, 43).sequence, a.sequence);
}

TEST(Simulate, ResultInvariants) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng() % 6);
        const std::uint32_t n = static_cast<std::uint32_t>(rng() % 60);
        const ProbVector<Rational> p(oracle::random_rational_probs(k, rng));
        const auto r = simulate_experiment(n, p, rng());
        EXPECT_EQ(r.counts, r.sequence.counts());
        EXPECT_EQ(r.inversions, oracle::quadratic_inversions(r.sequence.symbols()));
        EXPECT_LE(r.inversions, max_inversions(r.counts));
        EXPECT_EQ(r.h.has_value(), max_inversions(r.counts) > 0);
        if (r.h) {
            EXPECT_LE(*r.h, 1);
            EXPECT_GE(*r.h, -1);
        }
        for (std::size_t c = 0; c < k; ++c)
            if (p[c] == 0) EXPECT_EQ(r.counts[c], 0u);
    }
}

TEST(MonteCarlo, SingleReplication) {
    const SimulationConfig<Rational> cfg{4, ProbVector<Rational>::equal(3), 1, 9};
    const auto s = monte_carlo_joint(cfg);
    ASSERT_EQ(s.cells.size(), 1u);
    std::uint64_t total = 0;
    for (const auto& [y, counts] : s.cells)
        for (auto c : counts) total += c;
    EXPECT_EQ(total, 1u);
    EXPECT_EQ(s.variance_i, 0.0);
}

TEST(MonteCarlo, RejectsZeroReplications) {
    const SimulationConfig<Rational> cfg{4, ProbVector<Rational>::equal(3), 0, 9};
    EXPECT_THROW(monte_carlo_joint(cfg), InvalidArgument);
}

TEST(MonteCarlo, Deterministic) {
    const SimulationConfig<double> cfg{6, ProbVector<double>({0.2, 0.5, 0.3}), 20000, 77};
    const auto a = monte_carlo_joint(cfg);
    const auto b = monte_carlo_joint(cfg);
    EXPECT_EQ(a.cells, b.cells);
    EXPECT_EQ(a.mean_i, b.mean_i);
    EXPECT_EQ(a.mean_h, b.mean_h);

    std::vector<OutcomeSequence> seen;
    monte_carlo_joint(SimulationConfig<double>{6, cfg.p, 3, 77}, [&](const OutcomeSequence& s) { seen.push_back(s); });
    ASSERT_EQ(seen.size(), 3u);
    // The first replication consumes the same draws as a lone experiment.
    EXPECT_EQ(seen[0], simulate_experiment(6, cfg.p, 77).sequence);
}

TEST(MonteCarlo, EmpiricalJointConverges) {
    const std::vector<std::vector<Rational>> vectors{
        {Rational(1, 3), Rational(2, 3)},
        {Rational(1, 2), Rational(1, 3), Rational(1, 6)},
        {Rational(1, 3), Rational(1, 3), Rational(1, 3)},
    };
    const std::uint64_t reps = 1'000'000;
    std::uint64_t seed = 1000;
    for (const auto& probs : vectors)
        for (std::uint32_t n = 1; n <= 4; ++n) {
            const ProbVector<Rational> p(probs);
            const auto exact = joint_pmf(n, p);
            const auto mc = monte_carlo_joint(SimulationConfig<Rational>{n, p, reps, seed++});
            for (const auto& y : enumerate_compositions(n, static_cast<std::uint32_t>(p.k())))
                for (std::uint64_t i = 0; i <= max_inversions(y); ++i) {
                    const double pe = exact.at(y, i).convert_to<double>();
                    const double se = std::sqrt(pe * (1 - pe) / static_cast<double>(reps));
                    EXPECT_LE(std::abs(mc.frequency(y, i) - pe), 4 * se) << y << " i=" << i << " n=" << n;
                }
            for (const auto& [y, counts] : mc.cells) {
                if (mc.conditional_count(y) < 1000) continue;
                const auto [mean, se] = *mc.conditional_mean_i(y);
                EXPECT_LE(std::abs(mean - conditional_expectation_i(y).convert_to<double>()), 3 * se) << y;
            }
            if (n < 2) {
                EXPECT_EQ(mc.h_defined, 0u);
                EXPECT_EQ(mc.h_undefined, reps);
                continue;
            }
            const double h_se = std::sqrt(mc.variance_h / static_cast<double>(mc.h_defined));
            EXPECT_LE(std::abs(mc.mean_h), 3 * h_se) << n;
        }
}
