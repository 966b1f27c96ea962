#pragma once

// Simulation of multinomial experiments and statistics of observed outcome
// sequences.
//
// Random stream: std::mt19937_64 (fully specified by the C++ standard) seeded
// with the 64-bit seed. Each uniform draw is (x >> 11) * 2^-53 from one engine
// output x; the category is the first r with u < p_1 + ... + p_r (half-open
// intervals in index order). A Monte Carlo run draws its replications
// back-to-back from a single engine.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "invmult/composition.hpp"
#include "invmult/dist.hpp"
#include "invmult/numeric.hpp"
#include "invmult/prob_vector.hpp"
#include "invmult/qcomb.hpp"

namespace invmult {

using Engine = std::mt19937_64;

/// H = 1 - 2 I / max_inversions(counts); nullopt when the denominator is 0.
inline std::optional<Rational> h_statistic(const OutcomeSequence& s) {
    const std::uint64_t denom = max_inversions(s.counts());
    if (denom == 0) return std::nullopt;
    return Rational(1) - Rational(2 * count_inversions(s), denom);
}

struct ExperimentResult {
    OutcomeSequence sequence;
    Composition counts;
    std::uint64_t inversions = 0;
    std::optional<Rational> h;
};

namespace detail {

inline double uniform01(Engine& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

class CategorySampler {
public:
    explicit CategorySampler(const std::vector<double>& probs) {
        double c = 0.0;
        for (std::size_t r = 0; r < probs.size(); ++r) {
            c += probs[r];
            cumulative_.push_back(c);
            if (probs[r] > 0.0) last_positive_ = static_cast<std::uint32_t>(r);
        }
    }

    /// 0-based category.
    std::uint32_t operator()(Engine& engine) const {
        const double u = uniform01(engine);
        for (std::size_t r = 0; r < cumulative_.size(); ++r)
            if (u < cumulative_[r]) return static_cast<std::uint32_t>(r);
        return last_positive_;
    }

private:
    std::vector<double> cumulative_;
    std::uint32_t last_positive_ = 0;
};

}  // namespace detail

template <class Scalar>
ExperimentResult simulate_experiment(std::uint32_t n, const ProbVector<Scalar>& p, std::uint64_t seed) {
    Engine engine(seed);
    const detail::CategorySampler sample(p.as_double());
    std::vector<std::uint32_t> symbols(n);
    for (auto& s : symbols) s = sample(engine) + 1;
    OutcomeSequence seq(std::move(symbols), static_cast<std::uint32_t>(p.k()));
    Composition counts = seq.counts();
    const std::uint64_t inv = count_inversions(seq);
    auto h = h_statistic(seq);
    return ExperimentResult{std::move(seq), std::move(counts), inv, std::move(h)};
}

template <class Scalar>
struct SimulationConfig {
    std::uint32_t n = 0;
    ProbVector<Scalar> p;
    std::uint64_t replications = 1;
    std::uint64_t seed = 0;
};

/// Tallies of a Monte Carlo run over (counts, inversions) cells.
struct MonteCarloSummary {
    std::uint32_t n = 0;
    std::uint32_t k = 1;
    std::uint64_t replications = 0;
    std::map<Composition, std::vector<std::uint64_t>> cells;
    double mean_i = 0.0;
    double variance_i = 0.0;
    /// Mean and sample variance of H over replications where H is defined.
    double mean_h = 0.0;
    double variance_h = 0.0;
    std::uint64_t h_defined = 0;
    std::uint64_t h_undefined = 0;

    std::uint64_t count(const Composition& y, std::uint64_t i) const {
        auto it = cells.find(y);
        if (it == cells.end() || i >= it->second.size()) return 0;
        return it->second[i];
    }

    double frequency(const Composition& y, std::uint64_t i) const {
        return static_cast<double>(count(y, i)) / static_cast<double>(replications);
    }

    std::uint64_t conditional_count(const Composition& y) const {
        std::uint64_t c = 0;
        if (auto it = cells.find(y); it != cells.end())
            for (auto v : it->second) c += v;
        return c;
    }

    /// Empirical E(I | Y = y) and the standard error of that mean; nullopt without samples.
    std::optional<std::pair<double, double>> conditional_mean_i(const Composition& y) const {
        auto it = cells.find(y);
        if (it == cells.end()) return std::nullopt;
        double c = 0, s = 0, s2 = 0;
        for (std::size_t i = 0; i < it->second.size(); ++i) {
            const auto v = static_cast<double>(it->second[i]);
            c += v;
            s += v * static_cast<double>(i);
            s2 += v * static_cast<double>(i) * static_cast<double>(i);
        }
        if (c == 0) return std::nullopt;
        const double mean = s / c;
        const double var = c > 1 ? (s2 - c * mean * mean) / (c - 1) : 0.0;
        return std::make_pair(mean, std::sqrt(std::max(var, 0.0) / c));
    }

    /// Empirical joint pmf over observed cells.
    JointPmf<double> empirical_joint() const {
        JointPmf<double> out;
        out.n = n;
        out.k = k;
        for (const auto& [y, r] : cells) {
            std::vector<double> row(r.size());
            for (std::size_t i = 0; i < r.size(); ++i)
                row[i] = static_cast<double>(r[i]) / static_cast<double>(replications);
            out.rows.emplace(y, std::move(row));
        }
        return out;
    }
};

/// Runs cfg.replications experiments; `observe` sees every simulated sequence in order.
template <class Scalar, class Observer>
MonteCarloSummary monte_carlo_joint(const SimulationConfig<Scalar>& cfg, Observer&& observe) {
    if (cfg.replications == 0) throw InvalidArgument("replications must be at least 1");
    const auto k = static_cast<std::uint32_t>(cfg.p.k());
    MonteCarloSummary out;
    out.n = cfg.n;
    out.k = k;
    out.replications = cfg.replications;

    Engine engine(cfg.seed);
    const detail::CategorySampler sample(cfg.p.as_double());
    std::vector<std::uint32_t> symbols(cfg.n);
    long double sum_i = 0, sum_i2 = 0, sum_h = 0, sum_h2 = 0;
    for (std::uint64_t rep = 0; rep < cfg.replications; ++rep) {
        for (auto& s : symbols) s = sample(engine) + 1;
        const OutcomeSequence seq(symbols, k);
        observe(seq);
        Composition y = seq.counts();
        const std::uint64_t inv = count_inversions(seq);
        const std::uint64_t max_inv = max_inversions(y);
        auto [it, inserted] = out.cells.try_emplace(std::move(y));
        if (inserted) it->second.assign(max_inv + 1, 0);
        ++it->second[inv];
        sum_i += inv;
        sum_i2 += static_cast<long double>(inv) * inv;
        if (max_inv == 0) {
            ++out.h_undefined;
        } else {
            const long double h = 1.0L - 2.0L * inv / max_inv;
            ++out.h_defined;
            sum_h += h;
            sum_h2 += h * h;
        }
    }
    const auto reps = static_cast<long double>(cfg.replications);
    out.mean_i = static_cast<double>(sum_i / reps);
    out.variance_i = cfg.replications > 1 ? static_cast<double>((sum_i2 - reps * out.mean_i * out.mean_i) / (reps - 1)) : 0.0;
    if (out.h_defined > 0) {
        const auto d = static_cast<long double>(out.h_defined);
        out.mean_h = static_cast<double>(sum_h / d);
        out.variance_h = out.h_defined > 1 ? static_cast<double>((sum_h2 - d * out.mean_h * out.mean_h) / (d - 1)) : 0.0;
    }
    return out;
}

template <class Scalar>
MonteCarloSummary monte_carlo_joint(const SimulationConfig<Scalar>& cfg) {
    return monte_carlo_joint(cfg, [](const OutcomeSequence&) {});
}

}  // namespace invmult
