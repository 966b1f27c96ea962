#pragma once

// Equal-probability asymptotics of the inversion number I: normal parameters
// and distances between the exact pmf and a continuity-corrected normal.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "invmult/composition.hpp"
#include "invmult/dist.hpp"
#include "invmult/numeric.hpp"

namespace invmult {

/// Default cap on C(n+k-1, k-1) for exact equal-probability pmfs.
inline constexpr std::uint64_t kDefaultCompositionBudget = 5'000'000;

struct NormalParams {
    Rational mu;
    Rational sigma2;
};

/// mu = n(n-1)(k-1)/(4k), sigma^2 = (k-1)(k+1)(n-1)n(2n+5)/(72k^2).
inline NormalParams normal_params_equal(std::uint64_t n, std::uint64_t k) {
    if (k == 0) throw InvalidArgument("number of categories must be at least 1");
    const BigInt bn = n, bk = k;
    NormalParams out;
    out.mu = Rational(bn * (bn - 1) * (bk - 1), 4 * bk);
    out.sigma2 = Rational((bk - 1) * (bk + 1) * (bn - 1) * bn * (2 * bn + 5), 72 * bk * bk);
    return out;
}

/// Mean and variance of a pmf indexed by its support value.
template <class Scalar>
std::pair<Scalar, Scalar> pmf_mean_variance(const std::vector<Scalar>& pmf) {
    Scalar m1(0), m2(0);
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        const Scalar x(static_cast<std::int64_t>(i));
        m1 += x * pmf[i];
        m2 += x * x * pmf[i];
    }
    return {m1, m2 - m1 * m1};
}

/// Exact P(I = i) under p_i = 1/k, over 0..support_bound_i(n, k).
inline std::vector<Rational> equal_probability_pmf(std::uint32_t n, std::uint32_t k,
                                                   std::uint64_t budget = kDefaultCompositionBudget) {
    const BigInt compositions = composition_count(n, k);
    if (compositions > budget)
        throw BudgetExceeded(compositions.str() + " compositions exceed budget " + std::to_string(budget));
    const IntPolynomial counts = equal_probability_inversion_counts(n, k)[n];
    const BigInt words = mp::pow(BigInt(k), n);
    std::vector<Rational> pmf(support_bound_i(n, k) + 1, Rational(0));
    for (std::size_t i = 0; i < counts.size(); ++i) pmf[i] = Rational(counts[i], words);
    return pmf;
}

inline double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

struct LatticePoint {
    std::uint64_t i = 0;
    double pmf = 0.0;
    double normal_mass = 0.0;
};

struct NormalFitReport {
    std::uint32_t n = 0;
    std::uint32_t k = 1;
    NormalParams params;
    Rational exact_mean;
    Rational exact_variance;
    /// sigma^2 == 0: standardisation refused and the distances below stay empty.
    bool degenerate = false;
    std::optional<double> total_variation;
    std::optional<double> kolmogorov;
    std::optional<double> skewness;
    std::optional<double> excess_kurtosis;
    std::vector<LatticePoint> lattice;
    std::string standardization = "(I - mu) / sigma";
    std::string note =
        "a sqrt(n)/binom(n,2) prefactor on (I - mu)/sigma would send the statistic to 0, "
        "so the fit uses (I - mu)/sigma alone";
};

/**
 * Compares the exact equal-probability pmf of I with the normal law of the
 * same mean and variance. Lattice point i receives normal mass
 * Phi((i + 1/2 - mu)/sigma) - Phi((i - 1/2 - mu)/sigma); total variation also
 * counts the normal mass falling outside the lattice.
 */
inline NormalFitReport normal_fit_report(std::uint32_t n, std::uint32_t k,
                                         std::uint64_t budget = kDefaultCompositionBudget) {
    NormalFitReport report;
    report.n = n;
    report.k = k;
    report.params = normal_params_equal(n, k);
    const std::vector<Rational> pmf = equal_probability_pmf(n, k, budget);
    std::tie(report.exact_mean, report.exact_variance) = pmf_mean_variance(pmf);

    const double mu = report.params.mu.convert_to<double>();
    const double sigma = std::sqrt(report.params.sigma2.convert_to<double>());
    report.lattice.reserve(pmf.size());
    for (std::size_t i = 0; i < pmf.size(); ++i) report.lattice.push_back({i, pmf[i].convert_to<double>(), 0.0});

    if (report.params.sigma2 == 0) {
        report.degenerate = true;
        return report;
    }

    auto cdf = [&](double x) { return standard_normal_cdf((x - mu) / sigma); };
    const double last = static_cast<double>(pmf.size() - 1);
    double tv = cdf(-0.5) + (1.0 - cdf(last + 0.5));
    double ks = 0.0, running = 0.0, m3 = 0.0, m4 = 0.0;
    for (auto& pt : report.lattice) {
        const double x = static_cast<double>(pt.i);
        pt.normal_mass = cdf(x + 0.5) - cdf(x - 0.5);
        tv += std::abs(pt.pmf - pt.normal_mass);
        running += pt.pmf;
        ks = std::max(ks, std::abs(running - cdf(x + 0.5)));
    }
    // Central moments about the exact mean.
    const double mean = report.exact_mean.convert_to<double>();
    const double var = report.exact_variance.convert_to<double>();
    for (const auto& pt : report.lattice) {
        const double d = static_cast<double>(pt.i) - mean;
        m3 += pt.pmf * d * d * d;
        m4 += pt.pmf * d * d * d * d;
    }
    report.total_variation = tv / 2.0;
    report.kolmogorov = ks;
    report.skewness = m3 / std::pow(var, 1.5);
    report.excess_kurtosis = m4 / (var * var) - 3.0;
    return report;
}

}  // namespace invmult
