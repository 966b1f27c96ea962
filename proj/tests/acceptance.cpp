// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "invmult/invmult.hpp"
#include "oracles.hpp"

using namespace invmult;

namespace {

// Time limits in seconds and statistical tolerances in standard errors.
constexpr double kLimitTable = 1.0;
constexpr double kLimitOracle = 60.0;
constexpr double kLimitCoefficientSum = 30.0;
constexpr double kLimitMomentSums = 60.0;
constexpr double kLimitClosedMoments = 60.0;
constexpr double kLimitZeroMass = 60.0;
constexpr double kLimitSupport = 60.0;
constexpr double kLimitDie = 1.0;
constexpr double kLimitEndpoints = 1.0;
constexpr double kLimitMonteCarlo = 60.0;
constexpr double kLimitAsymptotics = 120.0;
constexpr double kCellSe = 4.0;
constexpr double kMeanSe = 3.0;
constexpr std::uint64_t kReplications = 1'000'000;
constexpr std::uint64_t kSeed = 20240611;

struct Verdict {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

int failures = 0;

void criterion(int id, const char* name, double limit, const std::function<void(Verdict&)>& body) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > limit) {
        std::ostringstream os;
        os << "took " << secs << " s, limit " << limit << " s";
        v.fail(os.str());
    }
    if (!v.ok) ++failures;
    std::printf("%s  [%2d] %-34s %8.3f s%s%s\n", v.ok ? "PASS" : "FAIL", id, name, secs, v.detail.empty() ? "" : "  ",
                v.detail.c_str());
    std::fflush(stdout);
}

template <class T>
std::string show(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::vector<Composition> compositions_upto(std::uint32_t n_max, std::uint32_t k_max) {
    std::vector<Composition> out;
    for (std::uint32_t k = 1; k <= k_max; ++k)
        for (std::uint32_t n = 0; n <= n_max; ++n)
            for (auto& y : enumerate_compositions(n, k)) out.push_back(std::move(y));
    return out;
}

// Smallest sum of squares over weak k-compositions of n, by exhaustive descent.
std::uint64_t min_square_sum(std::uint32_t remaining, std::uint32_t slots, std::uint64_t acc, std::uint64_t best,
                             std::vector<std::uint32_t>& cur, std::vector<std::uint32_t>& arg) {
    if (slots == 1) {
        const std::uint64_t total = acc + std::uint64_t(remaining) * remaining;
        if (total < best) {
            cur.push_back(remaining);
            arg = cur;
            cur.pop_back();
            return total;
        }
        return best;
    }
    for (std::uint32_t v = 0; v <= remaining; ++v) {
        cur.push_back(v);
        best = min_square_sum(remaining - v, slots - 1, acc + std::uint64_t(v) * v, best, cur, arg);
        cur.pop_back();
    }
    return best;
}

void table_reproduction(Verdict& v) {
    // Cells transcribed from the published n = k = 3 table, rows in lexicographic order of y.
    const std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::string>>> expected{
        {{0, 0, 3}, {"p3^3", "0", "0", "0"}},
        {{0, 1, 2}, {"p2*p3^2", "p2*p3^2", "p2*p3^2", "0"}},
        {{0, 2, 1}, {"p2^2*p3", "p2^2*p3", "p2^2*p3", "0"}},
        {{0, 3, 0}, {"p2^3", "0", "0", "0"}},
        {{1, 0, 2}, {"p1*p3^2", "p1*p3^2", "p1*p3^2", "0"}},
        {{1, 1, 1}, {"p1*p2*p3", "2*p1*p2*p3", "2*p1*p2*p3", "p1*p2*p3"}},
        {{1, 2, 0}, {"p1*p2^2", "p1*p2^2", "p1*p2^2", "0"}},
        {{2, 0, 1}, {"p1^2*p3", "p1^2*p3", "p1^2*p3", "0"}},
        {{2, 1, 0}, {"p1^2*p2", "p1^2*p2", "p1^2*p2", "0"}},
        {{3, 0, 0}, {"p1^3", "0", "0", "0"}},
    };
    std::ostringstream out, err;
    const int code = cli::run({"invmult", "table", "--n", "3", "--k", "3", "--symbolic", "--format", "json"}, out, err);
    if (code != 0) return v.fail("exit " + std::to_string(code) + ": " + err.str());
    const auto j = nlohmann::json::parse(out.str());
    const auto& rows = j.at("rows");
    if (rows.size() != expected.size()) return v.fail("row count " + std::to_string(rows.size()));
    for (std::size_t r = 0; r < expected.size(); ++r) {
        if (rows[r].at("y").get<std::vector<std::uint32_t>>() != expected[r].first) return v.fail("row order differs");
        if (rows[r].at("cells").get<std::vector<std::string>>() != expected[r].second)
            return v.fail("row " + std::to_string(r) + " differs: " + rows[r].at("cells").dump());
    }
}

void oracle_equivalence(Verdict& v) {
    std::size_t cases = 0;
    for (const auto& y : compositions_upto(8, 4)) {
        ++cases;
        if (gaussian_multinomial(y) != brute_force_inv_distribution(y)) return v.fail("mismatch at " + y.str());
    }
    v.detail = std::to_string(cases) + " compositions";
}

void coefficient_sums(Verdict& v) {
    std::size_t cases = 0;
    for (const auto& y : compositions_upto(10, 5)) {
        ++cases;
        if (gaussian_multinomial(y).coefficient_sum() != oracle::multinomial_by_factorials(y.parts()))
            return v.fail("mismatch at " + y.str());
    }
    v.detail = std::to_string(cases) + " compositions";
}

void moment_sums(Verdict& v) {
    std::size_t cases = 0;
    for (const auto& y : compositions_upto(8, 5)) {
        ++cases;
        const IntPolynomial g = gaussian_multinomial(y);
        BigInt s1 = 0, s2 = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            s1 += BigInt(i) * g[i];
            s2 += BigInt(i) * BigInt(i) * g[i];
        }
        // G'(1) and G''(1) + G'(1) read the same sums off the polynomial.
        const BigInt d1 = g.derivative().evaluate(BigInt(1));
        const BigInt d2 = g.derivative().derivative().evaluate(BigInt(1)) + d1;
        const Rational m1 = moment_sum1(y), m2 = moment_sum2(y);
        if (m1 != Rational(s1) || m1 != Rational(d1)) return v.fail("first sum at " + y.str());
        if (m2 != Rational(s2) || m2 != Rational(d2)) return v.fail("second sum at " + y.str());
        if (y.k() == 2 && moment_sum2_two_categories(y[0], y[1]) != m2) return v.fail("two-category form at " + y.str());
        if (y.k() == 3 && moment_sum2_three_categories(y[0], y[1], y[2]) != m2)
            return v.fail("three-category form at " + y.str());
    }
    v.detail = std::to_string(cases) + " compositions";
}

void closed_form_moments(Verdict& v) {
    std::mt19937_64 rng(kSeed);
    for (int t = 0; t < 20; ++t) {
        const std::uint32_t k = 2 + static_cast<std::uint32_t>(t % 3);
        const ProbVector<Rational> p(oracle::random_rational_probs(k, rng));
        for (std::uint32_t n = 0; n <= 6; ++n) {
            const auto pmf = marginal_i_pmf(n, p);
            Rational e1 = 0, e2 = 0;
            for (std::size_t i = 0; i < pmf.size(); ++i) {
                e1 += Rational(static_cast<std::int64_t>(i)) * pmf[i];
                e2 += Rational(static_cast<std::int64_t>(i * i)) * pmf[i];
            }
            const auto m = moments_of_i(n, p);
            if (m.mean() != e1 || m.second_moment() != e2 || m.variance() != e2 - e1 * e1)
                return v.fail("vector " + std::to_string(t) + ", n=" + std::to_string(n));
        }
    }
    const auto four_words = moments_of_i(2, ProbVector<Rational>::equal(2));
    if (four_words.mean() != Rational(1, 4)) return v.fail("E(I) = " + to_string(four_words.mean()) + " for n=k=2");
}

void zero_mass(Verdict& v) {
    for (std::uint32_t k = 1; k <= 6; ++k)
        for (std::uint32_t n = 0; n <= 12; ++n) {
            const Rational want(binomial(n + k - 1, n), mp::pow(BigInt(k), n));
            if (marginal_i_pmf(n, ProbVector<Rational>::equal(k))[0] != want)
                return v.fail("n=" + std::to_string(n) + ", k=" + std::to_string(k));
        }
}

void support_bound(Verdict& v) {
    std::vector<std::string> broken;
    for (std::uint32_t k = 1; k <= 8; ++k)
        for (std::uint32_t n = 0; n <= 30; ++n) {
            std::vector<std::uint32_t> cur, arg;
            const std::uint64_t squares = min_square_sum(n, k, 0, UINT64_MAX, cur, arg);
            const std::uint64_t true_max = (std::uint64_t(n) * n - squares) / 2;
            if (max_inversions(Composition(arg)) != true_max) return v.fail("max_inversions disagrees at " + Composition(arg).str());
            if (true_max != support_bound_i(n, k))
                broken.push_back("(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ": max " +
                                 std::to_string(true_max) + " vs " + std::to_string(support_bound_i(n, k)) + ")");
        }
    if (!broken.empty()) {
        std::string list;
        for (const auto& b : broken) list += (list.empty() ? "" : " ") + b;
        v.fail("bound not attained at " + list);
    }
}

void die_example(Verdict& v) {
    const Composition y{10, 10, 10, 10, 10, 10};
    if (max_inversions(y) != 1500) return v.fail("max inversions " + std::to_string(max_inversions(y)));
    if (conditional_expectation_i(y) != 750) return v.fail("conditional mean " + to_string(conditional_expectation_i(y)));
}

void h_endpoints(Verdict& v) {
    const std::vector<std::vector<std::uint32_t>> cases{{10, 10, 10, 10, 10, 10}, {2, 2, 2}, {1, 0, 3, 2}, {5, 1}};
    for (const auto& counts : cases) {
        std::vector<std::uint32_t> sorted, reversed;
        const auto k = static_cast<std::uint32_t>(counts.size());
        for (std::uint32_t r = 0; r < k; ++r) {
            sorted.insert(sorted.end(), counts[r], r + 1);
            reversed.insert(reversed.end(), counts[k - 1 - r], k - r);
        }
        if (h_statistic(OutcomeSequence(sorted, k)) != Rational(1)) return v.fail("sorted blocks");
        if (h_statistic(OutcomeSequence(reversed, k)) != Rational(-1)) return v.fail("reversed blocks");
    }
}

void monte_carlo(Verdict& v) {
    const auto p = ProbVector<Rational>::equal(3);
    const auto exact = joint_pmf(3, p);
    const auto mc = monte_carlo_joint(SimulationConfig<Rational>{3, p, kReplications, kSeed});
    const double reps = static_cast<double>(kReplications);
    double worst = 0;
    for (const auto& y : enumerate_compositions(3, 3))
        for (std::uint64_t i = 0; i <= support_bound_i(3, 3); ++i) {
            const double pe = exact.at(y, i).convert_to<double>();
            const double diff = std::abs(mc.frequency(y, i) - pe);
            if (pe == 0) {
                if (diff != 0) return v.fail("mass on impossible cell " + y.str());
                continue;
            }
            const double z = diff / std::sqrt(pe * (1 - pe) / reps);
            worst = std::max(worst, z);
            if (z > kCellSe) return v.fail("cell " + y.str() + " i=" + std::to_string(i) + " off by " + show(z) + " SE");
        }
    const auto cm = mc.conditional_mean_i(Composition{1, 1, 1});
    if (!cm) return v.fail("(1,1,1) never observed");
    const double zc = std::abs(cm->first - 1.5) / cm->second;
    if (zc > kMeanSe) return v.fail("conditional mean off by " + show(zc) + " SE");
    const double zh = std::abs(mc.mean_h) / std::sqrt(mc.variance_h / static_cast<double>(mc.h_defined));
    if (zh > kMeanSe) return v.fail("mean H off by " + show(zh) + " SE");
    std::ostringstream os;
    os << "worst cell " << worst << " SE, (1,1,1) mean " << zc << " SE, H " << zh << " SE";
    v.detail = os.str();
}

void asymptotics(Verdict& v) {
    for (std::uint32_t k = 2; k <= 6; ++k) {
        const auto counts = equal_probability_inversion_counts(40, k);
        for (std::uint32_t n = 0; n <= 40; ++n) {
            const BigInt words = mp::pow(BigInt(k), n);
            std::vector<Rational> pmf;
            for (std::size_t i = 0; i < counts[n].size(); ++i) pmf.emplace_back(counts[n][i], words);
            const auto [mean, var] = pmf_mean_variance(pmf);
            const auto np = normal_params_equal(n, k);
            if (mean != np.mu || var != np.sigma2)
                return v.fail("moments at n=" + std::to_string(n) + ", k=" + std::to_string(k));
        }
    }
    double tv = INFINITY, ks = INFINITY;
    std::ostringstream os;
    for (std::uint32_t n : {10u, 20u, 40u}) {
        const auto r = normal_fit_report(n, 3);
        if (r.degenerate || !(*r.total_variation < tv) || !(*r.kolmogorov < ks))
            return v.fail("no strict decrease at n=" + std::to_string(n));
        tv = *r.total_variation;
        ks = *r.kolmogorov;
        os << (n == 10 ? "" : ", ") << "n=" << n << " TV " << tv << " KS " << ks;
    }
    v.detail = os.str();
}

}  // namespace

int main() {
    criterion(1, "table reproduction", kLimitTable, table_reproduction);
    criterion(2, "enumeration oracle equivalence", kLimitOracle, oracle_equivalence);
    criterion(3, "coefficient sums at q=1", kLimitCoefficientSum, coefficient_sums);
    criterion(4, "weighted coefficient sums", kLimitMomentSums, moment_sums);
    criterion(5, "closed-form moments of I", kLimitClosedMoments, closed_form_moments);
    criterion(6, "P(I=0) formula", kLimitZeroMass, zero_mass);
    criterion(7, "support bound attained", kLimitSupport, support_bound);
    criterion(8, "die example", kLimitDie, die_example);
    criterion(9, "H endpoints", kLimitEndpoints, h_endpoints);
    criterion(10, "Monte Carlo consistency", kLimitMonteCarlo, monte_carlo);
    criterion(11, "equal-probability asymptotics", kLimitAsymptotics, asymptotics);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
