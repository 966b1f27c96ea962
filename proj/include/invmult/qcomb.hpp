#pragma once

// Exact combinatorial kernel: multinomial and q-multinomial coefficients,
// inversion counting, and the exhaustive permutation oracle.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "invmult/composition.hpp"
#include "invmult/numeric.hpp"
#include "invmult/polynomial.hpp"

namespace invmult {

/// Default cap on the number of permutations the brute-force oracle will walk.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// n! / (y_1! ... y_k!)
inline BigInt multinomial_coefficient(const Composition& y) {
    BigInt r = 1;
    std::uint64_t running = 0;
    for (auto part : y.parts()) {
        running += part;
        r *= binomial(running, part);
    }
    return r;
}

/// sum_{i<j} y_i y_j, the degree of the q-multinomial.
inline std::uint64_t max_inversions(const Composition& y) {
    std::uint64_t total = 0;
    std::uint64_t before = 0;
    for (auto part : y.parts()) {
        total += before * part;
        before += part;
    }
    return total;
}

/// [m]_q = 1 + q + ... + q^{m-1}
inline IntPolynomial q_integer(std::uint64_t m) {
    if (m == 0) throw InvalidArgument("q-integer [m]_q requires m >= 1");
    return IntPolynomial(std::vector<BigInt>(m, BigInt(1)));
}

/**
 * Gaussian binomial [n choose j]_q by the q-Pascal recurrence
 * [m, i] = [m-1, i-1] + q^i [m-1, i], keeping only columns 0..j.
 */
inline IntPolynomial q_binomial(std::uint64_t n, std::uint64_t j) {
    if (j > n) return {};
    j = std::min(j, n - j);
    std::vector<IntPolynomial> row(j + 1);
    row[0] = IntPolynomial::constant(1);
    for (std::uint64_t m = 1; m <= n; ++m) {
        for (std::uint64_t i = std::min(m, j); i >= 1; --i) {
            // row[i] currently holds [m-1, i]; row[i-1] holds [m-1, i-1].
            row[i] = row[i - 1] + row[i].shifted(i);
        }
    }
    return row[j];
}

/**
 * Rolling rows of the q-Pascal triangle: after advance() to row m,
 * row()[j] == [m choose j]_q for 0 <= j <= m.
 */
class QPascalRows {
public:
    QPascalRows() : row_{IntPolynomial::constant(1)} {}

    std::uint64_t m() const noexcept { return m_; }
    const std::vector<IntPolynomial>& row() const noexcept { return row_; }

    void advance() {
        ++m_;
        row_.emplace_back(IntPolynomial::constant(1));
        for (std::uint64_t i = m_ - 1; i >= 1; --i) row_[i] = row_[i - 1] + row_[i].shifted(i);
    }

private:
    std::uint64_t m_ = 0;
    std::vector<IntPolynomial> row_;
};

/**
 * q-multinomial coefficient as a product of q-binomials,
 * prod_r [y_1 + ... + y_r choose y_r]_q. All arithmetic stays in nonnegative integers.
 */
inline IntPolynomial gaussian_multinomial(const Composition& y) {
    IntPolynomial acc = IntPolynomial::constant(1);
    std::uint64_t running = 0;
    for (auto part : y.parts()) {
        running += part;
        if (part == 0 || part == running) continue;
        acc *= q_binomial(running, part);
    }
    return acc;
}

/// Number of permutations of {1^{y_1} ... k^{y_k}} with exactly i inversions.
inline BigInt inv_count(const Composition& y, std::uint64_t i) { return gaussian_multinomial(y)[i]; }

/// Pairs a < b with s[a] > s[b], counted with a Fenwick tree over symbol values.
inline std::uint64_t count_inversions(const OutcomeSequence& s) {
    const std::uint32_t k = s.k();
    std::vector<std::uint64_t> tree(k + 1, 0);
    std::uint64_t seen = 0;
    std::uint64_t inversions = 0;
    for (auto symbol : s.symbols()) {
        std::uint64_t not_greater = 0;
        for (std::uint32_t i = symbol; i > 0; i -= i & (~i + 1)) not_greater += tree[i];
        inversions += seen - not_greater;
        for (std::uint32_t i = symbol; i <= k; i += i & (~i + 1)) ++tree[i];
        ++seen;
    }
    return inversions;
}

/**
 * Walks every distinct permutation of the multiset {1^{y_1} ... k^{y_k}} and
 * tallies inversion numbers into a polynomial. Independent of the q-Pascal route.
 */
inline IntPolynomial brute_force_inv_distribution(const Composition& y,
                                                  std::uint64_t budget = kDefaultEnumerationBudget) {
    const BigInt total = multinomial_coefficient(y);
    if (total > budget)
        throw BudgetExceeded("enumeration of " + total.str() + " permutations exceeds budget " +
                             std::to_string(budget));
    std::vector<std::uint32_t> word;
    word.reserve(y.n());
    for (std::uint32_t r = 0; r < y.k(); ++r) word.insert(word.end(), y[r], r + 1);

    std::vector<std::uint64_t> tally(max_inversions(y) + 1, 0);
    const auto k = static_cast<std::uint32_t>(y.k());
    do {
        ++tally[count_inversions(OutcomeSequence(word, k))];
    } while (std::next_permutation(word.begin(), word.end()));

    std::vector<BigInt> coeffs(tally.begin(), tally.end());
    return IntPolynomial(std::move(coeffs));
}

/// f'(1) / f(1), exactly.
inline Rational log_derivative_at_one(const IntPolynomial& f) {
    const BigInt value = f.evaluate(BigInt(1));
    if (value == 0) throw InvalidArgument("polynomial vanishes at q = 1");
    return Rational(f.derivative().evaluate(BigInt(1)), value);
}

/// d/dq (q f'/f) at q = 1, i.e. (f'(1) + f''(1)) / f(1) - (f'(1)/f(1))^2.
inline Rational euler_log_derivative_slope_at_one(const IntPolynomial& f) {
    const BigInt value = f.evaluate(BigInt(1));
    if (value == 0) throw InvalidArgument("polynomial vanishes at q = 1");
    const IntPolynomial d1 = f.derivative();
    const BigInt f1 = d1.evaluate(BigInt(1));
    const BigInt f2 = d1.derivative().evaluate(BigInt(1));
    const Rational ratio(f1, value);
    return Rational(f1 + f2, value) - ratio * ratio;
}

}  // namespace invmult
