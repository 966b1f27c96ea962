#pragma once

// Joint distribution of the count vector Y and the inversion number I of a
// multinomial experiment, with its marginals, conditionals and moments.
// Every routine is templated on the scalar: Rational for exact results,
// double for floating-point evaluation.

#include <cassert>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "invmult/composition.hpp"
#include "invmult/numeric.hpp"
#include "invmult/polynomial.hpp"
#include "invmult/prob_vector.hpp"
#include "invmult/qcomb.hpp"

namespace invmult {

/// floor((k-1) n^2 / (2k)): upper end of the tabulated support of I.
inline std::uint64_t support_bound_i(std::uint64_t n, std::uint64_t k) {
    if (k == 0) throw InvalidArgument("number of categories must be at least 1");
    return (k - 1) * n * n / (2 * k);
}

/**
 * P(Y = y, I = i) over the support. rows[y][i] is the probability of count
 * vector y with i inversions, for 0 <= i <= max_inversions(y). Rows with zero
 * mass (a positive count in a zero-probability category) are omitted.
 */
template <class Scalar>
struct JointPmf {
    std::uint32_t n = 0;
    std::uint32_t k = 1;
    std::map<Composition, std::vector<Scalar>> rows;

    static constexpr bool exact = is_exact_v<Scalar>;

    Scalar at(const Composition& y, std::uint64_t i) const {
        auto it = rows.find(y);
        if (it == rows.end() || i >= it->second.size()) return Scalar(0);
        return it->second[i];
    }

    std::size_t entry_count() const {
        std::size_t c = 0;
        for (const auto& [y, r] : rows) c += r.size();
        return c;
    }

    Scalar total_mass() const {
        Scalar s(0);
        for (const auto& [y, r] : rows)
            for (const auto& v : r) s += v;
        return s;
    }

    /// Sum over i for one count vector, i.e. P(Y = y).
    Scalar row_mass(const Composition& y) const {
        Scalar s(0);
        if (auto it = rows.find(y); it != rows.end())
            for (const auto& v : it->second) s += v;
        return s;
    }

    /// Sum over y, indexed by i up to support_bound_i(n, k).
    std::vector<Scalar> marginal_i() const {
        std::vector<Scalar> out(support_bound_i(n, k) + 1, Scalar(0));
        for (const auto& [y, r] : rows)
            for (std::size_t i = 0; i < r.size(); ++i) out[i] += r[i];
        return out;
    }
};

template <class Scalar>
JointPmf<Scalar> joint_pmf(std::uint32_t n, const ProbVector<Scalar>& p) {
    JointPmf<Scalar> out;
    out.n = n;
    out.k = static_cast<std::uint32_t>(p.k());
    for (auto& y : enumerate_compositions(n, out.k)) {
        Scalar weight(1);
        for (std::size_t r = 0; r < y.k(); ++r) weight *= ipow(p[r], y[r]);
        if (weight == 0) continue;
        const IntPolynomial gf = gaussian_multinomial(y);
        std::vector<Scalar> row;
        row.reserve(gf.size());
        for (const auto& c : gf.coefficients()) row.push_back(scalar_from_integer<Scalar>(c) * weight);
        out.rows.emplace(std::move(y), std::move(row));
    }
    return out;
}

namespace detail {

/**
 * For m = 0..n_max, the polynomial sum_y [m; y]_q * prod_r w_r^{y_r} over weak
 * k-compositions y of m. Peels off the last category: [m; y]_q equals
 * [m choose y_k]_q [m - y_k; y_1..y_{k-1}]_q, so each category costs one
 * q-binomial convolution per (m, y_k) instead of one term per composition.
 */
template <class Coeff>
std::vector<Polynomial<Coeff>> weighted_inversion_series(std::uint32_t n_max, const std::vector<Coeff>& weights) {
    const std::size_t k = weights.size();
    // level[r][m]: sum over compositions of m into the first r+1 categories.
    std::vector<std::vector<Polynomial<Coeff>>> level(k, std::vector<Polynomial<Coeff>>(n_max + 1));
    std::vector<std::vector<Coeff>> powers(k, std::vector<Coeff>(n_max + 1, Coeff(1)));
    for (std::size_t r = 0; r < k; ++r)
        for (std::uint32_t j = 1; j <= n_max; ++j) powers[r][j] = powers[r][j - 1] * weights[r];

    QPascalRows pascal;
    for (std::uint32_t m = 0; m <= n_max; ++m) {
        if (m > 0) pascal.advance();
        std::vector<Polynomial<Coeff>> qb;
        qb.reserve(m + 1);
        for (const auto& poly : pascal.row()) {
            std::vector<Coeff> c;
            c.reserve(poly.size());
            for (const auto& v : poly.coefficients()) c.push_back(scalar_from_integer<Coeff>(v));
            qb.emplace_back(std::move(c));
        }
        level[0][m] = Polynomial<Coeff>::constant(powers[0][m]);
        for (std::size_t r = 1; r < k; ++r) {
            Polynomial<Coeff> acc;
            for (std::uint32_t j = 0; j <= m; ++j) {
                if (powers[r][j] == 0 || level[r - 1][m - j].is_zero()) continue;
                acc += (qb[j] * level[r - 1][m - j]).scaled(powers[r][j]);
            }
            level[r][m] = std::move(acc);
        }
    }
    return std::move(level[k - 1]);
}

}  // namespace detail

/**
 * P(I = i) for i = 0..support_bound_i(n, k); index equals inversion count.
 * Agrees with summing the joint pmf over compositions.
 */
template <class Scalar>
std::vector<Scalar> marginal_i_pmf(std::uint32_t n, const ProbVector<Scalar>& p) {
    const auto k = static_cast<std::uint32_t>(p.k());
    const auto series = detail::weighted_inversion_series<Scalar>(n, p.values());
    const auto& poly = series[n];
    const std::uint64_t bound = support_bound_i(n, k);
    assert(poly.degree() <= static_cast<std::int64_t>(bound) && "mass above the support bound");
    std::vector<Scalar> out(bound + 1, Scalar(0));
    for (std::size_t i = 0; i < poly.size() && i <= bound; ++i) out[i] = poly[i];
    return out;
}

/**
 * Word counts by inversion number under equal probabilities: entry n is
 * sum_y [n; y]_q, whose q^i coefficient is the number of the k^n words
 * with exactly i inversions. Computed for every n up to n_max at once.
 */
inline std::vector<IntPolynomial> equal_probability_inversion_counts(std::uint32_t n_max, std::uint32_t k) {
    if (k == 0) throw InvalidArgument("number of categories must be at least 1");
    return detail::weighted_inversion_series<BigInt>(n_max, std::vector<BigInt>(k, BigInt(1)));
}

/// P(I = i | Y = y) = inv(y; i) / multinomial(y), for 0 <= i <= max_inversions(y).
inline std::vector<Rational> conditional_pmf_i_given_y(const Composition& y) {
    const BigInt total = multinomial_coefficient(y);
    const IntPolynomial gf = gaussian_multinomial(y);
    std::vector<Rational> out;
    out.reserve(gf.size());
    for (const auto& c : gf.coefficients()) out.emplace_back(c, total);
    return out;
}

/// E(I | Y = y) = (1/2) sum_{i<j} y_i y_j
inline Rational conditional_expectation_i(const Composition& y) { return Rational(max_inversions(y), 2); }

/// sum_i i * inv(y; i), closed form.
inline Rational moment_sum1(const Composition& y) {
    return Rational(multinomial_coefficient(y) * max_inversions(y), 2);
}

/// sum_i i^2 * inv(y; i) from the nine-multisum closed form, valid for any k.
inline Rational moment_sum2(const Composition& y) {
    const std::size_t k = y.k();
    std::vector<BigInt> v;
    v.reserve(k);
    for (auto part : y.parts()) v.emplace_back(part);

    BigInt pair = 0, sq_lin = 0, lin_sq = 0, sq_sq = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            pair += v[i] * v[j];
            sq_lin += v[i] * v[i] * v[j];
            lin_sq += v[i] * v[j] * v[j];
            sq_sq += v[i] * v[i] * v[j] * v[j];
        }

    BigInt triple = 0, triple_h = 0, triple_i = 0, triple_j = 0;
    for (std::size_t h = 0; h < k; ++h)
        for (std::size_t i = h + 1; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                const BigInt t = v[h] * v[i] * v[j];
                triple += t;
                triple_h += t * v[h];
                triple_i += t * v[i];
                triple_j += t * v[j];
            }

    BigInt quad = 0;
    for (std::size_t g = 0; g < k; ++g)
        for (std::size_t h = g + 1; h < k; ++h)
            for (std::size_t i = h + 1; i < k; ++i)
                for (std::size_t j = i + 1; j < k; ++j) quad += v[g] * v[h] * v[i] * v[j];

    const Rational bracket = Rational(pair, 12) + Rational(sq_lin, 12) + Rational(lin_sq, 12) +
                             Rational(sq_sq, 4) + Rational(triple, 6) + Rational(triple_h, 2) +
                             Rational(triple_i, 2) + Rational(triple_j, 2) + Rational(3 * quad, 2);
    return Rational(multinomial_coefficient(y)) * bracket;
}

/// Two-category specialisation of moment_sum2.
inline Rational moment_sum2_two_categories(std::uint32_t y1, std::uint32_t y2) {
    const BigInt a = y1, b = y2;
    const BigInt m = multinomial_coefficient(Composition{y1, y2});
    return Rational(m) * (Rational(a * b + a * a * b + a * b * b, 12) + Rational(a * a * b * b, 4));
}

/// Three-category specialisation of moment_sum2.
inline Rational moment_sum2_three_categories(std::uint32_t y1, std::uint32_t y2, std::uint32_t y3) {
    const BigInt a = y1, b = y2, c = y3;
    const BigInt m = multinomial_coefficient(Composition{y1, y2, y3});
    const BigInt pairs = a * b + a * c + b * c;
    const BigInt sq_lin = a * a * b + a * a * c + b * b * c;
    const BigInt lin_sq = a * b * b + a * c * c + b * c * c;
    const BigInt sq_sq = a * a * b * b + a * a * c * c + b * b * c * c;
    return Rational(m) * (Rational(pairs + sq_lin + lin_sq, 12) + Rational(sq_sq, 4) + Rational(a * b * c, 6) +
                          Rational(a * a * b * c + a * b * b * c + a * b * c * c, 2));
}

/// E(I), E(I^2), V(I). Construction checks V(I) == E(I^2) - E(I)^2.
template <class Scalar>
class MomentReport {
public:
    MomentReport(Scalar e_i, Scalar e_i2, Scalar v_i)
        : e_i_(std::move(e_i)), e_i2_(std::move(e_i2)), v_i_(std::move(v_i)) {
        const Scalar implied = e_i2_ - e_i_ * e_i_;
        if constexpr (is_exact_v<Scalar>) {
            if (implied != v_i_) throw std::logic_error("variance closed form disagrees with E(I^2) - E(I)^2");
        } else {
            const double scale = std::max(1.0, std::abs(static_cast<double>(e_i2_)));
            if (std::abs(static_cast<double>(implied - v_i_)) > 1e-9 * scale)
                throw std::logic_error("variance closed form disagrees with E(I^2) - E(I)^2");
        }
    }

    const Scalar& mean() const noexcept { return e_i_; }
    const Scalar& second_moment() const noexcept { return e_i2_; }
    const Scalar& variance() const noexcept { return v_i_; }

private:
    Scalar e_i_;
    Scalar e_i2_;
    Scalar v_i_;
};

/// Raw moments and variance of I in closed form (sums over ordered index tuples).
template <class Scalar>
MomentReport<Scalar> moments_of_i(std::uint32_t n, const ProbVector<Scalar>& prob) {
    const auto& p = prob.values();
    const std::size_t k = p.size();

    Scalar pair(0), sq_lin(0), sq_sq(0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            pair += p[i] * p[j];
            sq_lin += p[i] * p[i] * p[j] + p[i] * p[j] * p[j];
            sq_sq += p[i] * p[i] * p[j] * p[j];
        }
    Scalar triple(0), triple_sq(0);
    for (std::size_t h = 0; h < k; ++h)
        for (std::size_t i = h + 1; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                const Scalar t = p[h] * p[i] * p[j];
                triple += t;
                triple_sq += t * (p[h] + p[i] + p[j]);
            }
    Scalar quad(0);
    for (std::size_t g = 0; g < k; ++g)
        for (std::size_t h = g + 1; h < k; ++h)
            for (std::size_t i = h + 1; i < k; ++i)
                for (std::size_t j = i + 1; j < k; ++j) quad += p[g] * p[h] * p[i] * p[j];

    const Scalar c2 = scalar_from_integer<Scalar>(binomial(n, 2));
    const Scalar c3 = scalar_from_integer<Scalar>(binomial(n, 3));
    const Scalar c4 = scalar_from_integer<Scalar>(binomial(n, 4));
    const Scalar lag = c2 * Scalar(2 * static_cast<std::int64_t>(n) - 3);

    Scalar mean = c2 * pair;
    Scalar second = c2 * pair + Scalar(2) * c3 * sq_lin + Scalar(6) * c4 * sq_sq + Scalar(10) * c3 * triple +
                    Scalar(36) * c4 * quad + Scalar(12) * c4 * triple_sq;
    Scalar variance = c2 * pair + Scalar(2) * c3 * sq_lin - lag * sq_sq + Scalar(10) * c3 * triple -
                      Scalar(6) * lag * quad - Scalar(2) * lag * triple_sq;
    return MomentReport<Scalar>(std::move(mean), std::move(second), std::move(variance));
}

/**
 * Joint pmf of one category count Y_j and I:
 * rows[y_j][i] = inv(y_j, n - y_j; i) p_j^{y_j} (1 - p_j)^{n - y_j}.
 */
template <class Scalar>
struct CategoryJointPmf {
    std::uint32_t n = 0;
    std::uint32_t j = 1;
    std::vector<std::vector<Scalar>> rows;

    Scalar at(std::uint32_t yj, std::uint64_t i) const {
        if (yj >= rows.size() || i >= rows[yj].size()) return Scalar(0);
        return rows[yj][i];
    }

    Scalar total_mass() const {
        Scalar s(0);
        for (const auto& r : rows)
            for (const auto& v : r) s += v;
        return s;
    }
};

/// j is 1-based.
template <class Scalar>
CategoryJointPmf<Scalar> joint_pmf_yj_i(std::uint32_t n, std::uint32_t j, const ProbVector<Scalar>& p) {
    if (j < 1 || j > p.k()) throw InvalidArgument("category index j must lie in 1..k");
    CategoryJointPmf<Scalar> out;
    out.n = n;
    out.j = j;
    const Scalar pj = p[j - 1];
    const Scalar rest = Scalar(1) - pj;
    out.rows.resize(n + 1);
    for (std::uint32_t yj = 0; yj <= n; ++yj) {
        const Scalar weight = ipow(pj, yj) * ipow(rest, n - yj);
        const IntPolynomial gf = q_binomial(n, yj);
        auto& row = out.rows[yj];
        row.reserve(gf.size());
        for (const auto& c : gf.coefficients()) row.push_back(scalar_from_integer<Scalar>(c) * weight);
    }
    return out;
}

}  // namespace invmult
