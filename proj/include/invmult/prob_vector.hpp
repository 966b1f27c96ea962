#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "invmult/numeric.hpp"

namespace invmult {

/**
 * Category probabilities p_1..p_k. The scalar type fixes the numeric mode:
 * ProbVector<Rational> is exact (sum must be exactly 1), ProbVector<double>
 * is floating (sum within 1e-12 of 1). Zero entries are allowed.
 */
template <class Scalar>
class ProbVector {
public:
    static constexpr double kFloatingSumTolerance = 1e-12;

    explicit ProbVector(std::vector<Scalar> probs) : probs_(std::move(probs)) {
        if (probs_.empty()) throw InvalidArgument("probability vector must have at least one entry");
        Scalar sum(0);
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            const Scalar& p = probs_[i];
            if constexpr (!is_exact_v<Scalar>) {
                if (!std::isfinite(p)) throw InvalidArgument("p" + std::to_string(i + 1) + " is not finite");
            }
            if (p < 0 || p > 1)
                throw InvalidArgument("p" + std::to_string(i + 1) + " outside [0, 1]");
            sum += p;
        }
        if constexpr (is_exact_v<Scalar>) {
            if (sum != 1) throw InvalidArgument("probabilities sum to " + to_string(sum) + ", not 1");
        } else {
            if (std::abs(sum - 1.0) > kFloatingSumTolerance)
                throw InvalidArgument("probabilities sum to " + std::to_string(sum) + ", not 1");
        }
    }

    /// p_i = 1/k for every category.
    static ProbVector equal(std::uint32_t k) {
        if (k == 0) throw InvalidArgument("number of categories must be at least 1");
        if constexpr (is_exact_v<Scalar>) {
            return ProbVector(std::vector<Scalar>(k, Rational(1, k)));
        } else {
            std::vector<Scalar> v(k, Scalar(1) / Scalar(k));
            // Absorb rounding so the sum check holds for any k.
            Scalar rest(1);
            for (std::uint32_t i = 0; i + 1 < k; ++i) rest -= v[i];
            v.back() = rest;
            return ProbVector(std::move(v));
        }
    }

    std::size_t k() const noexcept { return probs_.size(); }
    const Scalar& operator[](std::size_t i) const { return probs_.at(i); }
    const std::vector<Scalar>& values() const noexcept { return probs_; }

    std::vector<double> as_double() const {
        std::vector<double> out;
        out.reserve(probs_.size());
        for (const auto& p : probs_) out.push_back(to_double(p));
        return out;
    }

private:
    std::vector<Scalar> probs_;
};

template <class Scalar>
Scalar ipow(Scalar base, std::uint64_t exp) {
    Scalar result(1);
    while (exp) {
        if (exp & 1) result *= base;
        exp >>= 1;
        if (exp) base *= base;
    }
    return result;
}

}  // namespace invmult
