#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "invmult/numeric.hpp"

namespace invmult {

/**
 * Dense univariate polynomial in q.
 *
 * Coefficient i multiplies q^i. The stored vector never ends in a zero
 * coefficient; the zero polynomial is the empty vector.
 */
template <class Coeff>
class Polynomial {
public:
    using coefficient_type = Coeff;

    Polynomial() = default;

    explicit Polynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    Polynomial(std::initializer_list<Coeff> coeffs) : coeffs_(coeffs) { trim(); }

    static Polynomial constant(Coeff c) { return Polynomial(std::vector<Coeff>{std::move(c)}); }

    /// q^power
    static Polynomial monomial(std::size_t power, Coeff c = Coeff(1)) {
        std::vector<Coeff> v(power + 1, Coeff(0));
        v[power] = std::move(c);
        return Polynomial(std::move(v));
    }

    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// Degree, or -1 for the zero polynomial.
    std::int64_t degree() const noexcept { return static_cast<std::int64_t>(coeffs_.size()) - 1; }

    std::size_t size() const noexcept { return coeffs_.size(); }

    const std::vector<Coeff>& coefficients() const noexcept { return coeffs_; }

    /// Coefficient of q^i; zero past the degree.
    Coeff operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Coeff(0); }

    Polynomial& operator+=(const Polynomial& rhs) {
        if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Coeff(0));
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
        trim();
        return *this;
    }

    /// this += q^shift * rhs * scale, without materialising the temporary.
    Polynomial& add_scaled_shifted(const Polynomial& rhs, std::size_t shift, const Coeff& scale) {
        if (rhs.is_zero()) return *this;
        if (rhs.coeffs_.size() + shift > coeffs_.size())
            coeffs_.resize(rhs.coeffs_.size() + shift, Coeff(0));
        for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i + shift] += rhs.coeffs_[i] * scale;
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Coeff> out(a.coeffs_.size() + b.coeffs_.size() - 1, Coeff(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Polynomial(std::move(out));
    }

    Polynomial& operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

    /// Multiplication by q^shift.
    Polynomial shifted(std::size_t shift) const {
        if (is_zero()) return {};
        std::vector<Coeff> v(shift, Coeff(0));
        v.insert(v.end(), coeffs_.begin(), coeffs_.end());
        return Polynomial(std::move(v));
    }

    Polynomial scaled(const Coeff& c) const {
        std::vector<Coeff> v = coeffs_;
        for (auto& x : v) x *= c;
        return Polynomial(std::move(v));
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Coeff> v(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * Coeff(i);
        return Polynomial(std::move(v));
    }

    /// q * d/dq; the i-th coefficient becomes i * c_i.
    Polynomial euler_derivative() const {
        std::vector<Coeff> v = coeffs_;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] *= Coeff(i);
        return Polynomial(std::move(v));
    }

    /// Horner evaluation in the value type T.
    template <class T>
    T evaluate(const T& x) const {
        T acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + T(*it);
        return acc;
    }

    Coeff coefficient_sum() const {
        Coeff s(0);
        for (const auto& c : coeffs_) s += c;
        return s;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
            if (p.coeffs_[i] == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (i == 0 || p.coeffs_[i] != 1) os << p.coeffs_[i];
            if (i > 0) os << (p.coeffs_[i] != 1 ? "*q" : "q");
            if (i > 1) os << "^" << i;
        }
        return os;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Coeff> coeffs_;
};

using IntPolynomial = Polynomial<BigInt>;

}  // namespace invmult
