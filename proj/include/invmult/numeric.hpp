#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>

namespace invmult {

namespace mp = boost::multiprecision;

using BigInt = mp::mpz_int;
using Rational = mp::mpq_rational;

/// Thrown when a precondition on caller-supplied values does not hold.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation would exceed its configured enumeration budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline BigInt factorial(std::uint64_t n) {
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline std::string to_string(const Rational& r) {
    if (mp::denominator(r) == 1) return mp::numerator(r).str();
    return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Parses "a", "a/b" or "-a/b" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    auto valid_int = [](const std::string& s, bool allow_sign) {
        std::size_t start = (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (s.size() == start) return false;
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw InvalidArgument("not a rational number: '" + text + "'");
    BigInt d(den[0] == '+' ? den.substr(1) : den);
    if (d == 0) throw InvalidArgument("zero denominator in '" + text + "'");
    return Rational(BigInt(num[0] == '+' ? num.substr(1) : num), d);
}

template <class Scalar>
Scalar scalar_from_integer(const BigInt& v) {
    if constexpr (is_exact_v<Scalar>) {
        return Rational(v);
    } else {
        return v.template convert_to<Scalar>();
    }
}

template <class Scalar>
double to_double(const Scalar& v) {
    if constexpr (is_exact_v<Scalar>) {
        return v.template convert_to<double>();
    } else {
        return static_cast<double>(v);
    }
}

}  // namespace invmult
