#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "invmult/numeric.hpp"

namespace invmult {

/// Weak k-composition of n: k >= 1 nonnegative parts.
class Composition {
public:
    explicit Composition(std::vector<std::uint32_t> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw InvalidArgument("a composition needs at least one part");
    }

    Composition(std::initializer_list<std::uint32_t> parts) : Composition(std::vector<std::uint32_t>(parts)) {}

    const std::vector<std::uint32_t>& parts() const noexcept { return parts_; }
    std::size_t k() const noexcept { return parts_.size(); }
    std::uint32_t operator[](std::size_t i) const { return parts_.at(i); }

    std::uint64_t n() const noexcept {
        return std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0});
    }

    friend auto operator<=>(const Composition&, const Composition&) = default;
    friend bool operator==(const Composition&, const Composition&) = default;

    /// "(1,1,1)"
    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const Composition& c) { return os << c.str(); }

private:
    std::vector<std::uint32_t> parts_;
};

/// A sequence of trial outcomes, symbols 1..k.
class OutcomeSequence {
public:
    OutcomeSequence(std::vector<std::uint32_t> symbols, std::uint32_t k) : symbols_(std::move(symbols)), k_(k) {
        if (k_ == 0) throw InvalidArgument("number of categories must be at least 1");
        for (auto s : symbols_)
            if (s < 1 || s > k_)
                throw InvalidArgument("symbol " + std::to_string(s) + " outside 1.." + std::to_string(k_));
    }

    /// k is taken as the largest symbol present (1 for the empty sequence).
    explicit OutcomeSequence(std::vector<std::uint32_t> symbols)
        : OutcomeSequence(symbols, largest_symbol(symbols)) {}

    const std::vector<std::uint32_t>& symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    std::uint32_t k() const noexcept { return k_; }

    Composition counts() const {
        std::vector<std::uint32_t> c(k_, 0);
        for (auto s : symbols_) ++c[s - 1];
        return Composition(std::move(c));
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(symbols_[i]);
        }
        return s;
    }

    friend bool operator==(const OutcomeSequence&, const OutcomeSequence&) = default;

private:
    static std::uint32_t largest_symbol(const std::vector<std::uint32_t>& v) {
        std::uint32_t m = 1;
        for (auto s : v) m = std::max(m, s);
        return m;
    }

    std::vector<std::uint32_t> symbols_;
    std::uint32_t k_;
};

/// C(n+k-1, k-1)
inline BigInt composition_count(std::uint64_t n, std::uint64_t k) {
    if (k == 0) throw InvalidArgument("number of categories must be at least 1");
    return binomial(n + k - 1, k - 1);
}

/// All weak k-compositions of n in lexicographic order, (0,..,0,n) first.
inline std::vector<Composition> enumerate_compositions(std::uint32_t n, std::uint32_t k) {
    if (k == 0) throw InvalidArgument("number of categories must be at least 1");
    std::vector<Composition> out;
    out.reserve(composition_count(n, k).convert_to<std::size_t>());
    std::vector<std::uint32_t> parts(k, 0);
    parts[k - 1] = n;
    while (true) {
        out.emplace_back(parts);
        // Next in lex order: bump the rightmost non-final position that still has
        // mass to its right, then push all remaining mass into the last part.
        std::int64_t pos = static_cast<std::int64_t>(k) - 2;
        std::uint32_t rest = parts[k - 1];
        while (pos >= 0 && rest == 0) {
            rest += parts[static_cast<std::size_t>(pos)];
            --pos;
        }
        if (pos < 0) break;
        auto p = static_cast<std::size_t>(pos);
        ++parts[p];
        std::uint32_t used = 0;
        for (std::size_t i = 0; i <= p; ++i) used += parts[i];
        for (std::size_t i = p + 1; i < k; ++i) parts[i] = 0;
        parts[k - 1] = n - used;
    }
    return out;
}

}  // namespace invmult
