#pragma once

// Joint (Y, I) tables laid out with one row per composition and one column
// per inversion count 0..support_bound_i(n, k).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "invmult/composition.hpp"
#include "invmult/dist.hpp"
#include "invmult/qcomb.hpp"

namespace invmult {

/// "2*p1*p2*p3", "p2*p3^2": coefficient omitted when 1, exponent omitted when 1.
inline std::string monomial_string(const BigInt& coefficient, const Composition& y) {
    if (coefficient == 0) return "0";
    std::string out;
    if (coefficient != 1) out = coefficient.str();
    for (std::size_t r = 0; r < y.k(); ++r) {
        if (y[r] == 0) continue;
        if (!out.empty()) out += "*";
        out += "p" + std::to_string(r + 1);
        if (y[r] > 1) out += "^" + std::to_string(y[r]);
    }
    return out.empty() ? "1" : out;
}

using TableRows = std::map<Composition, std::vector<std::string>>;

/// Cells are probability monomials in p1..pk; "0" past a row's last inversion count.
inline TableRows symbolic_joint_table(std::uint32_t n, std::uint32_t k) {
    const std::uint64_t columns = support_bound_i(n, k) + 1;
    TableRows rows;
    for (auto& y : enumerate_compositions(n, k)) {
        const IntPolynomial gf = gaussian_multinomial(y);
        std::vector<std::string> cells(columns, "0");
        for (std::size_t i = 0; i < gf.size(); ++i) cells[i] = monomial_string(gf[i], y);
        rows.emplace(std::move(y), std::move(cells));
    }
    return rows;
}

/// Numeric cells from a joint pmf; every composition gets a row, zero mass included.
template <class Scalar, class Format>
TableRows numeric_joint_table(const JointPmf<Scalar>& pmf, Format&& format) {
    const std::uint64_t columns = support_bound_i(pmf.n, pmf.k) + 1;
    TableRows rows;
    for (auto& y : enumerate_compositions(pmf.n, pmf.k)) {
        std::vector<std::string> cells(columns);
        for (std::uint64_t i = 0; i < columns; ++i) cells[i] = format(pmf.at(y, i));
        rows.emplace(std::move(y), std::move(cells));
    }
    return rows;
}

}  // namespace invmult
