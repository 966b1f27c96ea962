#pragma once

// JSON and CSV renderings. Exact rationals travel as {"num": "...", "den": "..."}
// string pairs so nothing is lost; floating values are plain JSON numbers.

#include <cstdint>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "invmult/asymp.hpp"
#include "invmult/composition.hpp"
#include "invmult/dist.hpp"
#include "invmult/numeric.hpp"
#include "invmult/prob_vector.hpp"
#include "invmult/stats.hpp"

namespace invmult::io {

using nlohmann::json;

template <class Scalar>
constexpr const char* mode_name() {
    return is_exact_v<Scalar> ? "rational" : "floating";
}

inline json rational_to_json(const Rational& r) {
    return json{{"num", mp::numerator(r).str()}, {"den", mp::denominator(r).str()}};
}

inline Rational rational_from_json(const json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw InvalidArgument("expected {\"num\": ..., \"den\": ...}");
    return parse_rational(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
}

template <class Scalar>
json scalar_to_json(const Scalar& v) {
    if constexpr (is_exact_v<Scalar>) {
        return rational_to_json(v);
    } else {
        return json(static_cast<double>(v));
    }
}

template <class Scalar>
Scalar scalar_from_json(const json& j) {
    if constexpr (is_exact_v<Scalar>) {
        return rational_from_json(j);
    } else {
        return j.get<double>();
    }
}

template <class Scalar>
json scalars_to_json(const std::vector<Scalar>& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(scalar_to_json(x));
    return arr;
}

template <class Scalar>
std::vector<Scalar> scalars_from_json(const json& arr) {
    std::vector<Scalar> out;
    out.reserve(arr.size());
    for (const auto& x : arr) out.push_back(scalar_from_json<Scalar>(x));
    return out;
}

/// Decimal rendering with `precision` significant digits.
inline std::string format_double(double v, int precision) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

/// Exact values as "a/b", floating values with `precision` significant digits.
template <class Scalar>
std::string format_scalar(const Scalar& v, int precision) {
    if constexpr (is_exact_v<Scalar>) {
        return to_string(v);
    } else {
        return format_double(v, precision);
    }
}

// Marginal pmf of I.

template <class Scalar>
json marginal_pmf_to_json(std::uint32_t n, const ProbVector<Scalar>& p, const std::vector<Scalar>& pmf) {
    return json{{"n", n},
                {"k", p.k()},
                {"mode", mode_name<Scalar>()},
                {"p", scalars_to_json(p.values())},
                {"pmf", scalars_to_json(pmf)}};
}

template <class Scalar>
std::vector<Scalar> marginal_pmf_from_json(const json& j) {
    return scalars_from_json<Scalar>(j.at("pmf"));
}

// Joint pmf of (Y, I).

inline json composition_to_json(const Composition& y) { return json(y.parts()); }

template <class Scalar>
json joint_pmf_to_json(const JointPmf<Scalar>& pmf) {
    json rows = json::array();
    for (const auto& [y, probs] : pmf.rows) rows.push_back(json{{"y", composition_to_json(y)}, {"probs", scalars_to_json(probs)}});
    return json{{"n", pmf.n}, {"k", pmf.k}, {"mode", mode_name<Scalar>()}, {"rows", std::move(rows)}};
}

template <class Scalar>
JointPmf<Scalar> joint_pmf_from_json(const json& j) {
    if (j.at("mode").get<std::string>() != mode_name<Scalar>())
        throw InvalidArgument("joint pmf mode mismatch");
    JointPmf<Scalar> out;
    out.n = j.at("n").get<std::uint32_t>();
    out.k = j.at("k").get<std::uint32_t>();
    for (const auto& row : j.at("rows"))
        out.rows.emplace(Composition(row.at("y").get<std::vector<std::uint32_t>>()),
                         scalars_from_json<Scalar>(row.at("probs")));
    return out;
}

/// Long format, one line per (y, i): y parts joined by ';'.
template <class Scalar>
std::string joint_pmf_to_csv(const JointPmf<Scalar>& pmf, int precision) {
    std::ostringstream os;
    os << "y,i,probability\n";
    for (const auto& [y, probs] : pmf.rows) {
        std::string key;
        for (std::size_t r = 0; r < y.k(); ++r) key += (r ? ";" : "") + std::to_string(y[r]);
        for (std::size_t i = 0; i < probs.size(); ++i)
            os << key << ',' << i << ',' << format_double(to_double(probs[i]), precision) << '\n';
    }
    return os.str();
}

template <class Scalar>
std::string marginal_pmf_to_csv(const std::vector<Scalar>& pmf, int precision) {
    std::ostringstream os;
    os << "i,probability\n";
    for (std::size_t i = 0; i < pmf.size(); ++i) os << i << ',' << format_double(to_double(pmf[i]), precision) << '\n';
    return os.str();
}

// Moments.

template <class Scalar>
json moments_to_json(std::uint32_t n, const ProbVector<Scalar>& p, const MomentReport<Scalar>& m) {
    return json{{"n", n},
                {"k", p.k()},
                {"mode", mode_name<Scalar>()},
                {"p", scalars_to_json(p.values())},
                {"mean", scalar_to_json(m.mean())},
                {"second_moment", scalar_to_json(m.second_moment())},
                {"variance", scalar_to_json(m.variance())}};
}

template <class Scalar>
MomentReport<Scalar> moments_from_json(const json& j) {
    return MomentReport<Scalar>(scalar_from_json<Scalar>(j.at("mean")), scalar_from_json<Scalar>(j.at("second_moment")),
                                scalar_from_json<Scalar>(j.at("variance")));
}

template <class Scalar>
std::string moments_to_csv(const MomentReport<Scalar>& m, int precision) {
    std::ostringstream os;
    os << "quantity,value\n";
    os << "mean," << format_double(to_double(m.mean()), precision) << '\n';
    os << "second_moment," << format_double(to_double(m.second_moment()), precision) << '\n';
    os << "variance," << format_double(to_double(m.variance()), precision) << '\n';
    return os.str();
}

// Simulation.

inline json simulation_to_json(const MonteCarloSummary& s) {
    json cells = json::array();
    for (const auto& [y, counts] : s.cells)
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] > 0) cells.push_back(json{{"y", composition_to_json(y)}, {"i", i}, {"count", counts[i]}});
    json out{{"n", s.n},
             {"k", s.k},
             {"replications", s.replications},
             {"mean_i", s.mean_i},
             {"variance_i", s.variance_i},
             {"h_defined", s.h_defined},
             {"h_undefined", s.h_undefined},
             {"cells", std::move(cells)}};
    out["mean_h"] = s.h_defined > 0 ? json(s.mean_h) : json(nullptr);
    return out;
}

inline std::string simulation_to_csv(const MonteCarloSummary& s, int precision) {
    std::ostringstream os;
    os << "y,i,count,frequency\n";
    for (const auto& [y, counts] : s.cells) {
        std::string key;
        for (std::size_t r = 0; r < y.k(); ++r) key += (r ? ";" : "") + std::to_string(y[r]);
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] > 0)
                os << key << ',' << i << ',' << counts[i] << ','
                   << format_double(static_cast<double>(counts[i]) / static_cast<double>(s.replications), precision)
                   << '\n';
    }
    return os.str();
}

// Normal fit.

inline json normal_fit_to_json(const NormalFitReport& r) {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    return json{{"n", r.n},
                {"k", r.k},
                {"mu", rational_to_json(r.params.mu)},
                {"sigma2", rational_to_json(r.params.sigma2)},
                {"exact_mean", rational_to_json(r.exact_mean)},
                {"exact_variance", rational_to_json(r.exact_variance)},
                {"degenerate", r.degenerate},
                {"total_variation", opt(r.total_variation)},
                {"kolmogorov", opt(r.kolmogorov)},
                {"skewness", opt(r.skewness)},
                {"excess_kurtosis", opt(r.excess_kurtosis)},
                {"standardization", r.standardization},
                {"note", r.note}};
}

inline std::string normal_fit_to_csv(const NormalFitReport& r, int precision) {
    std::ostringstream os;
    os << "i,pmf,normal_mass\n";
    for (const auto& pt : r.lattice)
        os << pt.i << ',' << format_double(pt.pmf, precision) << ',' << format_double(pt.normal_mass, precision) << '\n';
    return os.str();
}

}  // namespace invmult::io
