#pragma once

// Command dispatch for the invmult executable. run() is separate from main()
// so tests can drive the exact same code path in-process.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "invmult/invmult.hpp"

namespace invmult::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kBudget = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OutputSpec {
    std::string format = "pretty";
    std::string destination;
    int precision = 12;
};

using AnyProbVector = std::variant<ProbVector<Rational>, ProbVector<double>>;

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

/**
 * "1/3,1/3,1/3" or "1,0" give an exact vector; "0.5,0.5" a floating one.
 * Mixing the two notations is rejected.
 */
inline AnyProbVector parse_probabilities(const std::string& text) {
    const auto tokens = split(text, ',');
    if (tokens.empty()) throw UsageError("--p needs at least one probability");
    auto is_rational = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t slashes = 0;
        for (char c : t) {
            if (c == '/') ++slashes;
            else if (c < '0' || c > '9') return false;
        }
        return slashes <= 1 && t.front() != '/' && t.back() != '/';
    };
    std::size_t rational = 0;
    for (const auto& t : tokens) rational += is_rational(t) ? 1 : 0;
    try {
        if (rational == tokens.size()) {
            std::vector<Rational> v;
            for (const auto& t : tokens) v.push_back(parse_rational(t));
            return ProbVector<Rational>(std::move(v));
        }
        if (rational != 0) throw UsageError("--p mixes rational and decimal notation");
        std::vector<double> v;
        for (const auto& t : tokens) {
            std::size_t used = 0;
            double x = 0;
            try {
                x = std::stod(t, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != t.size() || t.empty()) throw UsageError("--p entry '" + t + "' is not a number");
            v.push_back(x);
        }
        return ProbVector<double>(std::move(v));
    } catch (const InvalidArgument& e) {
        throw UsageError(std::string("invalid --p: ") + e.what());
    }
}

inline OutcomeSequence parse_sequence(const std::string& text, std::optional<std::uint32_t> k) {
    std::vector<std::uint32_t> symbols;
    if (!text.empty()) {
        for (const auto& t : split(text, ',')) {
            if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t.size() > 9)
                throw UsageError("--sequence entry '" + t + "' is not a positive integer");
            symbols.push_back(static_cast<std::uint32_t>(std::stoul(t)));
        }
    }
    try {
        return k ? OutcomeSequence(std::move(symbols), *k) : OutcomeSequence(std::move(symbols));
    } catch (const InvalidArgument& e) {
        throw UsageError(std::string("invalid --sequence: ") + e.what());
    }
}

/// --budget, else $INVMULT_BUDGET, else the command's default.
inline std::uint64_t resolve_budget(std::optional<std::uint64_t> flag, std::uint64_t fallback) {
    if (flag) return *flag;
    if (const char* env = std::getenv("INVMULT_BUDGET")) {
        const std::string s(env);
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("INVMULT_BUDGET must be a nonnegative integer");
        return std::stoull(s);
    }
    return fallback;
}

struct Options {
    std::optional<std::uint32_t> n;
    std::optional<std::uint32_t> k;
    std::string p;
    bool equal = false;
    bool symbolic = false;
    std::optional<std::uint64_t> at;
    std::uint64_t seed = 0;
    std::uint64_t reps = 1;
    std::string sequence;
    bool sequence_given = false;
    std::string y;
    bool brute = false;
    std::string sequences_out;
    std::optional<std::uint64_t> budget;
    OutputSpec output;
};

inline std::uint32_t require_n(const Options& o) {
    if (!o.n) throw UsageError("--n is required");
    return *o.n;
}

inline AnyProbVector resolve_probabilities(const Options& o) {
    if (!o.p.empty() && o.equal) throw UsageError("--p and --equal are mutually exclusive");
    if (!o.p.empty()) {
        AnyProbVector pv = parse_probabilities(o.p);
        const std::size_t k = std::visit([](const auto& v) { return v.k(); }, pv);
        if (o.k && *o.k != k) throw UsageError("--k disagrees with the length of --p");
        return pv;
    }
    if (o.equal) {
        if (!o.k || *o.k == 0) throw UsageError("--equal needs --k >= 1");
        return ProbVector<Rational>::equal(*o.k);
    }
    throw UsageError("one of --p or --equal is required");
}

inline void check_composition_budget(std::uint32_t n, std::uint32_t k, std::uint64_t budget) {
    const BigInt c = composition_count(n, k);
    if (c > budget) throw BudgetExceeded(c.str() + " compositions exceed budget " + std::to_string(budget));
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline std::string render_table(std::uint32_t n, std::uint32_t k, const std::string& mode, const TableRows& rows,
                                const OutputSpec& out) {
    const std::uint64_t columns = support_bound_i(n, k) + 1;
    if (out.format == "json") {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& [y, cells] : rows) jr.push_back({{"y", y.parts()}, {"cells", cells}});
        return dump({{"n", n}, {"k", k}, {"mode", mode}, {"columns", columns}, {"rows", jr}});
    }
    if (out.format == "csv") {
        std::ostringstream os;
        os << "y,i,probability\n";
        for (const auto& [y, cells] : rows) {
            std::string key;
            for (std::size_t r = 0; r < y.k(); ++r) key += (r ? ";" : "") + std::to_string(y[r]);
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (cells[i] != "0") os << key << ',' << i << ',' << cells[i] << '\n';
        }
        return os.str();
    }
    std::size_t yw = 1;
    std::vector<std::size_t> cw(columns);
    for (std::uint64_t i = 0; i < columns; ++i) cw[i] = std::string("I=" + std::to_string(i)).size();
    for (const auto& [y, cells] : rows) {
        yw = std::max(yw, y.str().size());
        for (std::size_t i = 0; i < cells.size(); ++i) cw[i] = std::max(cw[i], cells[i].size());
    }
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(yw)) << "y";
    for (std::uint64_t i = 0; i < columns; ++i)
        os << " | " << std::setw(static_cast<int>(cw[i])) << ("I=" + std::to_string(i));
    os << '\n';
    for (const auto& [y, cells] : rows) {
        os << std::setw(static_cast<int>(yw)) << y.str();
        for (std::size_t i = 0; i < cells.size(); ++i) os << " | " << std::setw(static_cast<int>(cw[i])) << cells[i];
        os << '\n';
    }
    std::string s = os.str();
    // Strip trailing padding so output diffs cleanly.
    std::string trimmed;
    std::istringstream lines(s);
    for (std::string line; std::getline(lines, line);) {
        line.erase(line.find_last_not_of(' ') + 1);
        trimmed += line + "\n";
    }
    return trimmed;
}

inline std::string cmd_table(const Options& o) {
    const std::uint32_t n = require_n(o);
    if (o.symbolic) {
        if (!o.p.empty() || o.equal) throw UsageError("--symbolic takes no probabilities");
        if (!o.k || *o.k == 0) throw UsageError("--symbolic needs --k >= 1");
        check_composition_budget(n, *o.k, resolve_budget(o.budget, kDefaultCompositionBudget));
        return render_table(n, *o.k, "symbolic", symbolic_joint_table(n, *o.k), o.output);
    }
    const AnyProbVector pv = resolve_probabilities(o);
    return std::visit(
        [&](const auto& p) {
            using Scalar = std::decay_t<decltype(p.values()[0])>;
            const auto k = static_cast<std::uint32_t>(p.k());
            check_composition_budget(n, k, resolve_budget(o.budget, kDefaultCompositionBudget));
            const auto pmf = joint_pmf(n, p);
            if (o.output.format == "json") {
                nlohmann::json jr = nlohmann::json::array();
                const std::uint64_t columns = support_bound_i(n, k) + 1;
                for (const auto& y : enumerate_compositions(n, k)) {
                    nlohmann::json cells = nlohmann::json::array();
                    for (std::uint64_t i = 0; i < columns; ++i) cells.push_back(io::scalar_to_json(pmf.at(y, i)));
                    jr.push_back({{"y", y.parts()}, {"cells", cells}});
                }
                return dump({{"n", n}, {"k", k}, {"mode", io::mode_name<Scalar>()}, {"columns", columns}, {"rows", jr}});
            }
            if (o.output.format == "csv") return io::joint_pmf_to_csv(pmf, o.output.precision);
            const int prec = o.output.precision;
            return render_table(n, k, io::mode_name<Scalar>(),
                                numeric_joint_table(pmf, [prec](const Scalar& v) { return io::format_scalar(v, prec); }),
                                o.output);
        },
        pv);
}

inline std::string cmd_pmf(const Options& o) {
    const std::uint32_t n = require_n(o);
    const AnyProbVector pv = resolve_probabilities(o);
    return std::visit(
        [&](const auto& p) -> std::string {
            using Scalar = std::decay_t<decltype(p.values()[0])>;
            check_composition_budget(n, static_cast<std::uint32_t>(p.k()), resolve_budget(o.budget, kDefaultCompositionBudget));
            const std::vector<Scalar> pmf = marginal_i_pmf(n, p);
            const int prec = o.output.precision;
            if (o.at) {
                const Scalar v = *o.at < pmf.size() ? pmf[*o.at] : Scalar(0);
                if (o.output.format == "json")
                    return dump({{"n", n}, {"k", p.k()}, {"mode", io::mode_name<Scalar>()}, {"i", *o.at},
                                 {"probability", io::scalar_to_json(v)}});
                if (o.output.format == "csv")
                    return "i,probability\n" + std::to_string(*o.at) + "," + io::format_double(to_double(v), prec) + "\n";
                return io::format_scalar(v, prec) + "\n";
            }
            if (o.output.format == "json") return dump(io::marginal_pmf_to_json(n, p, pmf));
            if (o.output.format == "csv") return io::marginal_pmf_to_csv(pmf, prec);
            std::ostringstream os;
            for (std::size_t i = 0; i < pmf.size(); ++i) os << "P(I=" << i << ") = " << io::format_scalar(pmf[i], prec) << '\n';
            return os.str();
        },
        pv);
}

inline std::string cmd_moments(const Options& o) {
    const std::uint32_t n = require_n(o);
    const AnyProbVector pv = resolve_probabilities(o);
    return std::visit(
        [&](const auto& p) -> std::string {
            const auto m = moments_of_i(n, p);
            const int prec = o.output.precision;
            if (o.output.format == "json") return dump(io::moments_to_json(n, p, m));
            if (o.output.format == "csv") return io::moments_to_csv(m, prec);
            return "E(I) = " + io::format_scalar(m.mean(), prec) + "\nE(I^2) = " + io::format_scalar(m.second_moment(), prec) +
                   "\nV(I) = " + io::format_scalar(m.variance(), prec) + "\n";
        },
        pv);
}

inline std::string cmd_simulate(const Options& o) {
    const std::uint32_t n = require_n(o);
    if (o.reps == 0) throw UsageError("--reps must be at least 1");
    const AnyProbVector pv = resolve_probabilities(o);
    std::ofstream raw;
    if (!o.sequences_out.empty()) {
        raw.open(o.sequences_out);
        if (!raw) throw UsageError("cannot write " + o.sequences_out);
    }
    return std::visit(
        [&](const auto& p) -> std::string {
            using Scalar = std::decay_t<decltype(p.values()[0])>;
            const SimulationConfig<Scalar> cfg{n, p, o.reps, o.seed};
            const auto summary = monte_carlo_joint(cfg, [&](const OutcomeSequence& s) {
                if (raw.is_open()) raw << s.str() << '\n';
            });
            const int prec = o.output.precision;
            if (o.output.format == "json") {
                auto j = io::simulation_to_json(summary);
                j["seed"] = o.seed;
                return dump(j);
            }
            if (o.output.format == "csv") return io::simulation_to_csv(summary, prec);
            std::ostringstream os;
            os << "replications = " << summary.replications << '\n'
               << "seed = " << o.seed << '\n'
               << "mean I = " << io::format_double(summary.mean_i, prec) << '\n'
               << "variance I = " << io::format_double(summary.variance_i, prec) << '\n'
               << "mean H = " << (summary.h_defined ? io::format_double(summary.mean_h, prec) : std::string("undefined"))
               << " (defined in " << summary.h_defined << ", undefined in " << summary.h_undefined << ")\n";
            return os.str();
        },
        pv);
}

inline std::string cmd_hstat(const Options& o) {
    if (!o.sequence_given) throw UsageError("--sequence is required");
    const OutcomeSequence seq = parse_sequence(o.sequence, o.k);
    const Composition counts = seq.counts();
    const std::uint64_t inv = count_inversions(seq);
    const auto h = h_statistic(seq);
    if (o.output.format == "json")
        return dump({{"n", seq.size()},
                     {"k", seq.k()},
                     {"counts", counts.parts()},
                     {"inversions", inv},
                     {"max_inversions", max_inversions(counts)},
                     {"h", h ? io::rational_to_json(*h) : nlohmann::json(nullptr)}});
    if (o.output.format == "csv")
        return "n,inversions,max_inversions,h\n" + std::to_string(seq.size()) + "," + std::to_string(inv) + "," +
               std::to_string(max_inversions(counts)) + "," + (h ? to_string(*h) : std::string("undefined")) + "\n";
    return "counts = " + counts.str() + "\nI = " + std::to_string(inv) + "\nmax I = " + std::to_string(max_inversions(counts)) +
           "\nH = " + (h ? to_string(*h) : std::string("undefined")) + "\n";
}

inline std::string cmd_normal_fit(const Options& o) {
    const std::uint32_t n = require_n(o);
    if (!o.k || *o.k == 0) throw UsageError("--k >= 1 is required");
    const auto report = normal_fit_report(n, *o.k, resolve_budget(o.budget, kDefaultCompositionBudget));
    const int prec = o.output.precision;
    if (o.output.format == "json") return dump(io::normal_fit_to_json(report));
    if (o.output.format == "csv") return io::normal_fit_to_csv(report, prec);
    auto opt = [&](const std::optional<double>& v) { return v ? io::format_double(*v, prec) : std::string("n/a"); };
    std::ostringstream os;
    os << "mu = " << to_string(report.params.mu) << '\n'
       << "sigma^2 = " << to_string(report.params.sigma2) << '\n'
       << "exact mean = " << to_string(report.exact_mean) << '\n'
       << "exact variance = " << to_string(report.exact_variance) << '\n';
    if (report.degenerate) {
        os << "degenerate: sigma^2 = 0, no standardisation\n";
    } else {
        os << "total variation = " << opt(report.total_variation) << '\n'
           << "kolmogorov = " << opt(report.kolmogorov) << '\n'
           << "skewness = " << opt(report.skewness) << '\n'
           << "excess kurtosis = " << opt(report.excess_kurtosis) << '\n';
    }
    os << "standardization: " << report.standardization << "; note: " << report.note << '\n';
    return os.str();
}

inline std::string cmd_qpoly(const Options& o) {
    if (o.y.empty()) throw UsageError("--y is required");
    std::vector<std::uint32_t> parts;
    for (const auto& t : split(o.y, ',')) {
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t.size() > 9)
            throw UsageError("--y entry '" + t + "' is not a nonnegative integer");
        parts.push_back(static_cast<std::uint32_t>(std::stoul(t)));
    }
    const Composition y(std::move(parts));
    const IntPolynomial poly = o.brute ? brute_force_inv_distribution(y, resolve_budget(o.budget, kDefaultEnumerationBudget))
                                       : gaussian_multinomial(y);
    if (o.output.format == "json") {
        std::vector<std::string> coeffs;
        for (const auto& c : poly.coefficients()) coeffs.push_back(c.str());
        return dump({{"y", y.parts()}, {"method", o.brute ? "enumeration" : "q-pascal"}, {"coefficients", coeffs}});
    }
    if (o.output.format == "csv") {
        std::string s = "i,count\n";
        for (std::size_t i = 0; i < poly.size(); ++i) s += std::to_string(i) + "," + poly[i].str() + "\n";
        return s;
    }
    std::ostringstream os;
    os << poly << '\n';
    return os.str();
}

inline void write_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
}

/// Parses argv-style arguments (args[0] is the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Inversion-refined multinomial distribution: exact tables, pmfs, moments, simulation"};
    app.require_subcommand(1);
    Options o;

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", o.output.format, "pretty | json | csv")
            ->check(CLI::IsMember({"pretty", "json", "csv"}));
        sub->add_option("--out", o.output.destination, "write output to this file instead of stdout");
        sub->add_option("--precision", o.output.precision, "significant digits for floating output")
            ->check(CLI::Range(1, 17));
    };
    auto add_dist = [&](CLI::App* sub) {
        sub->add_option("--n", o.n, "number of trials");
        sub->add_option("--k", o.k, "number of categories");
        sub->add_option("--p", o.p, "comma-separated probabilities, all rational (1/3) or all decimal (0.25)");
        sub->add_flag("--equal", o.equal, "p_i = 1/k");
        sub->add_option("--budget", o.budget, "maximum number of compositions to enumerate");
        add_output(sub);
    };

    std::function<std::string()> action;
    auto* table = app.add_subcommand("table", "joint (Y, I) table");
    add_dist(table);
    table->add_flag("--symbolic", o.symbolic, "cells as probability monomials");
    table->callback([&] { action = [&] { return cmd_table(o); }; });

    auto* pmf = app.add_subcommand("pmf", "marginal pmf of I");
    add_dist(pmf);
    pmf->add_option("--at", o.at, "single inversion count");
    pmf->callback([&] { action = [&] { return cmd_pmf(o); }; });

    auto* moments = app.add_subcommand("moments", "E(I), E(I^2), V(I)");
    add_dist(moments);
    moments->callback([&] { action = [&] { return cmd_moments(o); }; });

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo replications of the experiment");
    add_dist(simulate);
    simulate->add_option("--seed", o.seed, "64-bit seed");
    simulate->add_option("--reps", o.reps, "replications");
    simulate->add_option("--sequences", o.sequences_out, "write each simulated sequence, one per line");
    simulate->callback([&] { action = [&] { return cmd_simulate(o); }; });

    auto* hstat = app.add_subcommand("hstat", "inversions and H for an observed sequence");
    hstat->add_option("--sequence", o.sequence, "comma-separated symbols in 1..k");
    hstat->add_option("--k", o.k, "number of categories (default: largest symbol)");
    add_output(hstat);
    hstat->callback([&] {
        o.sequence_given = hstat->count("--sequence") > 0;
        action = [&] { return cmd_hstat(o); };
    });

    auto* fit = app.add_subcommand("normal-fit", "distance of the equal-probability pmf of I from a normal");
    fit->add_option("--n", o.n, "number of trials");
    fit->add_option("--k", o.k, "number of categories");
    fit->add_option("--budget", o.budget, "maximum number of compositions");
    add_output(fit);
    fit->callback([&] { action = [&] { return cmd_normal_fit(o); }; });

    auto* qpoly = app.add_subcommand("qpoly", "inversion generating polynomial of one composition");
    qpoly->add_option("--y", o.y, "comma-separated composition");
    qpoly->add_flag("--brute", o.brute, "enumerate permutations instead of the q-Pascal product");
    qpoly->add_option("--budget", o.budget, "maximum number of permutations to enumerate");
    add_output(qpoly);
    qpoly->callback([&] { action = [&] { return cmd_qpoly(o); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        write_error(err, "usage", e.what());
        return kUsage;
    }

    try {
        const std::string text = action();
        if (o.output.destination.empty()) {
            out << text;
        } else {
            std::ofstream file(o.output.destination);
            if (!file) throw UsageError("cannot write " + o.output.destination);
            file << text;
        }
        return kOk;
    } catch (const BudgetExceeded& e) {
        write_error(err, "budget", e.what());
        return kBudget;
    } catch (const UsageError& e) {
        write_error(err, "usage", e.what());
        return kUsage;
    } catch (const InvalidArgument& e) {
        write_error(err, "usage", e.what());
        return kUsage;
    }
}

}  // namespace invmult::cli
