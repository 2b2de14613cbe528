#pragma once

// Command dispatch for the jetkernel tool. run() turns a RunConfig into an exit
// code and a JSON document; argument parsing lives in tools/jetkernel_cli.cpp.
//
// Exit codes: 0 every check passed, 1 a check failed (the document carries a
// counterexample), 2 bad usage or parameters.

#include "jetkernel/acceptance.hpp"
#include "jetkernel/commutant.hpp"
#include "jetkernel/curvature.hpp"
#include "jetkernel/json_io.hpp"
#include "jetkernel/kernel.hpp"
#include "jetkernel/mobius.hpp"
#include "jetkernel/normalize.hpp"
#include "jetkernel/rational.hpp"
#include "jetkernel/tridisc.hpp"
#include "jetkernel/wilkins.hpp"

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetkernel::cli {

constexpr int exit_pass = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

constexpr std::size_t max_trunc = 12;

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names = {"jet-coeffs", "irreducibility", "curvature", "cocycle-check",
                                                   "identity-check", "wilkins", "tridisc", "verify-all"};
    return names;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string subcommand;
    std::map<std::string, std::string> params;  // alpha, beta, gamma as "p/q"; order, terms, ... as integers
    std::vector<std::string> at;                // points "x,y"
    std::size_t trunc = 6;
    std::size_t curv_trunc = 20;
    Mode mode = Mode::exact;
    std::optional<double> tolerance;  // command default when unset
    std::uint64_t seed = 1;
    bool normalized = false;   // jet-coeffs: also emit the normalized series
    bool mutate_sum = false;   // tridisc: use beta+gamma-1 in place of beta+gamma
    bool timings = false;      // verify-all: include wall-clock times
    std::string metric = "jet";
};

struct RunResult {
    int exit_code = exit_pass;
    json doc;
    std::string diagnostic;  // for stderr
};

namespace detail {

inline Rational rational_param(const RunConfig& c, const std::string& key) {
    auto it = c.params.find(key);
    if (it == c.params.end()) throw UsageError("missing --" + key);
    try {
        return Rational::parse(it->second);
    } catch (const std::exception& e) {
        throw UsageError("--" + key + ": cannot parse '" + it->second + "' as a rational p/q");
    }
}

inline long integer_param(const RunConfig& c, const std::string& key, std::optional<long> fallback = std::nullopt) {
    auto it = c.params.find(key);
    if (it == c.params.end()) {
        if (fallback) return *fallback;
        throw UsageError("missing --" + key);
    }
    try {
        std::size_t used = 0;
        long v = std::stol(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw UsageError("--" + key + ": '" + it->second + "' is not an integer");
    }
}

inline std::complex<double> parse_point(const std::string& s) {
    try {
        auto comma = s.find(',');
        std::size_t used = 0;
        if (comma == std::string::npos) {
            double x = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument("");
            return {x, 0.0};
        }
        const std::string xs = s.substr(0, comma), ys = s.substr(comma + 1);
        double x = std::stod(xs, &used);
        if (used != xs.size()) throw std::invalid_argument("");
        double y = std::stod(ys, &used);
        if (used != ys.size()) throw std::invalid_argument("");
        return {x, y};
    } catch (const std::exception&) {
        throw UsageError("--at: expected x,y, got '" + s + "'");
    }
}

inline KernelSpec bidisc_spec(const RunConfig& c) {
    const long n = integer_param(c, "order");
    if (n < 0) throw UsageError("--order must be >= 0");
    const Rational alpha = rational_param(c, "alpha"), beta = rational_param(c, "beta");
    try {
        return KernelSpec::bidisc(alpha, beta, int(n));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline void check_trunc(std::size_t M) {
    if (M > max_trunc) throw UsageError("--trunc " + std::to_string(M) + " exceeds the limit " + std::to_string(max_trunc));
}

inline json point_json(std::complex<double> z) { return to_json(z); }

inline void finish(RunResult& r, bool pass, const std::string& counterexample = {}) {
    r.doc["pass"] = pass;
    if (!pass) {
        r.exit_code = exit_check_failed;
        r.doc["counterexample"] = counterexample;
        r.diagnostic = counterexample;
    }
}

}  // namespace detail

inline RunResult jet_coeffs(const RunConfig& c) {
    const auto spec = detail::bidisc_spec(c);
    detail::check_trunc(c.trunc);
    RunResult r;
    const auto a = jet_kernel_series(spec, c.trunc);
    const auto oracle = jet_kernel_series_bruteforce(spec, c.trunc);
    std::string bad;
    for (std::size_t m = 0; m <= c.trunc && bad.empty(); ++m)
        for (std::size_t p = 0; p <= c.trunc && bad.empty(); ++p)
            if (!(a.coeff(m, p) == oracle.coeff(m, p)))
                bad = "z^" + std::to_string(m) + " wbar^" + std::to_string(p) + ": closed form " +
                      a.coeff(m, p).to_string() + " vs oracle " + oracle.coeff(m, p).to_string();
    r.doc = {{"command", "jet-coeffs"}, {"spec", to_json(spec)}, {"trunc", c.trunc}, {"series", to_json(a)},
             {"oracle_match", bad.empty()}};
    if (c.normalized) {
        const auto nc = normalized_coeffs(spec, c.trunc);
        r.doc["D"] = to_json(nc.D);
        r.doc["normalized"] = to_json(nc.N);
    }
    detail::finish(r, bad.empty(), bad);
    return r;
}

inline RunResult irreducibility(const RunConfig& c) {
    const auto spec = detail::bidisc_spec(c);
    if (spec.jet_order < 1) throw UsageError("irreducibility needs --order >= 1");
    const double tol = c.tolerance.value_or(1e-10);
    const auto rep = c.mode == Mode::exact ? irreducibility_verdict(spec) : irreducibility_verdict_numeric(spec, tol);
    RunResult r;
    json basis = json::array();
    if (rep.arithmetic == Arithmetic::exact)
        for (const auto& b : rep.exact_basis) basis.push_back(to_json(b));
    else
        for (const auto& b : rep.numeric_basis) basis.push_back(to_json(b));
    r.doc = {{"command", "irreducibility"}, {"spec", to_json(spec)},   {"arithmetic", to_string(rep.arithmetic)},
             {"dimension", rep.dimension},  {"verdict", to_string(rep.verdict)}, {"basis", basis}};
    if (rep.arithmetic == Arithmetic::numeric) r.doc["tolerance"] = tol;
    if (!rep.note.empty()) r.doc["note"] = rep.note;
    detail::finish(r, rep.verdict == Verdict::irreducible,
                   "commutant dimension " + std::to_string(rep.dimension) + ", verdict " + to_string(rep.verdict));
    return r;
}

inline RunResult curvature(const RunConfig& c) {
    const auto spec = detail::bidisc_spec(c);
    if (c.metric != "jet" && c.metric != "normalized") throw UsageError("--metric must be jet or normalized");
    const Metric metric = c.metric == "jet" ? Metric::jet : Metric::normalized;
    std::vector<cd> points;
    for (const auto& s : c.at) points.push_back(detail::parse_point(s));
    for (const auto& z : points)
        if (std::abs(z) > 0.5) throw UsageError("--at: |z| must be <= 0.5 for the series evaluation");
    if (!points.empty() && c.curv_trunc < 2) throw UsageError("--curv-trunc must be >= 2");
    const double tol = c.tolerance.value_or(1e-8);
    const auto rep = curvature_report(spec, points, c.curv_trunc, metric);

    RunResult r;
    json intermediate = json::array();
    for (const auto& v : rep.intermediate) intermediate.push_back(to_json(v));
    r.doc = {{"command", "curvature"},
             {"spec", to_json(spec)},
             {"at_zero", to_json(rep.at_zero)},
             {"expected_at_zero", to_json(expected_curvature_at_zero(spec))},
             {"invariants", {to_json(rep.invariants.first), to_json(rep.invariants.second)}},
             {"at_zero_matches", rep.at_zero_matches},
             {"intermediate", intermediate},
             {"intermediate_is_alpha_r_fact_beta_r", rep.intermediate_is_alpha_r_fact_beta_r},
             {"metric", to_string(metric)},
             {"curv_trunc", c.curv_trunc}};
    bool pass = rep.at_zero_matches;
    std::string bad = pass ? "" : "curvature at 0 is " + rep.at_zero.to_string();
    json samples = json::array();
    for (std::size_t k = 0; k < rep.samples.size(); ++k) {
        const auto& [z, K] = rep.samples[k];
        json s = {{"z", detail::point_json(z)}, {"curvature", to_json(K)}, {"tail_estimate", rep.tails[k]}};
        if (spec.jet_order == 1 && metric == Metric::jet) {
            const auto closed = jet2_curvature_closed_form(spec.alpha.to_double(), spec.beta.to_double(), z);
            const double err = max_abs_diff(K, closed);
            s["closed_form"] = to_json(closed);
            s["error"] = err;
            s["eigenvector_residual"] = jet2_eigenvector_residual(closed, spec.alpha.to_double(), spec.beta.to_double(), z);
            if (!(err < tol) && pass) {
                pass = false;
                bad = "closed form off by " + std::to_string(err) + " at z = " + json(detail::point_json(z)).dump();
            }
        }
        samples.push_back(std::move(s));
    }
    r.doc["samples"] = samples;
    r.doc["tolerance"] = tol;
    detail::finish(r, pass, bad);
    return r;
}

inline RunResult cocycle_check(const RunConfig& c) {
    const auto spec = detail::bidisc_spec(c);
    const long samples = detail::integer_param(c, "samples", 100);
    if (samples < 1) throw UsageError("--samples must be >= 1");
    const double tol = c.tolerance.value_or(1e-10);
    if (c.mode == Mode::exact && !jmatrix_exponent(spec).is_integer())
        throw UsageError("exact mode needs (alpha+beta)/2 to be an integer; use --mode numeric");
    std::mt19937_64 rng(c.seed);
    const Rational bound = c.mode == Mode::exact ? Rational(7, 10) : Rational(1, 4);
    std::size_t chain = 0, pcoc = 0, matrix = 0;
    std::optional<json> counter;
    for (long k = 0; k < samples; ++k) {
        const auto g = c.mode == Mode::exact ? sample_mobius(rng, bound) : sample_mobius_near_identity(rng);
        const auto h = c.mode == Mode::exact ? sample_mobius(rng, bound) : sample_mobius_near_identity(rng);
        const auto z = sample_disc_point(rng, bound);
        const bool ok1 = verify_chain_rule(g, h, z), ok2 = verify_p_cocycle(g, h, z);
        const auto res = verify_matrix_cocycle(spec, g, h, z, c.mode, tol);
        chain += ok1;
        pcoc += ok2;
        matrix += res.pass;
        if ((!ok1 || !ok2 || !res.pass) && !counter)
            counter = json{{"g", {{"t", to_json(g.t)}, {"a", to_json(g.a)}}},
                           {"h", {{"t", to_json(h.t)}, {"a", to_json(h.a)}}},
                           {"z", to_json(z)},
                           {"chain_rule", ok1},
                           {"p_cocycle", ok2},
                           {"matrix_cocycle", res.pass},
                           {"detail", res.counterexample}};
    }
    RunResult r;
    r.doc = {{"command", "cocycle-check"},
             {"spec", to_json(spec)},
             {"mode", c.mode == Mode::exact ? "exact" : "numeric"},
             {"seed", c.seed},
             {"samples", samples},
             {"chain_rule_passed", chain},
             {"p_cocycle_passed", pcoc},
             {"matrix_cocycle_passed", matrix}};
    if (c.mode == Mode::numeric) r.doc["tolerance"] = tol;
    const bool pass = !counter.has_value();
    r.doc["pass"] = pass;
    if (!pass) {
        r.exit_code = exit_check_failed;
        r.doc["counterexample"] = *counter;
        r.diagnostic = "cocycle identity failed: " + counter->dump();
    }
    return r;
}

inline RunResult identity_check(const RunConfig& c) {
    const long max_ij = detail::integer_param(c, "max-ij", 10);
    if (max_ij < 0 || max_ij > 20) throw UsageError("--max-ij must be in [0, 20]");
    std::vector<Rational> betas = {Rational(1, 2), Rational(1), Rational(5, 2)};
    if (c.params.count("beta")) betas = {detail::rational_param(c, "beta")};
    for (const auto& b : betas)
        if (!(b > Rational(0))) throw UsageError("--beta must be > 0");
    std::size_t checked = 0;
    std::string bad;
    for (long j = 0; j <= max_ij; ++j)
        for (long i = 0; i <= j; ++i)
            for (long k = 0; k <= i; ++k) {
                ++checked;
                if (!binomial_identity_check(i, j, k) && bad.empty())
                    bad = "binomial identity at i=" + std::to_string(i) + " j=" + std::to_string(j) +
                          " k=" + std::to_string(k);
            }
    std::size_t quasi = 0;
    for (const auto& b : betas)
        for (long j = 0; j <= max_ij; ++j)
            for (long i = 0; i <= j; ++i) {
                ++quasi;
                if (!quasi_invariance_polynomial(i, j, b, max_ij) && bad.empty())
                    bad = "quasi-invariance polynomial at i=" + std::to_string(i) + " j=" + std::to_string(j) +
                          " beta=" + b.to_string();
            }
    json bj = json::array();
    for (const auto& b : betas) bj.push_back(to_json(b));
    RunResult r;
    r.doc = {{"command", "identity-check"}, {"max_ij", max_ij},        {"binomial_checked", checked},
             {"betas", bj},                 {"quasi_invariance_checked", quasi}};
    detail::finish(r, bad.empty(), bad);
    return r;
}

inline RunResult wilkins(const RunConfig& c) {
    const Rational alpha = detail::rational_param(c, "alpha"), beta = detail::rational_param(c, "beta");
    if (!(alpha > Rational(0)) || !(beta > Rational(0))) throw UsageError("--alpha and --beta must be > 0");
    const long terms = detail::integer_param(c, "terms", 60);
    if (terms < 1 || terms > 100000) throw UsageError("--terms must be in [1, 100000]");
    if (c.at.size() > 1) throw UsageError("wilkins takes a single --at point");
    const cd z = c.at.empty() ? cd(0.3, 0.0) : detail::parse_point(c.at.front());
    if (!(std::abs(z) < 1.0)) throw UsageError("--at: |z| must be < 1");
    const double tol = c.tolerance.value_or(1e-8);
    const auto rep = wilkins_report(alpha, beta, terms, z, z);
    const double a = alpha.to_double(), b = beta.to_double();
    bool nilpotent = true, q2_diagonal = true;
    for (long p = 0; p <= 50; ++p) {
        const auto q1 = q1_block(a, b, p);
        nilpotent = nilpotent && (q1 * q1).is_zero();
        if (alpha == beta) {
            const auto q2 = q2_block(a, b, p);
            q2_diagonal = q2_diagonal && q2(0, 1) == 0.0 && q2(1, 0) == 0.0;
        }
    }
    RunResult r;
    r.doc = {{"command", "wilkins"},
             {"alpha", alpha.to_string()},
             {"beta", beta.to_string()},
             {"terms", terms},
             {"z", to_json(z)},
             {"partial_sum", to_json(rep.partial_sum)},
             {"closed_form", to_json(rep.closed_form)},
             {"max_error", rep.max_error},
             {"jet_kernel_vs_closed_form", rep.jet_vs_closed},
             {"q1_square_zero", nilpotent},
             {"tolerance", tol}};
    if (alpha == beta) r.doc["q2_diagonal"] = q2_diagonal;
    std::string bad;
    if (!(rep.max_error < tol)) bad = "partial sum off by " + std::to_string(rep.max_error);
    else if (!nilpotent) bad = "Q1 block does not square to zero";
    else if (!q2_diagonal) bad = "Q2 block is not diagonal";
    detail::finish(r, bad.empty(), bad);
    return r;
}

inline RunResult tridisc(const RunConfig& c) {
    const Rational alpha = detail::rational_param(c, "alpha"), beta = detail::rational_param(c, "beta"),
                   gamma = detail::rational_param(c, "gamma");
    KernelSpec spec;
    try {
        spec = KernelSpec::tridisc(alpha, beta, gamma);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    TridiscOptions opt;
    opt.seed = c.seed;
    if (c.tolerance) opt.tol = *c.tolerance;
    if (c.mutate_sum) opt.sigma_override = spec.beta + spec.gamma - Rational(1);
    const auto rep = tridisc_block_diagonalize(spec, opt);
    json ranks = json::array();
    for (auto k : rep.projection_ranks) ranks.push_back(k);
    RunResult r;
    r.doc = {{"command", "tridisc"},
             {"spec", to_json(spec)},
             {"sum_used", rep.sigma.to_string()},
             {"U", rep.exact_u ? to_json(*rep.U_exact) : to_json(rep.U_numeric)},
             {"U_exact", rep.exact_u},
             {"unitary", rep.unitary},
             {"unitarity_residual", rep.unitarity_residual},
             {"normalized_at_zero", rep.normalized_at_zero},
             {"display_matches", rep.display_matches},
             {"block_diagonal", rep.block_diagonal},
             {"literal_conjugation", rep.literal_conjugation},
             {"g1_matches_display", rep.g1_matches_display},
             {"g1_at_zero_identity", rep.g1_at_zero_identity},
             {"g2_exponent", rep.g2_exponent.to_string()},
             {"g2_matches", rep.g2_matches},
             {"g2_cocycle", rep.g2_cocycle},
             {"match_bidisc", rep.match_bidisc.pass},
             {"g1_irreducible", rep.g1_irreducible},
             {"commutant_dimension", rep.commutant.dimension},
             {"commutant_arithmetic", to_string(rep.commutant.arithmetic)},
             {"projection_ranks", ranks},
             {"reducible", rep.reducible},
             {"seed", c.seed}};
    if (!rep.exact_u) r.doc["literal_residual"] = rep.literal_residual;
    detail::finish(r, rep.pass(), rep.pass() ? "" : rep.failures.front());
    if (!rep.pass()) r.doc["failures"] = rep.failures;
    return r;
}

inline RunResult verify_all(const RunConfig& c) {
    RunResult r;
    json results = json::array();
    bool pass = true;
    std::string first;
    for (const auto& res : run_all_criteria(c.seed)) {
        json j = {{"id", res.id}, {"name", res.name}, {"pass", res.pass}, {"checked", res.checked}, {"detail", res.detail}};
        if (c.timings) j["seconds"] = res.seconds;
        results.push_back(std::move(j));
        if (!res.pass && first.empty()) first = "criterion " + std::to_string(res.id) + ": " + res.detail;
        pass = pass && res.pass;
    }
    r.doc = {{"command", "verify-all"}, {"seed", c.seed}, {"criteria", results}};
    detail::finish(r, pass, first);
    return r;
}

inline RunResult run(const RunConfig& c) {
    try {
        if (c.subcommand == "jet-coeffs") return jet_coeffs(c);
        if (c.subcommand == "irreducibility") return irreducibility(c);
        if (c.subcommand == "curvature") return curvature(c);
        if (c.subcommand == "cocycle-check") return cocycle_check(c);
        if (c.subcommand == "identity-check") return identity_check(c);
        if (c.subcommand == "wilkins") return wilkins(c);
        if (c.subcommand == "tridisc") return tridisc(c);
        if (c.subcommand == "verify-all") return verify_all(c);
        throw UsageError("unknown subcommand '" + c.subcommand + "'");
    } catch (const UsageError& e) {
        RunResult r;
        r.exit_code = exit_usage;
        r.diagnostic = e.what();
        r.doc = {{"command", c.subcommand}, {"error", e.what()}};
        return r;
    }
}

}  // namespace jetkernel::cli
