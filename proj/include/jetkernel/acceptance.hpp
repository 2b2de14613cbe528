#pragma once

// The twelve acceptance criteria as runnable checks. Each returns pass/fail,
// the number of individual comparisons made and, on failure, the first
// counterexample.

#include "jetkernel/commutant.hpp"
#include "jetkernel/curvature.hpp"
#include "jetkernel/kernel.hpp"
#include "jetkernel/mobius.hpp"
#include "jetkernel/normalize.hpp"
#include "jetkernel/rational.hpp"
#include "jetkernel/tridisc.hpp"
#include "jetkernel/wilkins.hpp"

#include <chrono>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace jetkernel {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = true;
    std::size_t checked = 0;
    std::string detail;  // first counterexample, or a short summary on pass
    double seconds = 0.0;

    void fail(const std::string& what) {
        if (pass) detail = what;
        pass = false;
    }
    void absorb(const CheckResult& r, const std::string& where) {
        checked += r.checked;
        if (!r.pass) fail(where + ": " + r.counterexample);
    }
};

namespace acceptance {

inline std::vector<Rational> grid_values() { return {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}; }

/// (alpha, beta) in grid_values()^2, n in {1, 2, 3}.
inline std::vector<KernelSpec> grid() {
    std::vector<KernelSpec> out;
    for (int n = 1; n <= 3; ++n)
        for (const auto& a : grid_values())
            for (const auto& b : grid_values()) out.push_back(KernelSpec::bidisc(a, b, n));
    return out;
}

inline std::string label(const KernelSpec& s) {
    std::ostringstream os;
    os << "(alpha=" << s.alpha << ", beta=" << s.beta;
    if (s.domain == Domain::bidisc)
        os << ", n=" << s.jet_order << ")";
    else
        os << ", gamma=" << s.gamma << ")";
    return os.str();
}

constexpr std::size_t grid_trunc = 6;

inline CriterionResult oracle_equivalence() {
    CriterionResult r;
    for (const auto& spec : grid()) {
        const auto a = jet_kernel_series(spec, grid_trunc), b = jet_kernel_series_bruteforce(spec, grid_trunc);
        for (std::size_t m = 0; m <= grid_trunc; ++m)
            for (std::size_t p = 0; p <= grid_trunc; ++p) {
                ++r.checked;
                if (!(a.coeff(m, p) == b.coeff(m, p)))
                    r.fail(label(spec) + " z^" + std::to_string(m) + " wbar^" + std::to_string(p) + ": closed form " +
                           a.coeff(m, p).to_string() + " vs oracle " + b.coeff(m, p).to_string());
            }
    }
    return r;
}

inline CriterionResult closed_forms() {
    CriterionResult r;
    for (const auto& spec : grid()) {
        r.absorb(check_closed_forms(spec, grid_trunc), label(spec));
        r.absorb(verify_inverse_relation(spec, grid_trunc), label(spec) + " c/a inverse relation");
    }
    return r;
}

inline CriterionResult oncoeff() {
    CriterionResult r;
    for (const auto& spec : grid()) r.absorb(check_oncoeff_pattern(spec), label(spec));
    return r;
}

inline CriterionResult irreducibility() {
    CriterionResult r;
    for (const auto& spec : grid()) {
        const auto rep = irreducibility_verdict(spec);
        ++r.checked;
        if (rep.arithmetic != Arithmetic::exact || rep.dimension != 1 || rep.verdict != Verdict::irreducible)
            r.fail(label(spec) + ": commutant dimension " + std::to_string(rep.dimension) + " (" +
                   to_string(rep.arithmetic) + ") " + rep.note);
    }
    return r;
}

inline CriterionResult curvature_invariants() {
    CriterionResult r;
    const auto specs = grid();
    for (const auto& spec : specs) {
        ++r.checked;
        const auto K = curvature_at_zero(spec);
        if (!(K == expected_curvature_at_zero(spec)))
            r.fail(label(spec) + ": curvature at 0 " + K.to_string() + ", expected " +
                   expected_curvature_at_zero(spec).to_string());
    }
    for (const auto& s : specs)
        for (const auto& t : specs) {
            if (s.jet_order != t.jet_order) continue;
            ++r.checked;
            const bool same = s.alpha == t.alpha && s.beta == t.beta;
            if (equivalence_test(s, t) != same) r.fail("equivalence_test wrong on " + label(s) + " vs " + label(t));
        }
    return r;
}

inline CriterionResult curvature_closed_form(std::size_t M = 20) {
    CriterionResult r;
    const std::vector<cd> points = {cd(0.2, 0.0), cd(0.3, 0.2)};
    for (const auto& a : grid_values())
        for (const auto& b : grid_values()) {
            const CurvatureSeries cs(KernelSpec::bidisc(a, b, 1), M);
            for (const auto& z : points) {
                const auto closed = jet2_curvature_closed_form(a.to_double(), b.to_double(), z);
                const double err = max_abs_diff(cs.evaluate_at(z), closed);
                const double res = jet2_eigenvector_residual(closed, a.to_double(), b.to_double(), z);
                r.checked += 2;
                std::ostringstream os;
                os << label(KernelSpec::bidisc(a, b, 1)) << " z=" << z;
                if (!(err < 1e-8)) r.fail(os.str() + ": series vs closed form " + std::to_string(err));
                if (!(res < 1e-12)) r.fail(os.str() + ": eigenvector residual " + std::to_string(res));
            }
        }
    return r;
}

inline CriterionResult binomial_identity(long max_ij = 10) {
    CriterionResult r;
    for (long j = 0; j <= max_ij; ++j)
        for (long i = 0; i <= j; ++i)
            for (long k = 0; k <= i; ++k) {
                ++r.checked;
                if (!binomial_identity_check(i, j, k))
                    r.fail("i=" + std::to_string(i) + " j=" + std::to_string(j) + " k=" + std::to_string(k));
            }
    return r;
}

inline CriterionResult cocycles(std::uint64_t seed) {
    CriterionResult r;
    std::mt19937_64 rng(seed);
    auto where = [](const MobiusElement& g, const MobiusElement& h, const ComplexRational& z) {
        std::ostringstream os;
        os << "g=(t=" << g.t << ", a=" << g.a << ") h=(t=" << h.t << ", a=" << h.a << ") z=" << z;
        return os.str();
    };
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = sample_mobius(rng), h = sample_mobius(rng);
        const auto z = sample_disc_point(rng, Rational(7, 10));
        r.checked += 2;
        if (!verify_chain_rule(g, h, z)) r.fail("chain rule: " + where(g, h, z));
        if (!verify_p_cocycle(g, h, z)) r.fail("p cocycle: " + where(g, h, z));
    }
    const std::vector<std::pair<Rational, Rational>> integer_sets = {
        {Rational(1), Rational(1)}, {Rational(1, 2), Rational(3, 2)}, {Rational(3), Rational(1)}};
    for (int n = 0; n <= 3; ++n)
        for (const auto& [a, b] : integer_sets) {
            const auto spec = KernelSpec::bidisc(a, b, n);
            for (int trial = 0; trial < 10; ++trial) {
                const auto g = sample_mobius(rng), h = sample_mobius(rng);
                const auto z = sample_disc_point(rng, Rational(7, 10));
                ++r.checked;
                const auto res = verify_matrix_cocycle(spec, g, h, z, Mode::exact);
                if (!res.pass) r.fail("J cocycle " + label(spec) + " " + where(g, h, z) + ": " + res.counterexample);
            }
        }
    // fractional exponent, maps near the identity
    const auto frac = KernelSpec::bidisc(Rational(1, 2), Rational(1), 2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = sample_mobius_near_identity(rng), h = sample_mobius_near_identity(rng);
        const auto z = sample_disc_point(rng, Rational(1, 4));
        ++r.checked;
        const auto res = verify_matrix_cocycle(frac, g, h, z, Mode::numeric, 1e-10);
        if (!res.pass) r.fail("numeric J cocycle " + label(frac) + " " + where(g, h, z) + ": " + res.counterexample);
    }
    return r;
}

inline CriterionResult quasi_invariance(std::uint64_t seed) {
    CriterionResult r;
    for (const auto& beta : {Rational(1, 2), Rational(1), Rational(5, 2)})
        for (long j = 0; j <= 6; ++j)
            for (long i = 0; i <= j; ++i) {
                ++r.checked;
                if (!quasi_invariance_polynomial(i, j, beta, 6))
                    r.fail("polynomial identity i=" + std::to_string(i) + " j=" + std::to_string(j) +
                           " beta=" + beta.to_string());
            }
    std::mt19937_64 rng(seed);
    for (const auto& spec : grid()) {
        if (!(spec.alpha + spec.beta).is_integer()) continue;
        for (int trial = 0; trial < 3; ++trial) {
            const auto g = sample_mobius(rng);
            ++r.checked;
            const auto res = quasi_invariance_at_zero(spec, g, Mode::exact);
            if (!res.pass) r.fail(label(spec) + ": " + res.counterexample);
        }
    }
    return r;
}

inline CriterionResult wilkins() {
    CriterionResult r;
    const auto sum = kq_partial_sum(1.0, 1.0, 60, 0.3, 0.3);
    const double err = max_abs_diff(sum, kq_closed_form(1.0, 1.0, 0.3, 0.3));
    ++r.checked;
    if (!(err < 1e-8)) r.fail("K_Q partial sum vs closed form at 0.3: " + std::to_string(err));
    for (const auto& a : grid_values())
        for (const auto& b : grid_values())
            for (long p = 0; p <= 50; ++p) {
                const auto q1 = q1_block(a.to_double(), b.to_double(), p);
                ++r.checked;
                if (!(q1 * q1).is_zero())
                    r.fail("Q1 square nonzero at p=" + std::to_string(p) + " " + label(KernelSpec::bidisc(a, b, 1)));
                if (a == b) {
                    const auto q2 = q2_block(a.to_double(), b.to_double(), p);
                    ++r.checked;
                    if (q2(0, 1) != 0.0 || q2(1, 0) != 0.0)
                        r.fail("Q2 not diagonal at p=" + std::to_string(p) + " alpha=beta=" + a.to_string());
                }
            }
    return r;
}

inline CriterionResult tridisc(std::uint64_t seed, std::optional<Rational> sigma_override = std::nullopt) {
    CriterionResult r;
    const auto spec = KernelSpec::tridisc(1, 9, 16);
    TridiscOptions opt;
    opt.seed = seed;
    opt.sigma_override = sigma_override;
    const auto rep = tridisc_block_diagonalize(spec, opt);
    r.checked = 1 + rep.match_bidisc.checked;
    if (!rep.exact_u) r.fail("U is not exact for " + label(spec));
    if (!rep.pass()) r.fail(rep.failures.front());
    if (!(rep.g2_exponent == Rational(28))) r.fail("G2 exponent " + rep.g2_exponent.to_string());
    if (rep.commutant.arithmetic != Arithmetic::exact || rep.commutant.dimension < 2)
        r.fail("commutant dimension " + std::to_string(rep.commutant.dimension));
    return r;
}

/// Every single +1 edit of a closed-form coefficient, and the beta+gamma-1
/// substitution in the tridisc check, must be caught with a counterexample.
inline CriterionResult mutation_sensitivity(std::uint64_t seed) {
    CriterionResult r;
    const auto spec = KernelSpec::bidisc(Rational(3, 2), Rational(1, 2), 2);
    const std::size_t d = spec.size();
    auto expect_caught = [&](const Perturbation& p, const CheckResult& res) {
        ++r.checked;
        if (res.pass || res.counterexample.empty())
            r.fail("perturbing " + to_string(p.name) + "[" + std::to_string(p.index) + "](" + std::to_string(p.row) +
                   "," + std::to_string(p.col) + ") went unnoticed");
    };
    std::vector<std::pair<ClosedFormName, long>> targets = {{ClosedFormName::a00, 0}};
    for (long m = 0; m <= long(grid_trunc); ++m) {
        targets.emplace_back(ClosedFormName::am0, m);
        targets.emplace_back(ClosedFormName::ck0, m);
        if (m + 1 <= long(grid_trunc)) targets.emplace_back(ClosedFormName::am1, m);
    }
    for (long k = 2; k <= spec.jet_order + 1; ++k) targets.emplace_back(ClosedFormName::Ak1, k);
    for (const auto& [name, index] : targets)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const Perturbation p{name, index, i, j, Rational(1)};
                expect_caught(p, check_closed_forms(spec, grid_trunc, p));
            }
    const auto sum = Rational(9) + Rational(16) - Rational(1);
    const auto mutated = tridisc(seed, sum);
    ++r.checked;
    if (mutated.pass || mutated.detail.empty()) r.fail("tridisc check accepted beta+gamma-1");
    const auto match = tridisc_match_bidisc(KernelSpec::tridisc(1, 9, 16), sum);
    ++r.checked;
    if (match.pass || match.counterexample.empty()) r.fail("bidisc match accepted beta+gamma-1");
    return r;
}

struct Criterion {
    int id;
    const char* name;
    std::function<CriterionResult(std::uint64_t)> run;
};

inline const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "oracle equivalence", [](std::uint64_t) { return oracle_equivalence(); }},
        {2, "closed-form coefficients", [](std::uint64_t) { return closed_forms(); }},
        {3, "single-entry N_k1 pattern", [](std::uint64_t) { return oncoeff(); }},
        {4, "irreducibility", [](std::uint64_t) { return irreducibility(); }},
        {5, "curvature at zero and equivalence", [](std::uint64_t) { return curvature_invariants(); }},
        {6, "n = 1 curvature closed form", [](std::uint64_t) { return curvature_closed_form(); }},
        {7, "binomial identity", [](std::uint64_t) { return binomial_identity(); }},
        {8, "Mobius cocycles", [](std::uint64_t s) { return cocycles(s); }},
        {9, "quasi-invariance", [](std::uint64_t s) { return quasi_invariance(s); }},
        {10, "quotient-module example", [](std::uint64_t) { return wilkins(); }},
        {11, "tridisc splitting", [](std::uint64_t s) { return tridisc(s); }},
        {12, "mutation sensitivity", [](std::uint64_t s) { return mutation_sensitivity(s); }},
    };
    return all;
}

}  // namespace acceptance

inline CriterionResult run_criterion(int id, std::uint64_t seed) {
    for (const auto& c : acceptance::criteria()) {
        if (c.id != id) continue;
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = c.run(seed + std::uint64_t(id));
        } catch (const std::exception& e) {
            r.fail(std::string("exception: ") + e.what());
        }
        r.id = c.id;
        r.name = c.name;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.pass && r.detail.empty()) r.detail = std::to_string(r.checked) + " checks";
        return r;
    }
    throw std::out_of_range("run_criterion: no criterion " + std::to_string(id));
}

inline std::vector<CriterionResult> run_all_criteria(std::uint64_t seed) {
    std::vector<CriterionResult> out;
    for (const auto& c : acceptance::criteria()) out.push_back(run_criterion(c.id, seed));
    return out;
}

}  // namespace jetkernel
