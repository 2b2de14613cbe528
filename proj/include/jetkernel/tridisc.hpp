#pragma once

// The tridisc jet kernel G = J^(1,1)K(z,w)^t restricted to the diagonal, its
// normalization, and the splitting U G~ U^* = G_1 (+) G_2.
//
// With D = G(0,0) = diag(1, beta, gamma) the normalized kernel is
// D^{1/2} P(z,0)^{-1} P(z,w) P(0,w)^{-1} D^{1/2} S^e, where P is the polynomial
// part of G and e = alpha+beta+gamma+2. The square roots only appear through
// D^{1/2}, so the symmetrized form H = D P(z,0)^{-1} P P(0,w)^{-1} D is rational
// for every rational parameter set and carries all the exact checks. The
// literal conjugation by U is exact when beta, gamma and beta+gamma are
// squares of rationals.

#include "jetkernel/commutant.hpp"
#include "jetkernel/kernel.hpp"
#include "jetkernel/matrix.hpp"
#include "jetkernel/mobius.hpp"
#include "jetkernel/normalize.hpp"
#include "jetkernel/polynomial.hpp"
#include "jetkernel/rational.hpp"
#include "jetkernel/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetkernel {

using RPoly = BiPoly<Rational>;
using RPolyMatrix = Matrix<RPoly>;

namespace detail {

/// Inverse of a polynomial matrix A = A0 + R with A0 constant and A0^{-1} R
/// nilpotent, as the finite sum of (-A0^{-1} R)^k A0^{-1}.
inline RPolyMatrix polynomial_inverse(const RPolyMatrix& A) {
    const std::size_t d = A.rows();
    Matrix<Rational> A0(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) A0(i, j) = A(i, j).coefficient(0, 0);
    const auto A0inv = lift_constant(inverse(A0));
    const RPolyMatrix R = A0inv * (A - lift_constant(A0));
    RPolyMatrix term = A0inv, out = A0inv;
    for (std::size_t k = 0; k <= d; ++k) {
        term = -(R * term);
        if (term.is_zero()) {
            if (!(A * out == lift_constant(Matrix<Rational>::identity(d))))
                throw std::logic_error("polynomial_inverse: inverse check failed");
            return out;
        }
        out = out + term;
    }
    throw std::domain_error("polynomial_inverse: inverse is not a polynomial");
}

inline RPolyMatrix at_wbar_zero(const RPolyMatrix& m) { return m.map([](const RPoly& p) { return p.at_wbar_zero(); }); }
inline RPolyMatrix at_z_zero(const RPolyMatrix& m) { return m.map([](const RPoly& p) { return p.at_z_zero(); }); }

/// Sandwich by diagonal matrices: diag(l) m diag(r).
inline RPolyMatrix scale(const RPolyMatrix& m, const std::vector<Rational>& l, const std::vector<Rational>& r) {
    RPolyMatrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) * RPoly(l[i] * r[j]);
    return out;
}

inline RPolyMatrix block(const RPolyMatrix& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
    RPolyMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(r0 + i, c0 + j);
    return out;
}

/// Series of poly * (1 - z wbar)^{-exponent}, truncated at M.
inline MatrixSeries<Rational> prefactored_series(const RPolyMatrix& poly, const Rational& exponent, std::size_t M) {
    return PrefactoredKernel<Rational>{poly, exponent}.series(M);
}

inline std::string first_difference(const RPolyMatrix& got, const RPolyMatrix& want, const std::string& label) {
    for (std::size_t i = 0; i < got.rows(); ++i)
        for (std::size_t j = 0; j < got.cols(); ++j)
            if (!(got(i, j) == want(i, j))) {
                std::ostringstream os;
                os << label << " entry (" << i << "," << j << "): got " << got(i, j) << ", expected " << want(i, j);
                return os.str();
            }
    return {};
}

}  // namespace detail

struct TridiscNormalized {
    KernelSpec spec;
    RPolyMatrix core;       // P(z,0)^{-1} P(z,w) P(0,w)^{-1}
    Matrix<Rational> D;     // G(0,0)
    Rational exponent;      // of (1 - z wbar)^{-1}

    /// H = D core D = D^{1/2} (normalized polynomial part) D^{1/2}.
    RPolyMatrix symmetrized() const {
        std::vector<Rational> d{D(0, 0), D(1, 1), D(2, 2)};
        return detail::scale(core, d, d);
    }

    /// Square roots of D when all are rational.
    std::optional<std::vector<Rational>> sqrt_d() const {
        std::vector<Rational> out;
        for (std::size_t i = 0; i < 3; ++i) {
            auto r = exact_sqrt(D(i, i));
            if (!r) return std::nullopt;
            out.push_back(*r);
        }
        return out;
    }

    /// Polynomial part of the normalized kernel, exact when D has rational roots.
    std::optional<RPolyMatrix> exact_poly() const {
        auto r = sqrt_d();
        if (!r) return std::nullopt;
        return detail::scale(core, *r, *r);
    }

    Matrix<std::complex<double>> poly_at(std::complex<double> z, std::complex<double> w) const {
        Matrix<std::complex<double>> m = evaluate(core, z, std::conj(w));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m(i, j) *= std::sqrt(D(i, i).to_double() * D(j, j).to_double());
        return m;
    }

    Matrix<std::complex<double>> evaluate_at(std::complex<double> z, std::complex<double> w) const {
        return poly_at(z, w) * std::pow(1.0 - z * std::conj(w), -exponent.to_double());
    }

    /// Normalized coefficients of z^m wbar^p, exact when D has rational roots.
    std::optional<std::vector<Matrix<Rational>>> exact_coefficients(std::size_t M) const {
        auto p = exact_poly();
        if (!p) return std::nullopt;
        const auto s = detail::prefactored_series(*p, exponent, M);
        std::vector<Matrix<Rational>> out;
        for (std::size_t m = 0; m <= M; ++m)
            for (std::size_t q = 0; q <= M; ++q) out.push_back(s.coeff(m, q));
        return out;
    }

    std::vector<Matrix<std::complex<double>>> numeric_coefficients(std::size_t M) const {
        const auto s = detail::prefactored_series(core, exponent, M);
        std::vector<Matrix<std::complex<double>>> out;
        for (std::size_t m = 0; m <= M; ++m)
            for (std::size_t q = 0; q <= M; ++q) {
                auto c = to_complex(s.coeff(m, q));
                for (std::size_t i = 0; i < 3; ++i)
                    for (std::size_t j = 0; j < 3; ++j) c(i, j) *= std::sqrt(D(i, i).to_double() * D(j, j).to_double());
                out.push_back(c);
            }
        return out;
    }
};

inline TridiscNormalized tridisc_normalized(const KernelSpec& spec) {
    spec.require_tridisc("tridisc_normalized");
    spec.validate();
    const auto G = tridisc_jet_closed_form(spec);
    TridiscNormalized out;
    out.spec = spec;
    out.exponent = G.exponent;
    out.D = Matrix<Rational>::diagonal({Rational(1), spec.beta, spec.gamma});
    const auto left = detail::polynomial_inverse(detail::at_wbar_zero(G.poly));
    const auto right = detail::polynomial_inverse(detail::at_z_zero(G.poly));
    out.core = left * G.poly * right;
    return out;
}

inline Matrix<std::complex<double>> tridisc_normalized(const KernelSpec& spec, std::complex<double> z,
                                                       std::complex<double> w) {
    return tridisc_normalized(spec).evaluate_at(z, w);
}

/// The displayed polynomial part of the normalized kernel in symmetrized form
/// D^{1/2} (.) D^{1/2}, which is rational.
inline RPolyMatrix tridisc_display_symmetrized(const KernelSpec& spec) {
    const RPoly z = RPoly::z(), wb = RPoly::wbar(), x = z * wb, one(1);
    const RPoly b(spec.beta), g(spec.gamma), sg(spec.beta + spec.gamma);
    const RPoly u = one - x;
    const RPoly k = RPoly(Rational(1) + spec.beta + spec.gamma);
    RPolyMatrix m(3, 3);
    m(0, 0) = u * u - sg * u * x + sg * k * x * x;
    m(0, 1) = -(b * k * z * x);
    m(0, 2) = -(g * k * z * x);
    m(1, 0) = -(b * k * x * wb);
    m(1, 1) = b * (one + b * x);
    m(1, 2) = b * g * x;
    m(2, 0) = -(g * k * x * wb);
    m(2, 1) = b * g * x;
    m(2, 2) = g * (one + g * x);
    return m;
}

/// G_1 in symmetrized form diag(1, sqrt(sigma)) G_1 diag(1, sqrt(sigma)), sigma = beta+gamma.
inline RPolyMatrix g1_display_symmetrized(const KernelSpec& spec, const Rational& sigma) {
    const RPoly z = RPoly::z(), wb = RPoly::wbar(), x = z * wb, one(1);
    const RPoly sg(sigma), u = one - x, k = RPoly(Rational(1) + sigma);
    (void)spec;
    RPolyMatrix m(2, 2);
    m(0, 0) = u * u - sg * u * x + sg * k * x * x;
    m(0, 1) = -(sg * k * z * x);
    m(1, 0) = -(sg * k * x * wb);
    m(1, 1) = sg * (one + sg * x);
    return m;
}

/// U = 1 (+) (1/sqrt(sigma)) [[sqrt(beta), sqrt(gamma)], [-sqrt(gamma), sqrt(beta)]].
inline std::optional<Matrix<Rational>> tridisc_u_exact(const Rational& beta, const Rational& gamma,
                                                        const Rational& sigma) {
    auto rb = exact_sqrt(beta), rg = exact_sqrt(gamma), rs = exact_sqrt(sigma);
    if (!rb || !rg || !rs) return std::nullopt;
    return Matrix<Rational>{{Rational(1), Rational(0), Rational(0)},
                            {Rational(0), *rb / *rs, *rg / *rs},
                            {Rational(0), -*rg / *rs, *rb / *rs}};
}

inline Matrix<double> tridisc_u_numeric(const Rational& beta, const Rational& gamma, const Rational& sigma) {
    const double b = std::sqrt(beta.to_double()), g = std::sqrt(gamma.to_double()), s = std::sqrt(sigma.to_double());
    return Matrix<double>{{1.0, 0.0, 0.0}, {0.0, b / s, g / s}, {0.0, -g / s, b / s}};
}

/// Exact comparison of the G_1 block with the normalized bidisc (alpha, sigma, n = 1)
/// kernel, both in symmetrized form, as series up to order M.
inline CheckResult tridisc_match_bidisc(const KernelSpec& spec, std::optional<Rational> sigma_override = std::nullopt,
                                        std::size_t M = 6) {
    spec.require_tridisc("tridisc_match_bidisc");
    const Rational sigma = sigma_override.value_or(spec.beta + spec.gamma);
    const auto tn = tridisc_normalized(spec);
    const RPolyMatrix W{{RPoly(1), RPoly(0), RPoly(0)}, {RPoly(0), RPoly(1), RPoly(1)}};
    const RPolyMatrix g1 = W * tn.symmetrized() * W.transpose();
    const auto lhs = detail::prefactored_series(g1, tn.exponent, M);
    const auto bidisc = normalized_coeffs(KernelSpec::bidisc(spec.alpha, sigma, 1), M);
    CheckResult res;
    for (std::size_t m = 0; m <= M; ++m)
        for (std::size_t p = 0; p <= M; ++p) {
            ++res.checked;
            if (!(lhs.coeff(m, p) == bidisc.N.coeff(m, p))) {
                res.fail("G1 vs bidisc(" + spec.alpha.to_string() + ", " + sigma.to_string() + ") at z^" +
                                std::to_string(m) + " wbar^" + std::to_string(p) + ": tridisc " +
                                lhs.coeff(m, p).to_string() + ", bidisc " + bidisc.N.coeff(m, p).to_string());
                return res;
            }
        }
    return res;
}

struct TridiscOptions {
    std::optional<Rational> sigma_override;  // replaces beta+gamma in U, G_1 and the bidisc match
    std::uint64_t seed = 0;
    std::size_t samples = 20;
    std::size_t coeff_trunc = 3;
    double tol = 1e-12;
};

struct TridiscReport {
    KernelSpec spec;
    Rational sigma;
    bool exact_u = false;
    std::optional<Matrix<Rational>> U_exact;
    Matrix<double> U_numeric;
    double unitarity_residual = 0.0;
    bool unitary = false;
    bool normalized_at_zero = false;  // G~(z,0) = I
    bool display_matches = false;
    bool block_diagonal = false;
    bool g1_matches_display = false;
    bool g1_at_zero_identity = false;
    Rational g2_exponent;
    bool g2_matches = false;
    bool literal_conjugation = false;  // U G~ U^* = G_1 (+) G_2 checked with U itself
    double literal_residual = 0.0;     // numeric path only
    CheckResult match_bidisc;
    bool g2_cocycle = false;
    bool g1_irreducible = false;
    CommutantReport commutant;
    std::vector<std::size_t> projection_ranks;
    bool reducible = false;
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

inline TridiscReport tridisc_block_diagonalize(const KernelSpec& spec, const TridiscOptions& opt = {}) {
    spec.require_tridisc("tridisc_block_diagonalize");
    TridiscReport rep;
    rep.spec = spec;
    rep.sigma = opt.sigma_override.value_or(spec.beta + spec.gamma);
    auto fail = [&](std::string msg) { rep.failures.push_back(std::move(msg)); };

    const auto tn = tridisc_normalized(spec);
    const auto H = tn.symmetrized();

    // G~(z,0) = I, i.e. H(z,0) = D.
    rep.normalized_at_zero = detail::at_wbar_zero(H) == lift_constant(tn.D);
    if (!rep.normalized_at_zero) fail("G~(z,0) != I: " + detail::at_wbar_zero(H).to_string());

    const auto display = tridisc_display_symmetrized(spec);
    rep.display_matches = H == display;
    if (!rep.display_matches) fail(detail::first_difference(H, display, "normalized kernel vs display"));

    // W H W^t with W = [[1,0,0],[0,1,1],[0,-gamma,beta]] is Lambda^{-1} U G~ U^* Lambda^{-1}.
    const RPolyMatrix W{{RPoly(1), RPoly(0), RPoly(0)},
                        {RPoly(0), RPoly(1), RPoly(1)},
                        {RPoly(0), RPoly(-spec.gamma), RPoly(spec.beta)}};
    const auto C = W * H * W.transpose();
    rep.block_diagonal = C(0, 2).is_zero() && C(1, 2).is_zero() && C(2, 0).is_zero() && C(2, 1).is_zero();
    if (!rep.block_diagonal) fail("off-block entries do not vanish: " + C.to_string());

    rep.g2_exponent = tn.exponent;
    const Rational g2_scale = spec.beta * spec.gamma * (spec.beta + spec.gamma);
    rep.g2_matches = C(2, 2) == RPoly(g2_scale) && rep.g2_exponent == spec.alpha + spec.beta + spec.gamma + Rational(2);
    if (!rep.g2_matches) {
        std::ostringstream os;
        os << "G2 polynomial part is not 1: " << C(2, 2) * RPoly(Rational(1) / g2_scale);
        fail(os.str());
    }

    const auto g1 = detail::block(C, 0, 0, 2, 2);
    const auto g1_display = g1_display_symmetrized(spec, rep.sigma);
    rep.g1_matches_display = g1 == g1_display;
    if (!rep.g1_matches_display) fail(detail::first_difference(g1, g1_display, "G1 vs display"));
    rep.g1_at_zero_identity =
        detail::at_wbar_zero(g1) == lift_constant(Matrix<Rational>::diagonal({Rational(1), spec.beta + spec.gamma}));
    if (!rep.g1_at_zero_identity) fail("G1(z,0) != I");

    // U itself.
    rep.U_exact = tridisc_u_exact(spec.beta, spec.gamma, rep.sigma);
    rep.exact_u = rep.U_exact.has_value();
    rep.U_numeric = tridisc_u_numeric(spec.beta, spec.gamma, rep.sigma);
    if (rep.exact_u) {
        const auto& U = *rep.U_exact;
        rep.unitary = U * U.transpose() == Matrix<Rational>::identity(3);
        rep.unitarity_residual = rep.unitary ? 0.0 : max_abs(to_double(U * U.transpose() - Matrix<Rational>::identity(3)));
        const auto G = *tn.exact_poly();
        const auto conj = lift_constant(U) * G * lift_constant(U.transpose());
        const auto rs = *exact_sqrt(rep.sigma);
        RPolyMatrix want(3, 3);
        want(0, 0) = g1_display(0, 0);
        want(0, 1) = g1_display(0, 1) * RPoly(Rational(1) / rs);
        want(1, 0) = g1_display(1, 0) * RPoly(Rational(1) / rs);
        want(1, 1) = g1_display(1, 1) * RPoly(Rational(1) / rep.sigma);
        want(2, 2) = RPoly(1);
        rep.literal_conjugation = conj == want;
        if (!rep.literal_conjugation) fail(detail::first_difference(conj, want, "U G~ U^*"));
    } else {
        const auto& U = rep.U_numeric;
        rep.unitarity_residual = max_abs(U * U.transpose() - Matrix<double>::identity(3));
        rep.unitary = rep.unitarity_residual < opt.tol;
        const auto Uc = to_complex(U);
        const double s = std::sqrt(rep.sigma.to_double());
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> radius(0.0, 0.7), angle(0.0, 2.0 * M_PI);
        double worst = 0.0;
        for (std::size_t k = 0; k < opt.samples; ++k) {
            const auto z = std::polar(radius(rng), angle(rng)), w = std::polar(radius(rng), angle(rng));
            const auto conj = Uc * tn.poly_at(z, w) * Uc.transpose();
            auto want = evaluate(g1_display, z, std::conj(w));
            Matrix<std::complex<double>> full(3, 3);
            full(0, 0) = want(0, 0);
            full(0, 1) = want(0, 1) / s;
            full(1, 0) = want(1, 0) / s;
            full(1, 1) = want(1, 1) / (s * s);
            full(2, 2) = 1.0;
            worst = std::max(worst, max_abs_diff(conj, full));
        }
        rep.literal_residual = worst;
        rep.literal_conjugation = worst < opt.tol;
        if (!rep.literal_conjugation) fail("U G~ U^* off by " + std::to_string(worst));
    }
    if (!rep.unitary) fail("U is not unitary, residual " + std::to_string(rep.unitarity_residual));

    rep.match_bidisc = tridisc_match_bidisc(spec, opt.sigma_override);
    if (!rep.match_bidisc.pass) fail(rep.match_bidisc.counterexample);

    // G_2 = S^e transforms under Gamma = c^{e/2}.
    {
        std::mt19937_64 rng(opt.seed + 1);
        rep.g2_cocycle = true;
        const Rational half_e = tn.exponent / Rational(2);
        for (int k = 0; k < 5 && rep.g2_cocycle; ++k) {
            const bool exact = half_e.is_integer();
            const Rational bound = exact ? Rational(7, 10) : Rational(1, 4);
            auto r = scalar_cocycle_check(half_e, sample_mobius(rng, bound), sample_disc_point(rng, bound),
                                          sample_disc_point(rng, bound));
            if (!r.pass) {
                rep.g2_cocycle = false;
                fail("G2 cocycle: " + r.counterexample);
            }
        }
    }

    rep.g1_irreducible = irreducibility_verdict(KernelSpec::bidisc(spec.alpha, rep.sigma, 1)).verdict == Verdict::irreducible;
    if (!rep.g1_irreducible) fail("bidisc image of G1 is not irreducible");

    // Commutant of the normalized coefficients.
    if (auto exact = tn.exact_coefficients(opt.coeff_trunc)) {
        rep.commutant = commutant_basis(3, *exact);
    } else {
        rep.commutant = commutant_basis(3, tn.numeric_coefficients(opt.coeff_trunc));
    }
    rep.projection_ranks = reducing_projections(rep.commutant).ranks();
    rep.reducible = rep.commutant.dimension >= 2;
    if (!rep.reducible) fail("commutant of the normalized coefficients is trivial");
    if (rep.projection_ranks != std::vector<std::size_t>{2, 1})
        fail("reducing projections do not split as 2+1");
    return rep;
}

}  // namespace jetkernel
