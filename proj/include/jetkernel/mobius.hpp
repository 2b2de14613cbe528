#pragma once

// Möbius maps phi_{t,a}(z) = t (z - a)/(1 - conj(a) z) of the disc over the
// Gaussian rationals, the scalar cocycles c and p, the matrix cocycle J and
// the identities they satisfy.
//
// Functions taking a map g use g itself: c(g, z) = g'(z) and
// p(g, z) = -conj(a)/(1 - conj(a) z) for g = phi_{t,a}. Callers that work
// with phi^{-1} pass invert(phi).

#include "jetkernel/kernel.hpp"
#include "jetkernel/matrix.hpp"
#include "jetkernel/normalize.hpp"
#include "jetkernel/polynomial.hpp"
#include "jetkernel/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetkernel {

struct MobiusElement {
    ComplexRational t{1};
    ComplexRational a{0};

    static MobiusElement identity() { return {}; }

    /// t = ((1 - s^2) + 2is)/(1 + s^2), exactly on the unit circle.
    static MobiusElement from_parameters(const Rational& s, const ComplexRational& a) {
        const Rational d = Rational(1) + s * s;
        MobiusElement g{ComplexRational((Rational(1) - s * s) / d, Rational(2) * s / d), a};
        g.validate();
        return g;
    }

    void validate() const {
        if (!(t.norm2() == Rational(1))) throw std::domain_error("MobiusElement: |t| != 1");
        if (!(a.norm2() < Rational(1))) throw std::domain_error("MobiusElement: |a| >= 1");
    }

    std::complex<double> t_c() const { return t.to_complex(); }
    std::complex<double> a_c() const { return a.to_complex(); }

    friend bool operator==(const MobiusElement& x, const MobiusElement& y) { return x.t == y.t && x.a == y.a; }
};

inline void require_disc(const ComplexRational& z, const char* what) {
    if (!(z.norm2() < Rational(1))) throw std::domain_error(std::string(what) + ": point outside the disc");
}

inline ComplexRational mobius_apply(const MobiusElement& g, const ComplexRational& z) {
    require_disc(z, "mobius_apply");
    return g.t * (z - g.a) / (ComplexRational(1) - conj(g.a) * z);
}

inline std::complex<double> mobius_apply(const MobiusElement& g, std::complex<double> z) {
    return g.t_c() * (z - g.a_c()) / (1.0 - std::conj(g.a_c()) * z);
}

inline MobiusElement mobius_invert(const MobiusElement& g) {
    MobiusElement inv{conj(g.t), -(g.t * g.a)};
    inv.validate();
    return inv;
}

/// outer ∘ inner: phi_{s,b} phi_{t,a} = phi_{s(t + conj(a) b)/(1 + t a conj(b)), (a + conj(t) b)/(1 + conj(t a) b)}.
inline MobiusElement mobius_compose(const MobiusElement& outer, const MobiusElement& inner) {
    const auto& s = outer.t;
    const auto& b = outer.a;
    const auto& t = inner.t;
    const auto& a = inner.a;
    MobiusElement out{s * (t + conj(a) * b) / (ComplexRational(1) + t * a * conj(b)),
                      (a + conj(t) * b) / (ComplexRational(1) + conj(t * a) * b)};
    out.validate();
    return out;
}

/// c(g, z) = g'(z) = t (1 - |a|^2)/(1 - conj(a) z)^2.
inline ComplexRational cocycle_c(const MobiusElement& g, const ComplexRational& z) {
    require_disc(z, "cocycle_c");
    const auto den = ComplexRational(1) - conj(g.a) * z;
    return g.t * ComplexRational(Rational(1) - g.a.norm2()) / (den * den);
}

/// p(g, z) = -conj(a)/(1 - conj(a) z), i.e. -g''/(2 g').
inline ComplexRational cocycle_p(const MobiusElement& g, const ComplexRational& z) {
    require_disc(z, "cocycle_p");
    return -conj(g.a) / (ComplexRational(1) - conj(g.a) * z);
}

inline std::complex<double> cocycle_c(const MobiusElement& g, std::complex<double> z) {
    const auto den = 1.0 - std::conj(g.a_c()) * z;
    return g.t_c() * (1.0 - std::norm(g.a_c())) / (den * den);
}

inline std::complex<double> cocycle_p(const MobiusElement& g, std::complex<double> z) {
    return -std::conj(g.a_c()) / (1.0 - std::conj(g.a_c()) * z);
}

enum class Mode { exact, numeric };

/// -(alpha+beta)/2 - n, the overall power of c in J.
inline Rational jmatrix_exponent(const KernelSpec& spec) {
    return -(spec.alpha + spec.beta) / Rational(2) - Rational(spec.jet_order);
}

/// J_g(z)_ij = c^{-(alpha+beta)/2-n} (beta)_j/(beta)_i C(j,i) c^{n-j} p^{j-i}, i <= j.
/// Exact mode needs (alpha+beta)/2 to be an integer.
inline Matrix<ComplexRational> jmatrix_exact(const KernelSpec& spec, const MobiusElement& g, const ComplexRational& z) {
    spec.require_bidisc("jmatrix");
    const Rational e = jmatrix_exponent(spec);
    if (!e.is_integer())
        throw std::domain_error("jmatrix: exponent " + e.to_string() +
                                " is not an integer; use numeric mode for this parameter set");
    const long n = spec.jet_order;
    const auto c = cocycle_c(g, z), p = cocycle_p(g, z);
    Matrix<ComplexRational> J(n + 1, n + 1);
    for (long i = 0; i <= n; ++i)
        for (long j = i; j <= n; ++j) {
            const Rational coef = pochhammer(spec.beta, j) / pochhammer(spec.beta, i) * binomial(j, i);
            J(i, j) = ComplexRational(coef) * pow(c, e.to_long() + n - j) * pow(p, j - i);
        }
    return J;
}

/// Principal-branch version for arbitrary rational parameters.
inline Matrix<std::complex<double>> jmatrix_numeric(const KernelSpec& spec, const MobiusElement& g,
                                                    std::complex<double> z) {
    spec.require_bidisc("jmatrix");
    const long n = spec.jet_order;
    const auto c = cocycle_c(g, z), p = cocycle_p(g, z);
    const auto lead = std::pow(c, jmatrix_exponent(spec).to_double());
    Matrix<std::complex<double>> J(n + 1, n + 1);
    for (long i = 0; i <= n; ++i)
        for (long j = i; j <= n; ++j) {
            const double coef = (pochhammer(spec.beta, j) / pochhammer(spec.beta, i) * binomial(j, i)).to_double();
            J(i, j) = coef * lead * std::pow(c, static_cast<double>(n - j)) * std::pow(p, static_cast<double>(j - i));
        }
    return J;
}

struct IdentityCheck {
    bool pass = true;
    double deviation = 0.0;  // numeric mode; 0 for exact passes
    std::string counterexample;
};

/// J_h(z) J_g(h z) = J_{g∘h}(z).
inline IdentityCheck verify_matrix_cocycle(const KernelSpec& spec, const MobiusElement& g, const MobiusElement& h,
                                           const ComplexRational& z, Mode mode, double tol = 1e-10) {
    IdentityCheck res;
    const auto gh = mobius_compose(g, h);
    if (mode == Mode::exact) {
        const auto lhs = jmatrix_exact(spec, h, z) * jmatrix_exact(spec, g, mobius_apply(h, z));
        const auto rhs = jmatrix_exact(spec, gh, z);
        res.pass = lhs == rhs;
        if (!res.pass) res.counterexample = "lhs " + lhs.to_string() + " rhs " + rhs.to_string();
    } else {
        const auto zc = z.to_complex();
        const auto lhs = jmatrix_numeric(spec, h, zc) * jmatrix_numeric(spec, g, mobius_apply(h, zc));
        const auto rhs = jmatrix_numeric(spec, gh, zc);
        res.deviation = max_abs_diff(lhs, rhs);
        res.pass = res.deviation < tol;
        if (!res.pass) res.counterexample = "deviation " + std::to_string(res.deviation);
    }
    return res;
}

/// c(g, h z) c(h, z) = c(g∘h, z).
inline bool verify_chain_rule(const MobiusElement& g, const MobiusElement& h, const ComplexRational& z) {
    return cocycle_c(g, mobius_apply(h, z)) * cocycle_c(h, z) == cocycle_c(mobius_compose(g, h), z);
}

/// p(g, h z) c(h, z) + p(h, z) = p(g∘h, z).
inline bool verify_p_cocycle(const MobiusElement& g, const MobiusElement& h, const ComplexRational& z) {
    return cocycle_p(g, mobius_apply(h, z)) * cocycle_c(h, z) + cocycle_p(h, z) == cocycle_p(mobius_compose(g, h), z);
}

// ── binomial identities ────────────────────────────────────────────────────

/// Both sides of
///   sum_{l=0}^{i-k} (-1)^l (l+k)! C(i,l+k) C(j,l+k) C(l+k,l) (a+j)_{i-l-k} = k! C(i,k) C(j,k) (a+k)_{i-k}
/// at a given a.
inline std::pair<Rational, Rational> binomial_identity_sides(long i, long j, long k, const Rational& a) {
    Rational lhs;
    for (long l = 0; l <= i - k; ++l) {
        Rational term = factorial(l + k) * binomial(i, l + k) * binomial(j, l + k) * binomial(l + k, l) *
                        pochhammer(a + Rational(j), i - l - k);
        lhs += l % 2 ? -term : term;
    }
    Rational rhs = factorial(k) * binomial(i, k) * binomial(j, k) * pochhammer(a + Rational(k), i - k);
    return {lhs, rhs};
}

/// Both sides are polynomials in a of degree i-k, so agreement at i-k+1
/// distinct points proves the identity.
inline bool binomial_identity_check(long i, long j, long k) {
    if (k < 0 || k > i || i > j) throw std::invalid_argument("binomial_identity_check: needs 0 <= k <= i <= j");
    for (long t = 0; t <= i - k; ++t) {
        auto [lhs, rhs] = binomial_identity_sides(i, j, k, Rational(2 * t + 1, 3));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

/// Left and right sides of the quasi-invariance reduction as polynomials in x = |z|^2:
///   sum_r r! C(i,r) C(j,r) (beta+j)_{i-r} (1-x)^r x^{i-r}
///   sum_k k! C(i,k) C(j,k) (beta)_i/(beta)_k x^{i-k}
inline std::pair<Polynomial<Rational>, Polynomial<Rational>> quasi_invariance_sides(long i, long j,
                                                                                   const Rational& beta) {
    using P = Polynomial<Rational>;
    const P one_minus_x(std::vector<Rational>{1, -1});
    P lhs, rhs;
    for (long r = 0; r <= i; ++r) {
        P pow_r(Rational(1));
        for (long q = 0; q < r; ++q) pow_r = pow_r * one_minus_x;
        const Rational coef = factorial(r) * binomial(i, r) * binomial(j, r) * pochhammer(beta + Rational(j), i - r);
        lhs += pow_r * P::monomial(coef, static_cast<std::size_t>(i - r));
    }
    for (long k = 0; k <= i; ++k) {
        const Rational coef = factorial(k) * binomial(i, k) * binomial(j, k) * pochhammer(beta, i) / pochhammer(beta, k);
        rhs += P::monomial(coef, static_cast<std::size_t>(i - k));
    }
    return {lhs, rhs};
}

inline bool quasi_invariance_polynomial(long i, long j, const Rational& beta, long n) {
    if (i < 0 || i > j || j > n) throw std::invalid_argument("quasi_invariance_polynomial: needs 0 <= i <= j <= n");
    if (beta.sign() <= 0) throw std::invalid_argument("quasi_invariance_polynomial: beta must be positive");
    auto [lhs, rhs] = quasi_invariance_sides(i, j, beta);
    return lhs == rhs;
}

// ── quasi-invariance ─────────────────────────────────────────────────────────

/// h(w) = K(w, w)^t from the closed-form jet kernel, exactly.
inline Matrix<ComplexRational> jet_metric_exact(const KernelSpec& spec, const ComplexRational& w) {
    const auto entries = jet_kernel_closed_form(spec);
    Matrix<ComplexRational> h(spec.size(), spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i)
        for (std::size_t j = 0; j < spec.size(); ++j) h(j, i) = entries[i][j].evaluate_exact(w, w);
    return h;
}

inline Matrix<std::complex<double>> jet_metric_numeric(const KernelSpec& spec, std::complex<double> w) {
    return jet_kernel_evaluate(spec, w, w).transpose();
}

/// h(g(0)) = conj(J_g(0))^t h(0) J_g(0). Exact whenever alpha+beta is an
/// integer: at 0, |c| = 1 - |a|^2 is rational, so the fractional power of c
/// only enters through |c|^{-(alpha+beta)-2n}.
inline IdentityCheck quasi_invariance_at_zero(const KernelSpec& spec, const MobiusElement& g, Mode mode,
                                              double tol = 1e-10) {
    spec.require_bidisc("quasi_invariance_at_zero");
    IdentityCheck res;
    const ComplexRational zero(0);
    const long n = spec.jet_order;
    const Rational s = spec.alpha + spec.beta;
    if (mode == Mode::exact) {
        if (!s.is_integer())
            throw std::domain_error("quasi_invariance_at_zero: alpha+beta must be an integer in exact mode");
        const auto c = cocycle_c(g, zero), p = cocycle_p(g, zero);
        Matrix<ComplexRational> J(n + 1, n + 1);  // J without the scalar c^{-(alpha+beta)/2-n}
        for (long i = 0; i <= n; ++i)
            for (long j = i; j <= n; ++j)
                J(i, j) = ComplexRational(pochhammer(spec.beta, j) / pochhammer(spec.beta, i) * binomial(j, i)) *
                          pow(c, n - j) * pow(p, j - i);
        const Rational abs_c = Rational(1) - g.a.norm2();
        const Rational scale = pow(abs_c, -(s.to_long() + 2 * n));
        const auto rhs = J.adjoint() * jet_metric_exact(spec, zero) * J * ComplexRational(scale);
        const auto lhs = jet_metric_exact(spec, mobius_apply(g, zero));
        res.pass = lhs == rhs;
        if (!res.pass) res.counterexample = "lhs " + lhs.to_string() + " rhs " + rhs.to_string();
    } else {
        const auto J = jmatrix_numeric(spec, g, 0.0);
        const auto rhs = J.adjoint() * jet_metric_numeric(spec, 0.0) * J;
        const auto lhs = jet_metric_numeric(spec, mobius_apply(g, std::complex<double>(0.0)));
        res.deviation = max_abs_diff(lhs, rhs);
        res.pass = res.deviation < tol;
        if (!res.pass) res.counterexample = "deviation " + std::to_string(res.deviation);
    }
    return res;
}

/// (1 - z conj(w))^{-2e} = Gamma(z) (1 - gz conj(gw))^{-2e} conj(Gamma(w)), Gamma = (g')^e.
inline IdentityCheck scalar_cocycle_check(const Rational& e, const MobiusElement& g, const ComplexRational& z,
                                          const ComplexRational& w, double tol = 1e-10) {
    IdentityCheck res;
    if (e.is_integer()) {
        const long k = e.to_long();
        const auto G2 = [&](const ComplexRational& u, const ComplexRational& v) {
            return pow(ComplexRational(1) - u * conj(v), -2 * k);
        };
        const auto lhs = G2(z, w);
        const auto rhs = pow(cocycle_c(g, z), k) * G2(mobius_apply(g, z), mobius_apply(g, w)) * conj(pow(cocycle_c(g, w), k));
        res.pass = lhs == rhs;
        if (!res.pass) {
            std::ostringstream os;
            os << "lhs " << lhs << " rhs " << rhs;
            res.counterexample = os.str();
        }
    } else {
        const double ed = e.to_double();
        const auto zc = z.to_complex(), wc = w.to_complex();
        const auto G2 = [&](std::complex<double> u, std::complex<double> v) {
            return std::pow(1.0 - u * std::conj(v), -2.0 * ed);
        };
        const auto lhs = G2(zc, wc);
        const auto rhs = std::pow(cocycle_c(g, zc), ed) * G2(mobius_apply(g, zc), mobius_apply(g, wc)) *
                         std::conj(std::pow(cocycle_c(g, wc), ed));
        res.deviation = std::abs(lhs - rhs);
        res.pass = res.deviation < tol;
        if (!res.pass) res.counterexample = "deviation " + std::to_string(res.deviation);
    }
    return res;
}

// ── sampling ─────────────────────────────────────────────────────────────────

/// Gaussian rational with |z| < bound, small denominators.
inline ComplexRational sample_disc_point(std::mt19937_64& rng, const Rational& bound, long max_den = 9) {
    std::uniform_int_distribution<long> den(1, max_den), num(-max_den, max_den);
    while (true) {
        ComplexRational z(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
        if (z.norm2() < bound * bound) return z;
    }
}

/// Random map with t from the rational circle parametrization and |a| < bound.
inline MobiusElement sample_mobius(std::mt19937_64& rng, const Rational& bound = Rational(7, 10)) {
    std::uniform_int_distribution<long> num(-12, 12), den(1, 7);
    return MobiusElement::from_parameters(Rational(num(rng), den(rng)), sample_disc_point(rng, bound));
}

/// Rotation within about 0.2 rad of 1 and |a| < 1/4, so that principal-branch
/// powers of c stay on one sheet.
inline MobiusElement sample_mobius_near_identity(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-4, 4);
    return MobiusElement::from_parameters(Rational(num(rng), 40), sample_disc_point(rng, Rational(1, 4)));
}

}  // namespace jetkernel
