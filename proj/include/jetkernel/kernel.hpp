#pragma once

// Jet kernels of products of Szegő-kernel powers on the bidisc and tridisc.
//
// Orientation used throughout: entry (i, j) of a jet kernel is
// d_z^i dbar_w^j applied in the normal direction(s), i.e. the row index is the
// holomorphic derivative order and the column index the anti-holomorphic one.
// With this choice the coefficient a_{mp} of z^m wbar^p satisfies
// (a_{m0})_{r,r+m} != 0 and a_{mp} = a_{pm}^t.

#include "jetkernel/matrix.hpp"
#include "jetkernel/polynomial.hpp"
#include "jetkernel/rational.hpp"
#include "jetkernel/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace jetkernel {

enum class Domain { bidisc, tridisc };

struct KernelSpec {
    Domain domain = Domain::bidisc;
    Rational alpha{1};
    Rational beta{1};
    Rational gamma{0};  // tridisc only
    int jet_order = 0;  // n: the bidisc jet has size n + 1

    static KernelSpec bidisc(Rational alpha, Rational beta, int n) {
        KernelSpec s{Domain::bidisc, std::move(alpha), std::move(beta), Rational(0), n};
        s.validate();
        return s;
    }
    static KernelSpec tridisc(Rational alpha, Rational beta, Rational gamma) {
        KernelSpec s{Domain::tridisc, std::move(alpha), std::move(beta), std::move(gamma), 1};
        s.validate();
        return s;
    }

    /// Matrix size of the jet kernel.
    std::size_t size() const {
        return domain == Domain::bidisc ? static_cast<std::size_t>(jet_order) + 1 : 3;
    }

    void validate() const {
        if (alpha.sign() <= 0 || beta.sign() <= 0)
            throw std::invalid_argument("KernelSpec: alpha and beta must be positive");
        if (domain == Domain::tridisc && gamma.sign() <= 0)
            throw std::invalid_argument("KernelSpec: gamma must be positive on the tridisc");
        if (jet_order < 0) throw std::invalid_argument("KernelSpec: jet order must be nonnegative");
    }

    void require_bidisc(const char* what) const {
        if (domain != Domain::bidisc) throw std::invalid_argument(std::string(what) + " needs a bidisc spec");
    }
    void require_tridisc(const char* what) const {
        if (domain != Domain::tridisc) throw std::invalid_argument(std::string(what) + " needs a tridisc spec");
    }
};

/// Coefficients of S(z,w)^r = (1 - z wbar)^{-r}: (r)_k / k! on the diagonal m = p = k.
inline MatrixSeries<Rational> szego_power_series(const Rational& r, std::size_t M) {
    return MatrixSeries<Rational>::scalar(M, [&](std::size_t m, std::size_t p) {
        if (m != p) return Rational(0);
        return pochhammer(r, static_cast<long>(m)) / factorial(static_cast<long>(m));
    });
}

/// c * z^p * wbar^q * S(z,w)^r
struct SzegoTerm {
    Rational c;
    int p = 0;
    int q = 0;
    Rational r;
};

class SzegoTermSum {
public:
    SzegoTermSum() = default;

    void add(const Rational& c, int p, int q, const Rational& r) {
        if (c.is_zero()) return;
        for (auto it = terms_.begin(); it != terms_.end(); ++it) {
            if (it->p == p && it->q == q && it->r == r) {
                it->c += c;
                if (it->c.is_zero()) terms_.erase(it);
                return;
            }
        }
        terms_.push_back({c, p, q, r});
    }

    const std::vector<SzegoTerm>& terms() const { return terms_; }

    /// Coefficient table up to z^M wbar^M.
    MatrixSeries<Rational> series(std::size_t M) const {
        MatrixSeries<Rational> s(1, M);
        for (const auto& t : terms_) {
            for (std::size_t k = 0; t.p + k <= M && t.q + k <= M; ++k) {
                Rational coef = t.c * pochhammer(t.r, static_cast<long>(k)) / factorial(static_cast<long>(k));
                s.coeff(t.p + k, t.q + k)(0, 0) += coef;
            }
        }
        return s;
    }

    /// Principal-branch evaluation; 1 - z wbar has positive real part on the disc.
    std::complex<double> evaluate(std::complex<double> z, std::complex<double> w) const {
        std::complex<double> acc(0.0);
        const std::complex<double> one_minus = 1.0 - z * std::conj(w);
        for (const auto& t : terms_)
            acc += t.c.to_double() * std::pow(z, t.p) * std::pow(std::conj(w), t.q) *
                   std::pow(one_minus, -t.r.to_double());
        return acc;
    }

    /// Exact evaluation; every exponent r must be an integer.
    ComplexRational evaluate_exact(const ComplexRational& z, const ComplexRational& w) const {
        ComplexRational acc;
        const ComplexRational one_minus = ComplexRational(1) - z * conj(w);
        for (const auto& t : terms_) {
            if (!t.r.is_integer())
                throw std::domain_error("SzegoTermSum: exact evaluation needs integer exponents");
            acc += ComplexRational(t.c) * pow(z, t.p) * pow(conj(w), t.q) * pow(one_minus, -t.r.to_long());
        }
        return acc;
    }

private:
    std::vector<SzegoTerm> terms_;
};

/// Entry (i, j) = d^i dbar^j of S^alpha(z1,w1) S^beta(z2,w2) in the second
/// variable, restricted to the diagonal:
/// (beta)_j sum_l C(i,l) (beta+j)_{i-l} l! C(j,l) z^{j-l} wbar^{i-l} S^{alpha+beta+i+j-l}.
inline SzegoTermSum jet_entry_closed_form(const KernelSpec& spec, int i, int j) {
    spec.require_bidisc("jet_entry_closed_form");
    if (i < 0 || j < 0 || i > spec.jet_order || j > spec.jet_order)
        throw std::out_of_range("jet_entry_closed_form: index out of range");
    SzegoTermSum out;
    const Rational lead = pochhammer(spec.beta, j);
    for (int l = 0; l <= std::min(i, j); ++l) {
        Rational c = lead * binomial(i, l) * pochhammer(spec.beta + Rational(j), i - l) * factorial(l) *
                     binomial(j, l);
        out.add(c, j - l, i - l, spec.alpha + spec.beta + Rational(i + j - l));
    }
    return out;
}

/// All entries of the jet kernel in closed form, indexed [i][j].
inline std::vector<std::vector<SzegoTermSum>> jet_kernel_closed_form(const KernelSpec& spec) {
    spec.require_bidisc("jet_kernel_closed_form");
    const int n = spec.jet_order;
    std::vector<std::vector<SzegoTermSum>> out(n + 1, std::vector<SzegoTermSum>(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) out[i][j] = jet_entry_closed_form(spec, i, j);
    return out;
}

/// Coefficients a_{mp} of the jet kernel, built from the closed-form entries.
inline MatrixSeries<Rational> jet_kernel_series(const KernelSpec& spec, std::size_t M) {
    spec.require_bidisc("jet_kernel_series");
    const auto entries = jet_kernel_closed_form(spec);
    const std::size_t d = spec.size();
    MatrixSeries<Rational> out(d, M);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto s = entries[i][j].series(M);
            for (std::size_t m = 0; m <= M; ++m)
                for (std::size_t p = 0; p <= M; ++p) out.coeff(m, p)(i, j) = s.coeff(m, p)(0, 0);
        }
    return out;
}

/// Evaluates the closed-form jet kernel at (z, w).
inline Matrix<std::complex<double>> jet_kernel_evaluate(const KernelSpec& spec, std::complex<double> z,
                                                        std::complex<double> w) {
    const auto entries = jet_kernel_closed_form(spec);
    Matrix<std::complex<double>> out(spec.size(), spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i)
        for (std::size_t j = 0; j < spec.size(); ++j) out(i, j) = entries[i][j].evaluate(z, w);
    return out;
}

namespace detail {

inline Rational falling(long e, long d) {
    if (d > e) return Rational(0);
    Rational out(1);
    for (long k = 0; k < d; ++k) out *= Rational(e - k);
    return out;
}

}  // namespace detail

/// Brute-force jet of prod_k (1 - z_k wbar_k)^{-exponents[k]}: expands the
/// product in all 2v variables, applies the requested derivatives monomial by
/// monomial and restricts to z_k = z, w_k = w. Row i differentiates in z by
/// z_derivs[i], column j in wbar by w_derivs[j].
inline MatrixSeries<Rational> product_kernel_jet_bruteforce(const std::vector<Rational>& exponents,
                                                            const std::vector<std::vector<int>>& z_derivs,
                                                            const std::vector<std::vector<int>>& w_derivs,
                                                            std::size_t M) {
    const std::size_t v = exponents.size();
    const std::size_t d = z_derivs.size();
    if (w_derivs.size() != d) throw std::invalid_argument("bruteforce: derivative tables differ in size");
    int max_order = 0;
    for (const auto& tbl : {z_derivs, w_derivs})
        for (const auto& row : tbl) {
            if (row.size() != v) throw std::invalid_argument("bruteforce: derivative arity mismatch");
            for (int o : row) max_order = std::max(max_order, o);
        }
    // Every variable needs exponents up to M + max_order for the restricted
    // coefficients of total degree <= M to be complete.
    const long bound = static_cast<long>(M) + max_order;

    // One-variable factor coefficients (r)_e / e! of (z_k wbar_k)^e.
    std::vector<std::vector<Rational>> factor(v);
    for (std::size_t k = 0; k < v; ++k)
        for (long e = 0; e <= bound; ++e)
            factor[k].push_back(pochhammer(exponents[k], e) / factorial(e));

    MatrixSeries<Rational> out(d, M);
    std::vector<long> zexp(v, 0);  // the product kernel only has monomials with equal z/w exponents
    while (true) {
        Rational base(1);
        for (std::size_t k = 0; k < v; ++k) base *= factor[k][zexp[k]];
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Rational c = base;
                long zdeg = 0, wdeg = 0;
                bool vanished = false;
                for (std::size_t k = 0; k < v && !vanished; ++k) {
                    long dz = z_derivs[i][k], dw = w_derivs[j][k];
                    if (dz > zexp[k] || dw > zexp[k]) {
                        vanished = true;
                        break;
                    }
                    c *= detail::falling(zexp[k], dz) * detail::falling(zexp[k], dw);
                    zdeg += zexp[k] - dz;
                    wdeg += zexp[k] - dw;
                }
                if (vanished || zdeg > static_cast<long>(M) || wdeg > static_cast<long>(M)) continue;
                out.coeff(zdeg, wdeg)(i, j) += c;
            }
        std::size_t k = 0;
        while (k < v && ++zexp[k] > bound) zexp[k++] = 0;
        if (k == v) break;
    }
    return out;
}

/// Independent oracle for jet_kernel_series.
inline MatrixSeries<Rational> jet_kernel_series_bruteforce(const KernelSpec& spec, std::size_t M) {
    spec.require_bidisc("jet_kernel_series_bruteforce");
    const int n = spec.jet_order;
    std::vector<std::vector<int>> derivs;
    for (int i = 0; i <= n; ++i) derivs.push_back({0, i});
    return product_kernel_jet_bruteforce({spec.alpha, spec.beta}, derivs, derivs, M);
}

/// poly(z, wbar) * (1 - z wbar)^{-exponent}
template <typename T>
struct PrefactoredKernel {
    Matrix<BiPoly<T>> poly;
    Rational exponent;

    /// Coefficient table, expanding the scalar prefactor exactly.
    MatrixSeries<T> series(std::size_t M) const {
        static_assert(std::is_same_v<T, Rational>, "exact series needs rational coefficients");
        auto p = to_series(poly, M);
        auto s = szego_power_series(exponent, M);
        MatrixSeries<T> scalar = MatrixSeries<T>(p.dim(), M);
        for (std::size_t m = 0; m <= M; ++m)
            for (std::size_t q = 0; q <= M; ++q)
                scalar.coeff(m, q) = Matrix<T>::identity(p.dim()) * s.coeff(m, q)(0, 0);
        return series_multiply(p, scalar);
    }

    Matrix<std::complex<double>> evaluate(std::complex<double> z, std::complex<double> w) const {
        auto m = poly.map([&](const BiPoly<T>& b) { return b.evaluate(z, std::conj(w)); });
        return m * std::pow(1.0 - z * std::conj(w), -exponent.to_double());
    }

    /// Polynomial part at (z, w), exact.
    Matrix<ComplexRational> evaluate_poly_exact(const ComplexRational& z, const ComplexRational& w) const {
        return poly.map([&](const BiPoly<T>& b) { return b.evaluate(ComplexRational(z), conj(w)); });
    }
};

/// The tridisc jet J^(1,1) of S^alpha S^beta S^gamma on the diagonal, as
/// polynomial part times (1 - z wbar)^{-(alpha+beta+gamma+2)}.
inline PrefactoredKernel<Rational> tridisc_jet_closed_form(const KernelSpec& spec) {
    spec.require_tridisc("tridisc_jet_closed_form");
    using P = BiPoly<Rational>;
    const P z = P::z(), wb = P::wbar(), x = z * wb, one(1);
    const P b(spec.beta), g(spec.gamma);
    const P u = one - x;
    Matrix<P> m(3, 3);
    m(0, 0) = u * u;
    m(0, 1) = b * z * u;
    m(0, 2) = g * z * u;
    m(1, 0) = b * wb * u;
    m(1, 1) = b * (one + b * x);
    m(1, 2) = b * g * x;
    m(2, 0) = g * wb * u;
    m(2, 1) = b * g * x;
    m(2, 2) = g * (one + g * x);
    return {m, spec.alpha + spec.beta + spec.gamma + Rational(2)};
}

/// Brute-force coefficients of the tridisc jet kernel (rows/cols: none, z2, z3).
inline MatrixSeries<Rational> tridisc_jet_series_bruteforce(const KernelSpec& spec, std::size_t M) {
    spec.require_tridisc("tridisc_jet_series_bruteforce");
    std::vector<std::vector<int>> derivs = {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    return product_kernel_jet_bruteforce({spec.alpha, spec.beta, spec.gamma}, derivs, derivs, M);
}

}  // namespace jetkernel
