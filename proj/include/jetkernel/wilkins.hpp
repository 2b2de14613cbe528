#pragma once

// The quotient-module example on the bidisc: images of the orthonormal basis
// e_p^(1), e_p^(2) under the jet map, the block weighted shifts M_p^(1),
// M_p^(2), and the reconstruction of K_Q from its basis expansion.
//
// Everything here involves square roots, so it runs in double precision.

#include "jetkernel/kernel.hpp"
#include "jetkernel/matrix.hpp"
#include "jetkernel/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetkernel {

/// |C(-x, p)| = (x)_p / p! for x > 0; zero for p < 0.
inline double abs_negative_binomial(double x, long p) {
    if (p < 0) return 0.0;
    double r = 1.0;
    for (long k = 0; k < p; ++k) r *= (x + double(k)) / double(k + 1);
    return r;
}

/// c z^degree; a vanishing term has coeff 0 and degree -1.
struct Monomial {
    double coeff = 0.0;
    long degree = -1;

    std::complex<double> operator()(std::complex<double> z) const {
        if (degree < 0) return 0.0;
        std::complex<double> r = coeff;
        for (long k = 0; k < degree; ++k) r *= z;
        return r;
    }
};

struct OnbImage {
    Monomial first;
    Monomial second;
};

inline void require_positive(double alpha, double beta, const char* what) {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument(std::string(what) + ": alpha, beta must be > 0");
}

/// Image of e_p^(which) under h -> (h, d_1 h) restricted to the diagonal.
inline OnbImage onb_image(double alpha, double beta, long p, int which) {
    require_positive(alpha, beta, "onb_image");
    if (p < 0) throw std::invalid_argument("onb_image: p must be >= 0");
    if (which != 1 && which != 2) throw std::invalid_argument("onb_image: which must be 1 or 2");
    const double s = alpha + beta;
    OnbImage out;
    if (which == 1) {
        out.first = {std::sqrt(abs_negative_binomial(s, p)), p};
        if (p > 0) out.second = {beta * std::sqrt(double(p) / s) * std::sqrt(abs_negative_binomial(s + 1, p - 1)), p - 1};
    } else if (p > 0) {
        out.second = {std::sqrt(alpha * beta / s) * std::sqrt(abs_negative_binomial(s + 2, p - 1)), p - 1};
    }
    return out;
}

/// sum_{p < P} e_p^(1)(z) e_p^(1)(w)^* + e_p^(2)(z) e_p^(2)(w)^*.
inline Matrix<std::complex<double>> kq_partial_sum(double alpha, double beta, long P, std::complex<double> z,
                                                   std::complex<double> w) {
    if (P < 1) throw std::invalid_argument("kq_partial_sum: P must be >= 1");
    Matrix<std::complex<double>> K(2, 2);
    for (long p = 0; p < P; ++p)
        for (int which = 1; which <= 2; ++which) {
            const auto e = onb_image(alpha, beta, p, which);
            const std::complex<double> vz[2] = {e.first(z), e.second(z)};
            const std::complex<double> vw[2] = {e.first(w), e.second(w)};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) K(i, j) += vz[i] * std::conj(vw[j]);
        }
    return K;
}

/// [[S^s, beta z S^{s+1}], [beta wbar S^{s+1}, beta (1 + beta z wbar) S^{s+2}]],
/// S = (1 - z wbar)^{-1}, s = alpha + beta.
inline Matrix<std::complex<double>> kq_closed_form(double alpha, double beta, std::complex<double> z,
                                                   std::complex<double> w) {
    require_positive(alpha, beta, "kq_closed_form");
    const auto x = z * std::conj(w);
    if (!(std::abs(x) < 1.0)) throw std::domain_error("kq_closed_form: |z wbar| must be < 1");
    const double s = alpha + beta;
    const auto S = 1.0 / (1.0 - x);
    Matrix<std::complex<double>> K(2, 2);
    K(0, 0) = std::pow(S, s);
    K(0, 1) = beta * z * std::pow(S, s + 1);
    K(1, 0) = beta * std::conj(w) * std::pow(S, s + 1);
    K(1, 1) = beta * (1.0 + beta * x) * std::pow(S, s + 2);
    return K;
}

struct ShiftBlock {
    long p = 0;
    int which = 1;
    Matrix<double> matrix = Matrix<double>(2, 2);

    bool lower_triangular() const { return matrix(0, 1) == 0.0; }
};

/// M_p^(1) (which = 1) or M_p^(2) (which = 2).
inline ShiftBlock shift_block(double alpha, double beta, long p, int which) {
    require_positive(alpha, beta, "shift_block");
    if (p < 0) throw std::invalid_argument("shift_block: p must be >= 0");
    if (which != 1 && which != 2) throw std::invalid_argument("shift_block: which must be 1 or 2");
    const double s = alpha + beta;
    ShiftBlock b;
    b.p = p;
    b.which = which;
    b.matrix(0, 0) = std::sqrt(abs_negative_binomial(s, p) / abs_negative_binomial(s, p + 1));
    b.matrix(1, 1) = std::sqrt(abs_negative_binomial(s + 2, p - 1) / abs_negative_binomial(s + 2, p));
    const double ratio = which == 1 ? std::sqrt(beta / alpha) : -std::sqrt(alpha / beta);
    b.matrix(1, 0) = ratio * std::sqrt(s + 1) / std::sqrt((s + double(p)) * (s + double(p) + 1));
    return b;
}

/// Q_1^(p) = (M_p^(1) - M_p^(2))/2.
inline Matrix<double> q1_block(double alpha, double beta, long p) {
    return (shift_block(alpha, beta, p, 1).matrix - shift_block(alpha, beta, p, 2).matrix) * 0.5;
}

/// Q_2^(p) = (M_p^(1) + M_p^(2))/2.
inline Matrix<double> q2_block(double alpha, double beta, long p) {
    return (shift_block(alpha, beta, p, 1).matrix + shift_block(alpha, beta, p, 2).matrix) * 0.5;
}

/// Q_1^(p) squares to zero and, when alpha = beta, Q_2^(p) is diagonal.
inline bool nilpotency_check(double alpha, double beta, long p, double tol = 1e-12) {
    const auto q1 = q1_block(alpha, beta, p);
    if (max_abs(q1 * q1) > tol) return false;
    if (alpha == beta) {
        const auto q2 = q2_block(alpha, beta, p);
        if (std::abs(q2(0, 1)) > tol || std::abs(q2(1, 0)) > tol) return false;
    }
    return true;
}

struct WilkinsReport {
    double alpha = 0.0, beta = 0.0;
    long terms = 0;
    std::complex<double> z, w;
    Matrix<std::complex<double>> partial_sum;
    Matrix<std::complex<double>> closed_form;
    Matrix<std::complex<double>> jet_kernel;  // n = 1 jet kernel, rational exponents
    double max_error = 0.0;
    double jet_vs_closed = 0.0;
};

inline WilkinsReport wilkins_report(const Rational& alpha, const Rational& beta, long terms, std::complex<double> z,
                                    std::complex<double> w) {
    WilkinsReport r;
    r.alpha = alpha.to_double();
    r.beta = beta.to_double();
    r.terms = terms;
    r.z = z;
    r.w = w;
    r.partial_sum = kq_partial_sum(r.alpha, r.beta, terms, z, w);
    r.closed_form = kq_closed_form(r.alpha, r.beta, z, w);
    r.jet_kernel = jet_kernel_evaluate(KernelSpec::bidisc(alpha, beta, 1), z, w);
    r.max_error = max_abs_diff(r.partial_sum, r.closed_form);
    r.jet_vs_closed = max_abs_diff(r.jet_kernel, r.closed_form);
    return r;
}

}  // namespace jetkernel
