#pragma once

// Truncated bivariate power series sum_{m,p <= trunc} A_{mp} z^m wbar^p with
// square matrix coefficients.

#include "jetkernel/matrix.hpp"

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetkernel {

template <typename T>
class MatrixSeries {
public:
    MatrixSeries() = default;
    MatrixSeries(std::size_t dim, std::size_t trunc)
        : dim_(dim), trunc_(trunc), coeffs_((trunc + 1) * (trunc + 1), Matrix<T>(dim, dim)) {
        if (dim == 0) throw std::invalid_argument("MatrixSeries: dimension must be positive");
    }

    /// I at (0,0), zero elsewhere.
    static MatrixSeries identity(std::size_t dim, std::size_t trunc) {
        MatrixSeries s(dim, trunc);
        s.coeff(0, 0) = Matrix<T>::identity(dim);
        return s;
    }

    /// Scalar series from a callback f(m, p).
    template <typename F>
    static MatrixSeries scalar(std::size_t trunc, F&& f) {
        MatrixSeries s(1, trunc);
        for (std::size_t m = 0; m <= trunc; ++m)
            for (std::size_t p = 0; p <= trunc; ++p) s.coeff(m, p)(0, 0) = f(m, p);
        return s;
    }

    std::size_t dim() const { return dim_; }
    std::size_t trunc() const { return trunc_; }

    Matrix<T>& coeff(std::size_t m, std::size_t p) { return coeffs_[index(m, p)]; }
    const Matrix<T>& coeff(std::size_t m, std::size_t p) const { return coeffs_[index(m, p)]; }

    void set(std::size_t m, std::size_t p, Matrix<T> value) {
        if (value.rows() != dim_ || value.cols() != dim_)
            throw std::invalid_argument("MatrixSeries: coefficient has wrong shape");
        coeffs_[index(m, p)] = std::move(value);
    }

    /// Same coefficients, lower truncation.
    MatrixSeries truncated(std::size_t trunc) const {
        if (trunc > trunc_) throw std::invalid_argument("MatrixSeries: cannot raise truncation");
        MatrixSeries s(dim_, trunc);
        for (std::size_t m = 0; m <= trunc; ++m)
            for (std::size_t p = 0; p <= trunc; ++p) s.coeff(m, p) = coeff(m, p);
        return s;
    }

    MatrixSeries transpose_coefficients() const {
        MatrixSeries s(dim_, trunc_);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) s.coeffs_[k] = coeffs_[k].transpose();
        return s;
    }

    template <typename F>
    auto map(F&& f) const {
        using U = decltype(f(std::declval<const T&>()));
        MatrixSeries<U> s(dim_, trunc_);
        for (std::size_t m = 0; m <= trunc_; ++m)
            for (std::size_t p = 0; p <= trunc_; ++p) s.coeff(m, p) = coeff(m, p).map(f);
        return s;
    }

    /// Left/right multiplication of every coefficient by a constant matrix.
    MatrixSeries conjugated_by(const Matrix<T>& left, const Matrix<T>& right) const {
        MatrixSeries s(dim_, trunc_);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) s.coeffs_[k] = left * coeffs_[k] * right;
        return s;
    }

    /// Term-wise d/dz (which = 0) or d/dwbar (which = 1); truncation drops by one.
    MatrixSeries derivative(int which) const {
        if (trunc_ == 0) throw std::invalid_argument("MatrixSeries: cannot differentiate a constant");
        MatrixSeries s(dim_, trunc_ - 1);
        for (std::size_t m = 0; m < trunc_; ++m)
            for (std::size_t p = 0; p < trunc_; ++p) {
                if (which == 0)
                    s.coeff(m, p) = coeff(m + 1, p) * T(static_cast<long>(m + 1));
                else
                    s.coeff(m, p) = coeff(m, p + 1) * T(static_cast<long>(p + 1));
            }
        return s;
    }

    friend bool operator==(const MatrixSeries& a, const MatrixSeries& b) {
        return a.dim_ == b.dim_ && a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
    }

    MatrixSeries& operator+=(const MatrixSeries& o) {
        if (o.dim_ != dim_ || o.trunc_ != trunc_)
            throw std::invalid_argument("MatrixSeries: shape mismatch in sum");
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }

private:
    std::size_t index(std::size_t m, std::size_t p) const {
        if (m > trunc_ || p > trunc_)
            throw std::out_of_range("MatrixSeries: index (" + std::to_string(m) + "," +
                                    std::to_string(p) + ") beyond truncation " +
                                    std::to_string(trunc_));
        return m * (trunc_ + 1) + p;
    }

    std::size_t dim_ = 0;
    std::size_t trunc_ = 0;
    std::vector<Matrix<T>> coeffs_;
};

/// Cauchy product; the result is truncated at the smaller operand truncation.
template <typename T>
MatrixSeries<T> series_multiply(const MatrixSeries<T>& a, const MatrixSeries<T>& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("series_multiply: dimension mismatch");
    const std::size_t M = std::min(a.trunc(), b.trunc());
    MatrixSeries<T> c(a.dim(), M);
    for (std::size_t s = 0; s <= M; ++s)
        for (std::size_t t = 0; t <= M; ++t) {
            const Matrix<T>& ast = a.coeff(s, t);
            if (ast.is_zero()) continue;
            for (std::size_t m = s; m <= M; ++m)
                for (std::size_t p = t; p <= M; ++p) {
                    const Matrix<T>& bmp = b.coeff(m - s, p - t);
                    if (bmp.is_zero()) continue;
                    c.coeff(m, p) += ast * bmp;
                }
        }
    return c;
}

/// B with A*B = I up to truncation: B_00 = A_00^{-1},
/// B_mp = -A_00^{-1} sum_{(s,t) != (0,0)} A_st B_{m-s,p-t}.
template <typename T>
MatrixSeries<T> series_invert(const MatrixSeries<T>& a) {
    Matrix<T> a00inv;
    try {
        a00inv = inverse(a.coeff(0, 0));
    } catch (const std::domain_error&) {
        throw std::domain_error("series_invert: constant term is singular");
    }
    const std::size_t M = a.trunc();
    MatrixSeries<T> b(a.dim(), M);
    // Coefficients are filled in order of total degree so every B_{m-s,p-t}
    // on the right-hand side is already known.
    for (std::size_t total = 0; total <= 2 * M; ++total)
        for (std::size_t m = 0; m <= std::min(total, M); ++m) {
            std::size_t p = total - m;
            if (p > M) continue;
            if (m == 0 && p == 0) {
                b.coeff(0, 0) = a00inv;
                continue;
            }
            Matrix<T> acc(a.dim(), a.dim());
            for (std::size_t s = 0; s <= m; ++s)
                for (std::size_t t = 0; t <= p; ++t) {
                    if (s == 0 && t == 0) continue;
                    const Matrix<T>& ast = a.coeff(s, t);
                    if (ast.is_zero()) continue;
                    acc += ast * b.coeff(m - s, p - t);
                }
            b.coeff(m, p) = -(a00inv * acc);
        }
    return b;
}

/// Evaluates sum A_mp z^m wbar^p at complex points (z, wbar given directly).
template <typename T>
Matrix<std::complex<double>> evaluate(const MatrixSeries<T>& s, std::complex<double> z,
                                      std::complex<double> wbar) {
    Matrix<std::complex<double>> out(s.dim(), s.dim());
    std::complex<double> zm(1.0);
    for (std::size_t m = 0; m <= s.trunc(); ++m) {
        std::complex<double> wp(1.0);
        for (std::size_t p = 0; p <= s.trunc(); ++p) {
            out += to_complex(s.coeff(m, p)) * (zm * wp);
            wp *= wbar;
        }
        zm *= z;
    }
    return out;
}

}  // namespace jetkernel
