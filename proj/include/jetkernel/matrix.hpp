#pragma once

#include "jetkernel/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace jetkernel {

// Per-field behaviour needed by the generic algorithms. Exact fields compare
// against zero exactly; floating fields pivot on magnitude.
template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational conj(const Rational& x) { return x; }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static double magnitude(const Rational& x) { return std::abs(x.to_double()); }
    static std::complex<double> to_complex(const Rational& x) { return {x.to_double(), 0.0}; }
};

template <>
struct scalar_traits<ComplexRational> {
    static constexpr bool exact = true;
    static ComplexRational conj(const ComplexRational& x) { return jetkernel::conj(x); }
    static bool is_zero(const ComplexRational& x) { return x.is_zero(); }
    static double magnitude(const ComplexRational& x) { return std::abs(x.to_complex()); }
    static std::complex<double> to_complex(const ComplexRational& x) { return x.to_complex(); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double conj(double x) { return x; }
    static bool is_zero(double x) { return x == 0.0; }
    static double magnitude(double x) { return std::abs(x); }
    static std::complex<double> to_complex(double x) { return {x, 0.0}; }
};

template <>
struct scalar_traits<std::complex<double>> {
    static constexpr bool exact = false;
    static std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }
    static bool is_zero(const std::complex<double>& x) { return x == 0.0; }
    static double magnitude(const std::complex<double>& x) { return std::abs(x); }
    static std::complex<double> to_complex(const std::complex<double>& x) { return x; }
};

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    /// E_{ij}: a single 1 at (i, j).
    static Matrix elementary(std::size_t n, std::size_t i, std::size_t j) {
        Matrix m(n, n);
        m(i, j) = T(1);
        return m;
    }
    static Matrix diagonal(const std::vector<T>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<T>& data() const { return data_; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    Matrix conjugate() const {
        Matrix c(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) c.data_[k] = scalar_traits<T>::conj(data_[k]);
        return c;
    }
    Matrix adjoint() const { return conjugate().transpose(); }

    bool is_diagonal() const {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (i != j && !scalar_traits<T>::is_zero((*this)(i, j))) return false;
        return true;
    }
    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(),
                           [](const T& x) { return scalar_traits<T>::is_zero(x); });
    }
    std::size_t nonzero_count() const {
        return static_cast<std::size_t>(std::count_if(
            data_.begin(), data_.end(), [](const T& x) { return !scalar_traits<T>::is_zero(x); }));
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
    friend Matrix operator-(const Matrix& a) { return a * T(-1); }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (scalar_traits<T>::is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    template <typename F>
    auto map(F&& f) const {
        using U = decltype(f(std::declval<const T&>()));
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
        return out;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
        }
        os << "]";
        return os.str();
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <typename T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
    return os << m.to_string();
}

/// Gauss-Jordan inverse. Exact fields take the first nonzero pivot, floating
/// fields the largest one.
template <typename T>
Matrix<T> inverse(const Matrix<T>& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: matrix is not square");
    const std::size_t n = m.rows();
    Matrix<T> a = m;
    Matrix<T> inv = Matrix<T>::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        if constexpr (scalar_traits<T>::exact) {
            for (std::size_t r = col; r < n; ++r)
                if (!scalar_traits<T>::is_zero(a(r, col))) { pivot = r; break; }
        } else {
            double best = 0.0;
            for (std::size_t r = col; r < n; ++r) {
                double mag = scalar_traits<T>::magnitude(a(r, col));
                if (mag > best) { best = mag; pivot = r; }
            }
        }
        if (pivot == n) throw std::domain_error("inverse: singular matrix");
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        T p = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            T f = a(r, col);
            if (scalar_traits<T>::is_zero(f)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

template <typename T>
Matrix<std::complex<double>> to_complex(const Matrix<T>& m) {
    return m.map([](const T& x) { return scalar_traits<T>::to_complex(x); });
}

inline Matrix<double> to_double(const Matrix<Rational>& m) {
    return m.map([](const Rational& x) { return x.to_double(); });
}

/// Largest entrywise modulus of a - b.
template <typename T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(scalar_traits<T>::to_complex(a(i, j)) -
                                             scalar_traits<T>::to_complex(b(i, j))));
    return worst;
}

template <typename T>
double max_abs(const Matrix<T>& a) {
    double worst = 0.0;
    for (const auto& x : a.data()) worst = std::max(worst, scalar_traits<T>::magnitude(x));
    return worst;
}

}  // namespace jetkernel
