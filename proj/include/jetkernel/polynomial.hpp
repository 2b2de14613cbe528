#pragma once

// Small exact polynomial types: univariate in x, and bivariate in (z, wbar).

#include "jetkernel/matrix.hpp"
#include "jetkernel/series.hpp"

#include <algorithm>
#include <cstddef>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace jetkernel {

template <typename T>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(T constant) : coeffs_{std::move(constant)} { trim(); }  // NOLINT
    explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    /// c x^k
    static Polynomial monomial(T c, std::size_t k) {
        std::vector<T> v(k + 1);
        v[k] = std::move(c);
        return Polynomial(std::move(v));
    }

    const std::vector<T>& coefficients() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    T coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : T(0); }

    T operator()(const T& x) const {
        T acc(0);
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
        return acc;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) { return *this += o * T(-1); }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
        std::vector<T> c(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(Polynomial a, const T& s) {
        for (auto& c : a.coeffs_) c *= s;
        a.trim();
        return a;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string() const {
        std::ostringstream os;
        if (coeffs_.empty()) return "0";
        for (std::size_t k = 0; k < coeffs_.size(); ++k) os << (k ? " + " : "") << coeffs_[k] << "*x^" << k;
        return os.str();
    }

private:
    void trim() {
        while (!coeffs_.empty() && scalar_traits<T>::is_zero(coeffs_.back())) coeffs_.pop_back();
    }
    std::vector<T> coeffs_;
};

/// Polynomial in z and wbar: sum c_{pq} z^p wbar^q. Exact zero terms are dropped.
template <typename T>
class BiPoly {
public:
    using Key = std::pair<int, int>;

    BiPoly() = default;
    BiPoly(T constant) { add_term(std::move(constant), 0, 0); }  // NOLINT(google-explicit-constructor)
    BiPoly(int constant) : BiPoly(T(constant)) {}              // NOLINT(google-explicit-constructor)

    static BiPoly monomial(T c, int p, int q) {
        BiPoly b;
        b.add_term(std::move(c), p, q);
        return b;
    }
    static BiPoly z() { return monomial(T(1), 1, 0); }
    static BiPoly wbar() { return monomial(T(1), 0, 1); }

    void add_term(const T& c, int p, int q) {
        auto it = terms_.find({p, q});
        if (it == terms_.end()) {
            if (!scalar_traits<T>::is_zero(c)) terms_.emplace(Key{p, q}, c);
            return;
        }
        it->second += c;
        if (scalar_traits<T>::is_zero(it->second)) terms_.erase(it);
    }

    const std::map<Key, T>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    T coefficient(int p, int q) const {
        auto it = terms_.find({p, q});
        return it == terms_.end() ? T(0) : it->second;
    }
    int degree_z() const {
        int d = -1;
        for (const auto& [k, c] : terms_) d = std::max(d, k.first);
        return d;
    }
    int degree_wbar() const {
        int d = -1;
        for (const auto& [k, c] : terms_) d = std::max(d, k.second);
        return d;
    }

    /// Substitute wbar = 0 or z = 0.
    BiPoly at_wbar_zero() const {
        BiPoly b;
        for (const auto& [k, c] : terms_)
            if (k.second == 0) b.add_term(c, k.first, 0);
        return b;
    }
    BiPoly at_z_zero() const {
        BiPoly b;
        for (const auto& [k, c] : terms_)
            if (k.first == 0) b.add_term(c, 0, k.second);
        return b;
    }

    template <typename S>
    S evaluate(const S& z, const S& wbar) const {
        S acc(0);
        for (const auto& [k, c] : terms_) {
            S term = lift<S>(c);
            for (int i = 0; i < k.first; ++i) term = term * z;
            for (int i = 0; i < k.second; ++i) term = term * wbar;
            acc = acc + term;
        }
        return acc;
    }

    BiPoly& operator+=(const BiPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(c, k.first, k.second);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(T(0) - c, k.first, k.second);
        return *this;
    }
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
    BiPoly& operator/=(const BiPoly& o) {
        if (o.terms_.size() != 1 || o.terms_.begin()->first != Key{0, 0})
            throw std::invalid_argument("BiPoly: division only by nonzero constants");
        T d = o.terms_.begin()->second;
        for (auto& [k, c] : terms_) c /= d;
        return *this;
    }

    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator-(const BiPoly& a) { return BiPoly() - a; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly c;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) c.add_term(ca * cb, ka.first + kb.first, ka.second + kb.second);
        return c;
    }
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

    friend std::ostream& operator<<(std::ostream& os, const BiPoly& b) {
        if (b.terms_.empty()) return os << "0";
        bool first = true;
        for (const auto& [k, c] : b.terms_) {
            os << (first ? "" : " + ") << c;
            if (k.first) os << "*z^" << k.first;
            if (k.second) os << "*wb^" << k.second;
            first = false;
        }
        return os;
    }

private:
    template <typename S>
    static S lift(const T& c) {
        if constexpr (std::is_same_v<S, T>) {
            return c;
        } else if constexpr (std::is_same_v<S, std::complex<double>>) {
            return scalar_traits<T>::to_complex(c);
        } else {
            return S(c);
        }
    }

    std::map<Key, T> terms_;
};

template <typename T>
struct scalar_traits<BiPoly<T>> {
    static constexpr bool exact = scalar_traits<T>::exact;
    static bool is_zero(const BiPoly<T>& x) { return x.is_zero(); }
};

/// Coefficients of a polynomial matrix as a MatrixSeries of the given truncation.
template <typename T>
MatrixSeries<T> to_series(const Matrix<BiPoly<T>>& m, std::size_t trunc) {
    if (!m.is_square()) throw std::invalid_argument("to_series: matrix is not square");
    MatrixSeries<T> s(m.rows(), trunc);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (const auto& [k, c] : m(i, j).terms())
                if (k.first <= static_cast<int>(trunc) && k.second <= static_cast<int>(trunc))
                    s.coeff(k.first, k.second)(i, j) = c;
    return s;
}

template <typename T>
Matrix<BiPoly<T>> lift_constant(const Matrix<T>& m) {
    return m.map([](const T& c) { return BiPoly<T>(c); });
}

template <typename T, typename S>
Matrix<S> evaluate(const Matrix<BiPoly<T>>& m, const S& z, const S& wbar) {
    return m.map([&](const BiPoly<T>& b) { return b.evaluate(z, wbar); });
}

}  // namespace jetkernel
