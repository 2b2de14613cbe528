#pragma once

// JSON encoding. Rationals are "p/q" strings, complex numbers [re, im], and a
// matrix series is {dim, trunc, coeffs: [{m, p, matrix}]} listing the nonzero
// coefficients of z^m wbar^p.

#include "jetkernel/kernel.hpp"
#include "jetkernel/matrix.hpp"
#include "jetkernel/rational.hpp"
#include "jetkernel/series.hpp"

#include <json.hpp>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetkernel {

using json = nlohmann::json;

inline json to_json(const Rational& r) { return r.to_string(); }
inline json to_json(double x) { return x; }
inline json to_json(const std::complex<double>& c) { return json::array({c.real(), c.imag()}); }
inline json to_json(const ComplexRational& c) { return json::array({c.re.to_string(), c.im.to_string()}); }

template <typename T>
json to_json(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <typename T>
json to_json(const MatrixSeries<T>& s) {
    json coeffs = json::array();
    for (std::size_t m = 0; m <= s.trunc(); ++m)
        for (std::size_t p = 0; p <= s.trunc(); ++p)
            if (!s.coeff(m, p).is_zero()) coeffs.push_back({{"m", m}, {"p", p}, {"matrix", to_json(s.coeff(m, p))}});
    return {{"dim", s.dim()}, {"trunc", s.trunc()}, {"coeffs", coeffs}};
}

inline json to_json(const KernelSpec& spec) {
    json j = {{"domain", spec.domain == Domain::bidisc ? "bidisc" : "tridisc"},
              {"alpha", spec.alpha.to_string()},
              {"beta", spec.beta.to_string()}};
    if (spec.domain == Domain::bidisc)
        j["order"] = spec.jet_order;
    else
        j["gamma"] = spec.gamma.to_string();
    return j;
}

inline Rational rational_from_json(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("expected a \"p/q\" string, got " + j.dump());
    return Rational::parse(j.get<std::string>());
}

template <typename T>
T scalar_from_json(const json& j);

template <>
inline Rational scalar_from_json<Rational>(const json& j) {
    return rational_from_json(j);
}

template <>
inline double scalar_from_json<double>(const json& j) {
    return j.get<double>();
}

template <>
inline std::complex<double> scalar_from_json<std::complex<double>>(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im], got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
Matrix<T> matrix_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
    const std::size_t rows = j.size(), cols = rows ? j[0].size() : 0;
    Matrix<T> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw std::invalid_argument("matrix rows are ragged");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json<T>(j[i][k]);
    }
    return m;
}

template <typename T>
MatrixSeries<T> series_from_json(const json& j) {
    MatrixSeries<T> s(j.at("dim").get<std::size_t>(), j.at("trunc").get<std::size_t>());
    for (const auto& c : j.at("coeffs")) {
        const auto m = c.at("m").get<std::size_t>(), p = c.at("p").get<std::size_t>();
        if (m > s.trunc() || p > s.trunc()) throw std::invalid_argument("series coefficient beyond truncation");
        s.coeff(m, p) = matrix_from_json<T>(c.at("matrix"));
    }
    return s;
}

}  // namespace jetkernel
