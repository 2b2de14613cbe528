#pragma once

// Curvature K(z) = dbar(h^{-1} d h) of the metric h(z) = K(z,z)^t.
//
// Exact at the origin through the normalized coefficients; elsewhere through
// truncated series in (z, zbar) with floating coefficients.

#include "jetkernel/kernel.hpp"
#include "jetkernel/matrix.hpp"
#include "jetkernel/normalize.hpp"
#include "jetkernel/rational.hpp"
#include "jetkernel/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jetkernel {

using cd = std::complex<double>;

/// (alpha, alpha + (n+1)(beta+n)): the two distinct diagonal values at 0.
inline std::pair<Rational, Rational> invariant_pair(const KernelSpec& spec) {
    const Rational n(spec.jet_order);
    return {spec.alpha, spec.alpha + (n + Rational(1)) * (spec.beta + n)};
}

/// diag(alpha, ..., alpha, alpha + (n+1)(beta+n)).
inline Matrix<Rational> expected_curvature_at_zero(const KernelSpec& spec) {
    const auto [lo, hi] = invariant_pair(spec);
    std::vector<Rational> d(spec.size(), lo);
    d.back() = hi;
    return Matrix<Rational>::diagonal(d);
}

/// D^{-1} N_11, which is the curvature at 0 of the normalized metric.
inline Matrix<Rational> curvature_at_zero(const KernelSpec& spec) {
    spec.require_bidisc("curvature_at_zero");
    const auto nc = normalized_coeffs(spec, 1);
    const auto& N11 = nc.N.coeff(1, 1);
    if (!N11.is_diagonal())
        throw std::runtime_error("curvature_at_zero: N_11 is not diagonal: " + N11.to_string());
    Matrix<Rational> out(spec.size(), spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) out(i, i) = N11(i, i) / nc.D(i, i);
    return out;
}

/// True iff the invariant pairs agree; jet orders must match.
inline bool equivalence_test(const KernelSpec& a, const KernelSpec& b) {
    a.require_bidisc("equivalence_test");
    b.require_bidisc("equivalence_test");
    if (a.jet_order != b.jet_order) throw std::invalid_argument("equivalence_test: jet orders differ");
    return invariant_pair(a) == invariant_pair(b);
}

/// Diagonal of a_11 + c_10 D^{-1} a_01 for r < n; each should be alpha r! (beta)_r.
inline std::vector<Rational> curvature_intermediate(const KernelSpec& spec) {
    const auto nc = normalized_coeffs(spec, 1);
    const auto m = nc.a.coeff(1, 1) + nc.c[1] * inverse(nc.D) * nc.a.coeff(0, 1);
    std::vector<Rational> out;
    for (long r = 0; r < spec.jet_order; ++r) out.push_back(m(r, r));
    return out;
}

enum class Metric { jet, normalized };

inline std::string to_string(Metric m) { return m == Metric::jet ? "jet" : "normalized"; }

/// Curvature as a series in (z, zbar), from the metric coefficients h_mp of
/// z^m zbar^p.
class CurvatureSeries {
public:
    CurvatureSeries(const KernelSpec& spec, std::size_t M, Metric metric = Metric::jet, double radius = 0.5)
        : radius_(radius), metric_(metric) {
        spec.require_bidisc("CurvatureSeries");
        if (M < 2) throw std::invalid_argument("CurvatureSeries: needs truncation M >= 2");
        MatrixSeries<double> h(spec.size(), M);
        if (metric == Metric::jet) {
            const auto a = jet_kernel_series(spec, M);
            for (std::size_t m = 0; m <= M; ++m)
                for (std::size_t p = 0; p <= M; ++p) h.coeff(m, p) = to_double(a.coeff(m, p).transpose());
        } else {
            const auto nc = normalized_coeffs(spec, M);
            for (std::size_t m = 0; m <= M; ++m)
                for (std::size_t p = 0; p <= M; ++p) h.coeff(m, p) = nc.normalized(m, p).transpose();
        }
        const auto hinv = series_invert(h.truncated(M - 1));
        connection_ = series_multiply(hinv, h.derivative(0));
        curvature_ = connection_.derivative(1);
    }

    const MatrixSeries<double>& series() const { return curvature_; }
    Metric metric() const { return metric_; }
    double radius() const { return radius_; }

    Matrix<cd> evaluate_at(cd z) const { return evaluate(checked(curvature_, z), z, std::conj(z)); }

    /// h^{-1} dh at z, for finite-difference checks.
    Matrix<cd> connection_at(cd z) const { return evaluate(checked(connection_, z), z, std::conj(z)); }

    /// Magnitude of the last retained band m = M' or p = M' at |z|.
    double tail_estimate(cd z) const {
        const std::size_t M = curvature_.trunc();
        const double r = std::abs(z);
        double worst = 0.0;
        for (std::size_t k = 0; k <= M; ++k) {
            worst = std::max(worst, max_abs(curvature_.coeff(M, k)) * std::pow(r, double(M + k)));
            worst = std::max(worst, max_abs(curvature_.coeff(k, M)) * std::pow(r, double(M + k)));
        }
        return worst;
    }

private:
    const MatrixSeries<double>& checked(const MatrixSeries<double>& s, cd z) const {
        if (std::abs(z) > radius_)
            throw std::domain_error("CurvatureSeries: |z| = " + std::to_string(std::abs(z)) +
                                    " exceeds the evaluation radius " + std::to_string(radius_));
        return s;
    }

    double radius_;
    Metric metric_;
    MatrixSeries<double> connection_;
    MatrixSeries<double> curvature_;
};

/// [[alpha, -2 beta (beta+1) zbar/(1-|z|^2)], [0, alpha + 2 beta + 2]] (1-|z|^2)^{-2}.
inline Matrix<cd> jet2_curvature_closed_form(double alpha, double beta, cd z) {
    const double x = std::norm(z);
    if (x >= 1.0) throw std::domain_error("jet2_curvature_closed_form: |z| must be < 1");
    const double s = 1.0 / ((1.0 - x) * (1.0 - x));
    Matrix<cd> k(2, 2);
    k(0, 0) = alpha * s;
    k(0, 1) = -2.0 * beta * (beta + 1.0) * std::conj(z) / (1.0 - x) * s;
    k(1, 1) = (alpha + 2.0 * beta + 2.0) * s;
    return k;
}

/// Largest |K v - lambda v| over the eigenpairs ((1,0), alpha s) and
/// ((-beta zbar, 1-|z|^2), (alpha+2beta+2) s), s = (1-|z|^2)^{-2}.
inline double jet2_eigenvector_residual(const Matrix<cd>& k, double alpha, double beta, cd z) {
    const double x = std::norm(z);
    const double s = 1.0 / ((1.0 - x) * (1.0 - x));
    const std::vector<std::pair<std::vector<cd>, double>> pairs = {
        {{1.0, 0.0}, alpha * s},
        {{-beta * std::conj(z), 1.0 - x}, (alpha + 2.0 * beta + 2.0) * s},
    };
    double worst = 0.0;
    for (const auto& [v, lambda] : pairs)
        for (std::size_t i = 0; i < 2; ++i) worst = std::max(worst, std::abs(k(i, 0) * v[0] + k(i, 1) * v[1] - lambda * v[i]));
    return worst;
}

/// Curvature of log B in the rotated coordinates z1 = u1 + u2, z2 = u1 - u2:
/// (1-|u1+u2|^2)^{-2} alpha [[1,1],[1,1]] + (1-|u1-u2|^2)^{-2} beta [[1,-1],[-1,1]].
inline Matrix<double> rotated_curvature(double alpha, double beta, cd u1, cd u2) {
    const double x1 = std::norm(u1 + u2), x2 = std::norm(u1 - u2);
    if (x1 >= 1.0 || x2 >= 1.0) throw std::domain_error("rotated_curvature: point outside the bidisc");
    const double s1 = alpha / ((1.0 - x1) * (1.0 - x1)), s2 = beta / ((1.0 - x2) * (1.0 - x2));
    return Matrix<double>{{s1 + s2, s1 - s2}, {s1 - s2, s1 + s2}};
}

/// The same on the hypersurface u2 = 0: (1-|u1|^2)^{-2} [[a+b, a-b], [a-b, a+b]].
inline Matrix<double> rotated_curvature_restriction(double alpha, double beta, cd u1) {
    const double x = std::norm(u1);
    if (x >= 1.0) throw std::domain_error("rotated_curvature_restriction: |u1| must be < 1");
    const double s = 1.0 / ((1.0 - x) * (1.0 - x));
    return Matrix<double>{{(alpha + beta) * s, (alpha - beta) * s}, {(alpha - beta) * s, (alpha + beta) * s}};
}

struct CurvatureReport {
    KernelSpec spec;
    Matrix<Rational> at_zero;
    std::pair<Rational, Rational> invariants;
    bool at_zero_matches = false;
    std::vector<Rational> intermediate;
    bool intermediate_is_alpha_r_fact_beta_r = false;  // alpha r! (beta)_r
    bool intermediate_is_alpha_r_fact_beta_r1 = false; // alpha r! (beta)_{r+1}
    Metric metric = Metric::jet;
    std::size_t trunc = 0;
    std::vector<std::pair<cd, Matrix<cd>>> samples;
    std::vector<double> tails;
};

inline CurvatureReport curvature_report(const KernelSpec& spec, const std::vector<cd>& points, std::size_t M = 20,
                                        Metric metric = Metric::jet) {
    CurvatureReport rep;
    rep.spec = spec;
    rep.at_zero = curvature_at_zero(spec);
    rep.invariants = invariant_pair(spec);
    rep.at_zero_matches = rep.at_zero == expected_curvature_at_zero(spec);
    rep.intermediate = curvature_intermediate(spec);
    rep.intermediate_is_alpha_r_fact_beta_r = true;
    rep.intermediate_is_alpha_r_fact_beta_r1 = true;
    for (std::size_t r = 0; r < rep.intermediate.size(); ++r) {
        const Rational base = spec.alpha * factorial(r);
        if (!(rep.intermediate[r] == base * pochhammer(spec.beta, r))) rep.intermediate_is_alpha_r_fact_beta_r = false;
        if (!(rep.intermediate[r] == base * pochhammer(spec.beta, r + 1))) rep.intermediate_is_alpha_r_fact_beta_r1 = false;
    }
    rep.metric = metric;
    rep.trunc = M;
    if (!points.empty()) {
        CurvatureSeries cs(spec, M, metric);
        for (const auto& z : points) {
            rep.samples.emplace_back(z, cs.evaluate_at(z));
            rep.tails.push_back(cs.tail_estimate(z));
        }
    }
    return rep;
}

}  // namespace jetkernel
