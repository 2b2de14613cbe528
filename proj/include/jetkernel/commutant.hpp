#pragma once

// Commutant {X : XA = AX for all A} of a family of square matrices, exact over
// Q or numeric through Eigen, plus the spectral split into reducing
// projections and the irreducibility verdict for the bidisc jet kernel.

#include "jetkernel/kernel.hpp"
#include "jetkernel/matrix.hpp"
#include "jetkernel/normalize.hpp"
#include "jetkernel/rational.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace jetkernel {

enum class Arithmetic { exact, numeric };
enum class Verdict { irreducible, reducible, inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::irreducible: return "irreducible";
        case Verdict::reducible: return "reducible";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}
inline std::string to_string(Arithmetic a) { return a == Arithmetic::exact ? "exact" : "numeric"; }

struct CommutantReport {
    std::size_t dim = 0;
    Arithmetic arithmetic = Arithmetic::exact;
    double tolerance = 0.0;  // numeric mode only
    std::vector<Matrix<Rational>> exact_inputs;
    std::vector<Matrix<std::complex<double>>> numeric_inputs;
    std::vector<Matrix<Rational>> exact_basis;
    std::vector<Matrix<std::complex<double>>> numeric_basis;
    std::size_t dimension = 0;
    Verdict verdict = Verdict::inconclusive;
    std::string note;

    void set_verdict() { verdict = dimension == 1 ? Verdict::irreducible : Verdict::reducible; }
};

namespace detail {

/// Rows of the d^2 x d^2 system XA - AX = 0, unknown X_ij at index i*d + j.
template <typename T>
std::vector<std::vector<T>> commutator_rows(std::size_t d, const Matrix<T>& A) {
    std::vector<std::vector<T>> rows;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<T> row(d * d, T(0));
            for (std::size_t k = 0; k < d; ++k) {
                row[i * d + k] += A(k, j);
                row[k * d + j] -= A(i, k);
            }
            rows.push_back(std::move(row));
        }
    return rows;
}

/// Nullspace basis of an exact system by reduced row echelon form.
inline std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> rows, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][col].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        const Rational lead = rows[r][col];
        for (auto& x : rows[r]) x /= lead;
        for (std::size_t o = 0; o < rows.size(); ++o) {
            if (o == r || rows[o][col].is_zero()) continue;
            const Rational f = rows[o][col];
            for (std::size_t c = col; c < ncols; ++c) rows[o][c] -= f * rows[r][c];
        }
        pivots.push_back(col);
        ++r;
    }
    std::vector<std::vector<Rational>> basis;
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(ncols, Rational(0));
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -rows[k][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

template <typename T>
Matrix<T> unvec(const std::vector<T>& v, std::size_t d) {
    Matrix<T> m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = v[i * d + j];
    return m;
}

inline Eigen::MatrixXcd to_eigen(const Matrix<std::complex<double>>& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

inline Matrix<std::complex<double>> from_eigen(const Eigen::MatrixXcd& e) {
    Matrix<std::complex<double>> m(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
    return m;
}

/// Best rational approximation with denominator <= max_den (continued fractions).
inline Rational rationalize(double x, long max_den = 1000000) {
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(v);
        if (std::abs(a) > 1e15) break;
        long ai = static_cast<long>(a);
        long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        double frac = v - a;
        if (std::abs(frac) < 1e-12) break;
        v = 1.0 / frac;
    }
    return Rational(h1, k1);
}

}  // namespace detail

/// Exact commutant. `dim` is needed when the family is empty.
inline CommutantReport commutant_basis(std::size_t dim, const std::vector<Matrix<Rational>>& mats) {
    CommutantReport rep;
    rep.dim = dim;
    rep.arithmetic = Arithmetic::exact;
    rep.exact_inputs = mats;
    std::vector<std::vector<Rational>> rows;
    for (const auto& A : mats) {
        if (A.rows() != dim || A.cols() != dim) throw std::invalid_argument("commutant_basis: matrix has wrong shape");
        for (auto& r : detail::commutator_rows(dim, A)) rows.push_back(std::move(r));
    }
    for (const auto& v : detail::nullspace(std::move(rows), dim * dim))
        rep.exact_basis.push_back(detail::unvec(v, dim));
    rep.dimension = rep.exact_basis.size();
    rep.set_verdict();
    return rep;
}

/// Numeric commutant: nullspace from the SVD of the stacked system, rank
/// decided by singular values above tol * (largest singular value).
inline CommutantReport commutant_basis(std::size_t dim, const std::vector<Matrix<std::complex<double>>>& mats,
                                       double tol = 1e-10) {
    CommutantReport rep;
    rep.dim = dim;
    rep.arithmetic = Arithmetic::numeric;
    rep.tolerance = tol;
    rep.numeric_inputs = mats;
    const std::size_t d2 = dim * dim;
    Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(std::max<std::size_t>(1, mats.size()) * d2),
                                                   static_cast<Eigen::Index>(d2));
    std::size_t row = 0;
    for (const auto& A : mats) {
        if (A.rows() != dim || A.cols() != dim) throw std::invalid_argument("commutant_basis: matrix has wrong shape");
        for (const auto& r : detail::commutator_rows(dim, A)) {
            for (std::size_t c = 0; c < d2; ++c) sys(row, c) = r[c];
            ++row;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double top = sv.size() ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (top > 0 && sv(k) > tol * top) ++rank;
    const Eigen::MatrixXcd& V = svd.matrixV();
    for (Eigen::Index k = rank; k < V.cols(); ++k) {
        Matrix<std::complex<double>> X(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) X(i, j) = V(static_cast<Eigen::Index>(i * dim + j), k);
        rep.numeric_basis.push_back(std::move(X));
    }
    rep.dimension = rep.numeric_basis.size();
    rep.set_verdict();
    return rep;
}

/// Largest |XA - AX| over the basis and inputs; 0 exactly in exact mode.
inline double commutant_residual(const CommutantReport& rep) {
    double worst = 0.0;
    if (rep.arithmetic == Arithmetic::exact) {
        for (const auto& X : rep.exact_basis)
            for (const auto& A : rep.exact_inputs) worst = std::max(worst, max_abs(X * A - A * X));
    } else {
        for (const auto& X : rep.numeric_basis)
            for (const auto& A : rep.numeric_inputs) worst = std::max(worst, max_abs(X * A - A * X));
    }
    return worst;
}

struct ProjectionSet {
    bool exact = false;
    std::vector<Matrix<Rational>> exact_projections;
    std::vector<Matrix<std::complex<double>>> numeric_projections;
    std::size_t size() const { return exact ? exact_projections.size() : numeric_projections.size(); }
    std::vector<std::size_t> ranks() const;
};

namespace detail {

inline std::size_t rank_of_projection(const Matrix<std::complex<double>>& P) {
    double tr = 0.0;
    for (std::size_t i = 0; i < P.rows(); ++i) tr += P(i, i).real();
    return static_cast<std::size_t>(std::lround(tr));
}

// Groups sorted eigenvalues that agree to within tol * scale.
inline std::vector<std::vector<Eigen::Index>> cluster(const Eigen::VectorXd& ev, double tol) {
    std::vector<std::vector<Eigen::Index>> groups;
    double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (!groups.empty() && std::abs(ev(k) - ev(groups.back().back())) <= tol * scale)
            groups.back().push_back(k);
        else
            groups.push_back({k});
    }
    return groups;
}

/// Lagrange-product projections from rationalized eigenvalues; empty when the
/// exact certificate (idempotent, symmetric, complete, commuting) fails.
inline std::vector<Matrix<Rational>> exact_spectral_projections(const Matrix<Rational>& H,
                                                                 const std::vector<Rational>& lambdas,
                                                                 const std::vector<Matrix<Rational>>& inputs) {
    const std::size_t d = H.rows();
    std::vector<Matrix<Rational>> out;
    Matrix<Rational> total(d, d);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        Matrix<Rational> P = Matrix<Rational>::identity(d);
        for (std::size_t j = 0; j < lambdas.size(); ++j) {
            if (j == i) continue;
            P = P * (H - Matrix<Rational>::identity(d) * lambdas[j]) * (Rational(1) / (lambdas[i] - lambdas[j]));
        }
        if (!(P * P == P) || !(P.transpose() == P) || P.is_zero()) return {};
        for (const auto& A : inputs)
            if (!(P * A == A * P)) return {};
        total += P;
        out.push_back(std::move(P));
    }
    if (!(total == Matrix<Rational>::identity(d))) return {};
    return out;
}

}  // namespace detail

inline std::vector<std::size_t> ProjectionSet::ranks() const {
    std::vector<std::size_t> r;
    if (exact) {
        for (const auto& P : exact_projections) {
            Rational tr;
            for (std::size_t i = 0; i < P.rows(); ++i) tr += P(i, i);
            r.push_back(static_cast<std::size_t>(tr.to_long()));
        }
    } else {
        for (const auto& P : numeric_projections) r.push_back(detail::rank_of_projection(P));
    }
    std::sort(r.begin(), r.end(), std::greater<>());
    return r;
}

/// Spectral projections of a generic self-adjoint commutant element
/// sum_i r_i (B_i + B_i^*). Several prime weightings are tried and the finest
/// split kept, so an accidental eigenvalue collision does not merge blocks.
/// Exact reports yield exact projections whenever the eigenvalues rationalize
/// and the result certifies; otherwise floating projections are returned.
inline ProjectionSet reducing_projections(const CommutantReport& rep) {
    ProjectionSet out;
    if (rep.dimension <= 1) {
        out.exact = rep.arithmetic == Arithmetic::exact;
        return out;
    }
    static const std::vector<std::vector<long>> weightings = {
        {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37},
        {41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89},
        {97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151},
    };
    const std::size_t d = rep.dim;
    const double tol = rep.arithmetic == Arithmetic::numeric ? std::max(rep.tolerance, 1e-12) * 1e3 : 1e-9;

    std::size_t best_groups = 0;
    for (const auto& primes : weightings) {
        Matrix<Rational> Hq(d, d);
        Matrix<std::complex<double>> Hc(d, d);
        for (std::size_t i = 0; i < rep.dimension; ++i) {
            const long w = primes[i % primes.size()] + static_cast<long>(i / primes.size());
            if (rep.arithmetic == Arithmetic::exact) {
                const auto& B = rep.exact_basis[i];
                Hq += (B + B.transpose()) * Rational(w);
            } else {
                const auto& B = rep.numeric_basis[i];
                Hc += (B + B.adjoint()) * std::complex<double>(static_cast<double>(w), 0.0);
            }
        }
        if (rep.arithmetic == Arithmetic::exact) Hc = to_complex(Hq);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(detail::to_eigen(Hc));
        const auto groups = detail::cluster(es.eigenvalues(), tol);
        if (groups.size() <= best_groups) continue;
        best_groups = groups.size();

        ProjectionSet candidate;
        if (rep.arithmetic == Arithmetic::exact) {
            std::vector<Rational> lambdas;
            for (const auto& g : groups) {
                double mean = 0.0;
                for (auto k : g) mean += es.eigenvalues()(k);
                lambdas.push_back(detail::rationalize(mean / static_cast<double>(g.size())));
            }
            auto exact = detail::exact_spectral_projections(Hq, lambdas, rep.exact_inputs);
            if (!exact.empty()) {
                candidate.exact = true;
                candidate.exact_projections = std::move(exact);
            }
        }
        if (!candidate.exact) {
            for (const auto& g : groups) {
                Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(d, d);
                for (auto k : g) P += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
                candidate.numeric_projections.push_back(detail::from_eigen(P));
            }
        }
        out = std::move(candidate);
        if (best_groups == d) break;
    }
    return out;
}

/// Irreducibility of the bidisc multiplication tuple: every N_k1 (2 <= k <= n+1)
/// must be a single nonzero entry at (n-k+1, n); the normalized coefficient is
/// then a nonzero multiple of the matrix unit E_{n-k+1,n}, so the commutant of
/// the family {N_k1, N_1k} equals that of the matrix units and their transposes.
inline CommutantReport irreducibility_verdict(const KernelSpec& spec) {
    spec.require_bidisc("irreducibility_verdict");
    if (spec.jet_order < 1) throw std::invalid_argument("irreducibility_verdict: needs jet order n >= 1");
    const std::size_t n = static_cast<std::size_t>(spec.jet_order);
    const auto nc = normalized_coeffs(spec, n + 1);
    std::vector<Matrix<Rational>> units;
    for (std::size_t k = 2; k <= n + 1; ++k) {
        const auto& N = nc.N.coeff(k, 1);
        if (N.nonzero_count() != 1 || N(n - k + 1, n).is_zero()) {
            CommutantReport bad;
            bad.dim = n + 1;
            bad.exact_inputs = {N};
            bad.verdict = Verdict::inconclusive;
            bad.note = "N_" + std::to_string(k) + "1 is not a single-entry matrix at (" + std::to_string(n - k + 1) +
                       "," + std::to_string(n) + "): " + N.to_string();
            return bad;
        }
        units.push_back(Matrix<Rational>::elementary(n + 1, n - k + 1, n));
        units.push_back(Matrix<Rational>::elementary(n + 1, n, n - k + 1));
    }
    auto rep = commutant_basis(n + 1, units);
    rep.note = "commutant of the matrix units E_{n-k+1,n} and their transposes, 2 <= k <= n+1";
    return rep;
}

/// Numeric variant on the normalized coefficients D^{-1/2} N_k1 D^{-1/2}, N_1k.
inline CommutantReport irreducibility_verdict_numeric(const KernelSpec& spec, double tol = 1e-10) {
    spec.require_bidisc("irreducibility_verdict_numeric");
    if (spec.jet_order < 1) throw std::invalid_argument("irreducibility_verdict: needs jet order n >= 1");
    const std::size_t n = static_cast<std::size_t>(spec.jet_order);
    const auto nc = normalized_coeffs(spec, n + 1);
    std::vector<Matrix<std::complex<double>>> family;
    for (std::size_t k = 2; k <= n + 1; ++k) {
        family.push_back(to_complex(nc.normalized(k, 1)));
        family.push_back(to_complex(nc.normalized(1, k)));
    }
    auto rep = commutant_basis(n + 1, family, tol);
    rep.note = "numeric commutant of the normalized coefficients";
    return rep;
}

}  // namespace jetkernel
