#pragma once

// Normalized coefficients of the bidisc jet kernel and the closed forms they
// are checked against.
//
// With D = a_00 and b = K^{-1}, the symmetrized normalized coefficients are
//   N_kl = D [K(z,0)^{-1} K(z,w) K(0,w)^{-1}]_kl D = sum_{s,t} c_s0 D^{-1} a_{k-s,l-t} D^{-1} c_0t,
// where c_k0 = D b_k0 D and c_0t = c_t0^t. Every entry is rational; the
// normalized coefficients themselves are D^{-1/2} N_kl D^{-1/2}.

#include "jetkernel/kernel.hpp"
#include "jetkernel/matrix.hpp"
#include "jetkernel/rational.hpp"
#include "jetkernel/series.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetkernel {

struct NormalizedCoeffs {
    Matrix<Rational> D;           // a_00, diagonal
    MatrixSeries<Rational> a;     // kernel coefficients
    std::vector<Matrix<Rational>> c;  // c_k0, k = 0..M
    MatrixSeries<Rational> N;     // symmetrized normalized coefficients

    std::size_t trunc() const { return N.trunc(); }

    /// D^{-1/2} N_kl D^{-1/2} in floating point.
    Matrix<double> normalized(std::size_t k, std::size_t l) const {
        Matrix<double> out = to_double(N.coeff(k, l));
        for (std::size_t i = 0; i < out.rows(); ++i)
            for (std::size_t j = 0; j < out.cols(); ++j)
                out(i, j) /= std::sqrt(D(i, i).to_double() * D(j, j).to_double());
        return out;
    }
};

/// Works for any kernel series whose constant term is a positive diagonal.
inline NormalizedCoeffs normalize_series(const MatrixSeries<Rational>& a) {
    const std::size_t d = a.dim(), M = a.trunc();
    const Matrix<Rational>& D = a.coeff(0, 0);
    if (!D.is_diagonal()) throw std::invalid_argument("normalize_series: constant term is not diagonal");
    for (std::size_t i = 0; i < d; ++i)
        if (D(i, i).sign() <= 0) throw std::invalid_argument("normalize_series: constant term is not positive");

    // K(z,0)^{-1} is the w-free part of the full inverse.
    MatrixSeries<Rational> first_column(d, M);
    for (std::size_t m = 0; m <= M; ++m) first_column.coeff(m, 0) = a.coeff(m, 0);
    const auto b = series_invert(first_column);

    NormalizedCoeffs out{D, a, {}, MatrixSeries<Rational>(d, M)};
    for (std::size_t k = 0; k <= M; ++k) out.c.push_back(D * b.coeff(k, 0) * D);

    const Matrix<Rational> Dinv = inverse(D);
    MatrixSeries<Rational> left(d, M), right(d, M);  // D^{-1} c_s0 z^s and c_0t D^{-1} wbar^t, up to the outer D's
    for (std::size_t s = 0; s <= M; ++s) {
        left.coeff(s, 0) = out.c[s] * Dinv;
        right.coeff(0, s) = Dinv * out.c[s].transpose();
    }
    out.N = series_multiply(series_multiply(left, a), right);
    return out;
}

inline NormalizedCoeffs normalized_coeffs(const KernelSpec& spec, std::size_t M) {
    spec.require_bidisc("normalized_coeffs");
    return normalize_series(jet_kernel_series(spec, M));
}

/// N_kl for a single pair, computed from series data of order M.
inline Matrix<Rational> symmetrized_normalized_coeff(const KernelSpec& spec, std::size_t k, std::size_t l,
                                                     std::size_t M) {
    if (k > M || l > M) throw std::out_of_range("symmetrized_normalized_coeff: index beyond truncation");
    return normalized_coeffs(spec, M).N.coeff(k, l);
}

// ── closed forms ────────────────────────────────────────────────────────────

enum class ClosedFormName { a00, am0, am1, ck0, Ak1 };

inline std::string to_string(ClosedFormName n) {
    switch (n) {
        case ClosedFormName::a00: return "a00";
        case ClosedFormName::am0: return "am0";
        case ClosedFormName::am1: return "am1";
        case ClosedFormName::ck0: return "ck0";
        case ClosedFormName::Ak1: return "Ak1";
    }
    return "?";
}

inline ClosedFormName parse_closed_form_name(const std::string& s) {
    for (auto n : {ClosedFormName::a00, ClosedFormName::am0, ClosedFormName::am1, ClosedFormName::ck0,
                   ClosedFormName::Ak1})
        if (to_string(n) == s) return n;
    throw std::invalid_argument("unknown closed form '" + s + "'");
}

/// The closed-form matrices. `index` is m for am0, m for am1 (meaning a_{m+1,1}),
/// k for ck0 and Ak1; it is ignored for a00.
///   (a_00)_kk         = k! (beta)_k
///   (a_m0)_{r,r+m}    = (m+r)!/m! (beta)_{m+r}
///   (a_{m+1,1})_{r,r+m} = (m+r)!/m! (beta)_{m+r} (alpha + (1 + r/(m+1))(beta+m+r))
///   (c_k0)_{r,r+k}    = (-1)^k (r+k)!/k! (beta)_{r+k}
///   A_k1 = N_k1       = (-1)^{k+1} (n+1)! (beta)_{n+1}/k! at (n-k+1, n), 2 <= k <= n+1
inline Matrix<Rational> closed_form_coefficient(ClosedFormName name, const KernelSpec& spec, long index = 0) {
    spec.require_bidisc("closed_form_coefficient");
    const long n = spec.jet_order;
    const Rational& al = spec.alpha;
    const Rational& be = spec.beta;
    Matrix<Rational> out(n + 1, n + 1);
    if (index < 0) throw std::out_of_range("closed_form_coefficient: negative index");
    switch (name) {
        case ClosedFormName::a00:
            for (long k = 0; k <= n; ++k) out(k, k) = factorial(k) * pochhammer(be, k);
            break;
        case ClosedFormName::am0: {
            const long m = index;
            for (long r = 0; r + m <= n; ++r) out(r, r + m) = factorial(m + r) / factorial(m) * pochhammer(be, m + r);
            break;
        }
        case ClosedFormName::am1: {
            const long m = index;
            for (long r = 0; r + m <= n; ++r) {
                Rational shift = Rational(1) + Rational(r) / Rational(m + 1);
                out(r, r + m) = factorial(m + r) / factorial(m) * pochhammer(be, m + r) *
                                (al + shift * (be + Rational(m + r)));
            }
            break;
        }
        case ClosedFormName::ck0: {
            const long k = index;
            const Rational sign = k % 2 ? Rational(-1) : Rational(1);
            for (long r = 0; r + k <= n; ++r) out(r, r + k) = sign * factorial(r + k) / factorial(k) * pochhammer(be, r + k);
            break;
        }
        case ClosedFormName::Ak1: {
            const long k = index;
            if (k < 2 || k > n + 1) throw std::out_of_range("closed_form_coefficient: Ak1 needs 2 <= k <= n+1");
            const Rational sign = (k + 1) % 2 ? Rational(-1) : Rational(1);
            out(n - k + 1, n) = sign * factorial(n + 1) * pochhammer(be, n + 1) / factorial(k);
            break;
        }
    }
    return out;
}

/// A +delta edit of one closed-form entry, used to confirm the checks can fail.
struct Perturbation {
    ClosedFormName name = ClosedFormName::a00;
    long index = 0;
    std::size_t row = 0;
    std::size_t col = 0;
    Rational delta{1};
};

struct CheckResult {
    bool pass = true;
    std::size_t checked = 0;
    std::string counterexample;  // empty on pass

    void fail(const std::string& what) {
        if (pass) counterexample = what;
        pass = false;
    }
};

inline Matrix<Rational> closed_form_coefficient(ClosedFormName name, const KernelSpec& spec, long index,
                                                const std::optional<Perturbation>& perturb) {
    Matrix<Rational> m = closed_form_coefficient(name, spec, index);
    if (perturb && perturb->name == name && perturb->index == index) {
        if (perturb->row >= m.rows() || perturb->col >= m.cols())
            throw std::out_of_range("Perturbation: entry outside the matrix");
        m(perturb->row, perturb->col) += perturb->delta;
    }
    return m;
}

namespace detail {

inline std::string describe_mismatch(const std::string& label, const Matrix<Rational>& closed,
                                     const Matrix<Rational>& pipeline) {
    std::ostringstream os;
    os << label << ": closed form " << closed << " vs pipeline " << pipeline;
    return os.str();
}

}  // namespace detail

/// Compares a00, am0 (m <= M), am1 (m+1 <= M), ck0 (k <= M) and Ak1 with the
/// series pipeline, all exact.
inline CheckResult check_closed_forms(const KernelSpec& spec, std::size_t M,
                                      const std::optional<Perturbation>& perturb = std::nullopt) {
    spec.require_bidisc("check_closed_forms");
    const auto nc = normalized_coeffs(spec, std::max<std::size_t>(M, spec.jet_order + 1));
    CheckResult res;
    auto compare = [&](const std::string& label, const Matrix<Rational>& closed, const Matrix<Rational>& pipe) {
        ++res.checked;
        if (!(closed == pipe)) res.fail(detail::describe_mismatch(label, closed, pipe));
    };
    compare("a00", closed_form_coefficient(ClosedFormName::a00, spec, 0, perturb), nc.a.coeff(0, 0));
    for (std::size_t m = 0; m <= M; ++m) {
        compare("a" + std::to_string(m) + "0", closed_form_coefficient(ClosedFormName::am0, spec, m, perturb),
                nc.a.coeff(m, 0));
        compare("c" + std::to_string(m) + "0", closed_form_coefficient(ClosedFormName::ck0, spec, m, perturb),
                nc.c[m]);
        if (m + 1 <= M)
            compare("a" + std::to_string(m + 1) + "1", closed_form_coefficient(ClosedFormName::am1, spec, m, perturb),
                    nc.a.coeff(m + 1, 1));
    }
    for (long k = 2; k <= spec.jet_order + 1; ++k)
        compare("N" + std::to_string(k) + "1", closed_form_coefficient(ClosedFormName::Ak1, spec, k, perturb),
                nc.N.coeff(k, 1));
    return res;
}

/// sum_{s=0}^m c_s0 D^{-1} a_{m-s,0} = 0 for 1 <= m <= M, from explicit tables.
inline CheckResult verify_inverse_relation(const std::vector<Matrix<Rational>>& c,
                                           const std::vector<Matrix<Rational>>& a_col, const Matrix<Rational>& D,
                                           std::size_t M) {
    if (c.size() <= M || a_col.size() <= M) throw std::invalid_argument("verify_inverse_relation: tables too short");
    const Matrix<Rational> Dinv = inverse(D);
    CheckResult res;
    for (std::size_t m = 1; m <= M; ++m) {
        Matrix<Rational> acc(D.rows(), D.cols());
        for (std::size_t s = 0; s <= m; ++s) acc += c[s] * Dinv * a_col[m - s];
        ++res.checked;
        if (!acc.is_zero()) res.fail("order " + std::to_string(m) + ": residual " + acc.to_string());
    }
    return res;
}

/// The same relation with the closed forms for c and a.
inline CheckResult verify_inverse_relation(const KernelSpec& spec, std::size_t M,
                                           const std::optional<Perturbation>& perturb = std::nullopt) {
    if (M < 1) throw std::invalid_argument("verify_inverse_relation: needs M >= 1");
    std::vector<Matrix<Rational>> c, a;
    for (std::size_t k = 0; k <= M; ++k) {
        c.push_back(closed_form_coefficient(ClosedFormName::ck0, spec, k, perturb));
        a.push_back(closed_form_coefficient(ClosedFormName::am0, spec, k, perturb));
    }
    return verify_inverse_relation(c, a, closed_form_coefficient(ClosedFormName::a00, spec, 0, perturb), M);
}

/// N_k1 has a single nonzero entry at (n-k+1, n) with the closed-form value, for
/// 2 <= k <= n+1, and vanishes on the band (r, r+k-1) for r <= n-k.
inline CheckResult check_oncoeff_pattern(const KernelSpec& spec) {
    spec.require_bidisc("check_oncoeff_pattern");
    const long n = spec.jet_order;
    const auto nc = normalized_coeffs(spec, n + 1);
    CheckResult res;
    for (long k = 2; k <= n + 1; ++k) {
        const auto& N = nc.N.coeff(k, 1);
        ++res.checked;
        const auto expected = closed_form_coefficient(ClosedFormName::Ak1, spec, k);
        if (N.nonzero_count() != 1 || !(N == expected)) {
            res.fail(detail::describe_mismatch("N" + std::to_string(k) + "1", expected, N));
            continue;
        }
        for (long r = 0; r + k <= n; ++r)
            if (!N(r, r + k - 1).is_zero()) res.fail("N" + std::to_string(k) + "1 nonzero on band at row " + std::to_string(r));
    }
    return res;
}

}  // namespace jetkernel
