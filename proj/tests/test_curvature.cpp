#include "jetkernel/curvature.hpp"

#include "test_support.hpp"

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>

using namespace jetkernel;

namespace {

std::vector<double> sorted_eigenvalues(const Matrix<cd>& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(e);
    std::vector<double> out;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) out.push_back(es.eigenvalues()(k).real());
    std::sort(out.begin(), out.end());
    return out;
}

// Second mixed derivative d_{u_i} dbar_{u_j} of log B in rotated coordinates,
// by central differences in the real coordinates.
double log_b(double alpha, double beta, cd u1, cd u2) {
    return -alpha * std::log(1.0 - std::norm(u1 + u2)) - beta * std::log(1.0 - std::norm(u1 - u2));
}

}  // namespace

TEST(CurvatureAtZero, Examples) {
    EXPECT_EQ(curvature_at_zero(KernelSpec::bidisc(1, 1, 1)), Matrix<Rational>::diagonal({1, 5}));
    EXPECT_EQ(curvature_at_zero(KernelSpec::bidisc(Rational(1, 2), Rational(3, 2), 2)),
              Matrix<Rational>::diagonal({Rational(1, 2), Rational(1, 2), Rational(11)}));
    EXPECT_EQ(curvature_at_zero(KernelSpec::bidisc(Rational(1, 3), Rational(5, 2), 0)),
              Matrix<Rational>::diagonal({Rational(1, 3) + Rational(5, 2)}));
}

TEST(CurvatureAtZero, Grid) {
    for (const auto& alpha : jktest::grid_values())
        for (const auto& beta : jktest::grid_values())
            for (int n = 0; n <= 3; ++n) {
                auto spec = KernelSpec::bidisc(alpha, beta, n);
                ASSERT_EQ(curvature_at_zero(spec), expected_curvature_at_zero(spec));
            }
}

TEST(Equivalence, Examples) {
    EXPECT_TRUE(equivalence_test(KernelSpec::bidisc(1, 1, 2), KernelSpec::bidisc(1, 1, 2)));
    EXPECT_FALSE(equivalence_test(KernelSpec::bidisc(1, 1, 1), KernelSpec::bidisc(1, 2, 1)));
    EXPECT_FALSE(equivalence_test(KernelSpec::bidisc(1, 2, 1), KernelSpec::bidisc(2, 1, 1)));
    EXPECT_EQ(invariant_pair(KernelSpec::bidisc(1, 2, 1)), std::make_pair(Rational(1), Rational(7)));
    EXPECT_EQ(invariant_pair(KernelSpec::bidisc(2, 1, 1)), std::make_pair(Rational(2), Rational(6)));
    EXPECT_THROW(equivalence_test(KernelSpec::bidisc(1, 1, 1), KernelSpec::bidisc(1, 1, 2)), std::invalid_argument);
}

TEST(Equivalence, SeparatesGrid) {
    for (int n = 1; n <= 3; ++n)
        for (const auto& a1 : jktest::grid_values())
            for (const auto& b1 : jktest::grid_values())
                for (const auto& a2 : jktest::grid_values())
                    for (const auto& b2 : jktest::grid_values()) {
                        bool same = a1 == a2 && b1 == b2;
                        ASSERT_EQ(equivalence_test(KernelSpec::bidisc(a1, b1, n), KernelSpec::bidisc(a2, b2, n)), same);
                    }
}

TEST(CurvatureIntermediate, AlphaTimesFactorialPochhammer) {
    for (int n = 1; n <= 3; ++n) {
        auto rep = curvature_report(KernelSpec::bidisc(Rational(3, 2), Rational(1, 2), n), {});
        EXPECT_TRUE(rep.at_zero_matches);
        EXPECT_EQ(rep.intermediate.size(), static_cast<std::size_t>(n));
        EXPECT_TRUE(rep.intermediate_is_alpha_r_fact_beta_r);
        EXPECT_FALSE(rep.intermediate_is_alpha_r_fact_beta_r1);
    }
}

TEST(CurvatureSeries, CenterMatchesExactValue) {
    for (auto metric : {Metric::jet, Metric::normalized})
        for (int n = 0; n <= 3; ++n) {
            auto spec = KernelSpec::bidisc(Rational(1, 2), 2, n);
            CurvatureSeries cs(spec, 8, metric);
            EXPECT_LT(max_abs_diff(cs.evaluate_at(0.0), to_complex(curvature_at_zero(spec))), 1e-12);
        }
}

TEST(CurvatureSeries, MatchesClosedForm) {
    for (auto [alpha, beta] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}, std::pair{0.5, 1.5}}) {
        CurvatureSeries cs(KernelSpec::bidisc(Rational::parse(std::to_string(alpha)),
                                              Rational::parse(std::to_string(beta)), 1),
                           20);
        for (cd z : {cd(0.3, 0.0), cd(0.2, 0.0), cd(0.3, 0.2), cd(-0.1, 0.35)}) {
            auto k = cs.evaluate_at(z);
            EXPECT_LT(max_abs_diff(k, jet2_curvature_closed_form(alpha, beta, z)), 1e-8) << z;
            EXPECT_LT(jet2_eigenvector_residual(k, alpha, beta, z), 1e-8);
            EXPECT_LT(cs.tail_estimate(z), 1e-8);
        }
    }
}

TEST(CurvatureSeries, NormalizedMetricHasSameEigenvalues) {
    auto spec = KernelSpec::bidisc(1, 1, 1);
    CurvatureSeries jet(spec, 20, Metric::jet), norm(spec, 20, Metric::normalized);
    for (cd z : {cd(0.2, 0.0), cd(0.3, 0.2)}) {
        auto a = sorted_eigenvalues(jet.evaluate_at(z)), b = sorted_eigenvalues(norm.evaluate_at(z));
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-8);
    }
}

TEST(CurvatureSeries, ScalarCase) {
    CurvatureSeries cs(KernelSpec::bidisc(1, 1, 0), 20);
    const double x = 0.09;
    EXPECT_NEAR(cs.evaluate_at(0.3)(0, 0).real(), 2.0 / ((1 - x) * (1 - x)), 1e-8);
}

TEST(CurvatureSeries, Errors) {
    auto spec = KernelSpec::bidisc(1, 1, 1);
    EXPECT_THROW(CurvatureSeries(spec, 1), std::invalid_argument);
    CurvatureSeries cs(spec, 6);
    EXPECT_THROW(cs.evaluate_at(cd(0.6, 0.0)), std::domain_error);
    EXPECT_THROW(jet2_curvature_closed_form(1, 1, cd(1.0, 0.0)), std::domain_error);
    EXPECT_THROW(rotated_curvature_restriction(1, 1, cd(0.0, 1.0)), std::domain_error);
}

// dbar of the series connection against central differences of the connection.
TEST(CurvatureSeries, FiniteDifference) {
    const double h = 1e-4;
    for (int n = 0; n <= 2; ++n)
        for (auto metric : {Metric::jet, Metric::normalized}) {
            CurvatureSeries cs(KernelSpec::bidisc(Rational(3, 2), 1, n), 24, metric);
            for (cd z : {cd(0.1, -0.2), cd(0.4, 0.0), cd(-0.25, 0.3)}) {
                // Five-point central stencil.
                auto central = [&](cd step) {
                    return (cs.connection_at(z - 2.0 * step) - cs.connection_at(z + 2.0 * step) +
                            (cs.connection_at(z + step) - cs.connection_at(z - step)) * cd(8.0, 0.0)) *
                           cd(1.0 / (12 * h), 0.0);
                };
                auto dx = central(h), dy = central(cd(0, h));
                auto dbar = (dx + dy * cd(0.0, 1.0)) * cd(0.5, 0.0);
                EXPECT_LT(max_abs_diff(dbar, cs.evaluate_at(z)), 1e-6) << n << " " << z;
            }
        }
}

TEST(Jet2ClosedForm, Examples) {
    EXPECT_LT(max_abs_diff(jet2_curvature_closed_form(1.5, 0.5, 0.0), to_complex(Matrix<double>{{1.5, 0}, {0, 4.5}})), 1e-15);
    auto k = jet2_curvature_closed_form(1, 1, 0.5);
    EXPECT_NEAR(k(0, 1).real(), -4.0 / 0.75 * 0.5 / (0.75 * 0.75), 1e-12);
    EXPECT_NEAR(k(0, 1).real(), -4.7407407407407, 1e-12);
    cd z(0.3, 0.2);
    EXPECT_LT(jet2_eigenvector_residual(jet2_curvature_closed_form(2, 0.5, z), 2, 0.5, z), 1e-12);
}

TEST(RotatedCurvature, Restriction) {
    EXPECT_EQ(rotated_curvature_restriction(1, 1, 0.0), (Matrix<double>{{2, 0}, {0, 2}}));
    EXPECT_EQ(rotated_curvature_restriction(2, 1, 0.0), (Matrix<double>{{3, 1}, {1, 3}}));
    auto m = rotated_curvature_restriction(1, 1, 0.5);
    EXPECT_NEAR(m(0, 0), 32.0 / 9.0, 1e-12);
    EXPECT_NEAR(m(0, 1), 0.0, 1e-15);
    jktest::Gen gen(61);
    for (int trial = 0; trial < 10; ++trial) {
        cd u1 = gen.disc_point().to_complex();
        EXPECT_LT(max_abs_diff(rotated_curvature(1.5, 0.5, u1, 0.0), rotated_curvature_restriction(1.5, 0.5, u1)), 1e-15);
    }
}

TEST(RotatedCurvature, FiniteDifferenceOfLogKernel) {
    const double h = 1e-4, alpha = 1.5, beta = 0.5;
    jktest::Gen gen(62);
    for (int trial = 0; trial < 8; ++trial) {
        cd u[2] = {gen.disc_point(Rational(4, 10)).to_complex(), gen.disc_point(Rational(4, 10)).to_complex()};
        auto expected = rotated_curvature(alpha, beta, u[0], u[1]);
        // d_i dbar_j f = (1/4)(d_xi - i d_yi)(d_xj + i d_yj) f
        auto f = [&](int i, cd di, int j, cd dj) {
            cd v[2] = {u[0], u[1]};
            v[i] += di;
            v[j] += dj;
            return log_b(alpha, beta, v[0], v[1]);
        };
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                auto second = [&](cd a, cd b) {
                    return (f(i, a, j, b) - f(i, a, j, -b) - f(i, -a, j, b) + f(i, -a, j, -b)) / (4 * h * h);
                };
                double xx = second(h, h), yy = second(cd(0, h), cd(0, h));
                double xy = second(h, cd(0, h)), yx = second(cd(0, h), h);
                cd val = 0.25 * (cd(xx + yy, 0) + cd(0, xy - yx));
                EXPECT_NEAR(val.real(), expected(i, j), 1e-5);
                EXPECT_NEAR(val.imag(), 0.0, 1e-5);
            }
    }
}
