#include "jetkernel/normalize.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace jetkernel;

TEST(Normalized, ZeroOrderAndFirstColumn) {
    for (int n = 0; n <= 3; ++n) {
        auto spec = KernelSpec::bidisc(Rational(3, 2), Rational(1, 2), n);
        auto nc = normalized_coeffs(spec, 5);
        EXPECT_EQ(nc.N.coeff(0, 0), closed_form_coefficient(ClosedFormName::a00, spec));
        for (std::size_t k = 1; k <= 5; ++k) {
            EXPECT_TRUE(nc.N.coeff(k, 0).is_zero()) << k;
            EXPECT_TRUE(nc.N.coeff(0, k).is_zero()) << k;
        }
    }
}

TEST(Normalized, N21Example) {
    auto N = symmetrized_normalized_coeff(KernelSpec::bidisc(1, 1, 1), 2, 1, 3);
    EXPECT_EQ(N, (Matrix<Rational>{{0, -2}, {0, 0}}));
    EXPECT_THROW(symmetrized_normalized_coeff(KernelSpec::bidisc(1, 1, 1), 4, 1, 3), std::out_of_range);
}

TEST(Normalized, SymmetricUnderTranspose) {
    auto nc = normalized_coeffs(KernelSpec::bidisc(2, Rational(3, 2), 2), 4);
    for (std::size_t k = 0; k <= 4; ++k)
        for (std::size_t l = 0; l <= 4; ++l) EXPECT_EQ(nc.N.coeff(k, l), nc.N.coeff(l, k).transpose());
}

TEST(Normalized, FloatingNormalizationOfConstantTerm) {
    auto nc = normalized_coeffs(KernelSpec::bidisc(1, 2, 2), 2);
    EXPECT_LT(max_abs_diff(nc.normalized(0, 0), Matrix<double>::identity(3)), 1e-15);
}

TEST(Normalized, RejectsNonDiagonalConstant) {
    MatrixSeries<Rational> s(2, 1);
    s.coeff(0, 0) = Matrix<Rational>{{1, 1}, {0, 1}};
    EXPECT_THROW(normalize_series(s), std::invalid_argument);
    s.coeff(0, 0) = Matrix<Rational>{{1, 0}, {0, -1}};
    EXPECT_THROW(normalize_series(s), std::invalid_argument);
}

TEST(ClosedForm, Examples) {
    EXPECT_EQ(closed_form_coefficient(ClosedFormName::a00, KernelSpec::bidisc(1, 1, 2)),
              Matrix<Rational>::diagonal({1, 1, 4}));
    auto c1 = closed_form_coefficient(ClosedFormName::ck0, KernelSpec::bidisc(1, 1, 1), 1);
    EXPECT_EQ(c1, (Matrix<Rational>{{0, -1}, {0, 0}}));
    auto a21 = closed_form_coefficient(ClosedFormName::Ak1, KernelSpec::bidisc(1, 1, 1), 2);
    EXPECT_EQ(a21, (Matrix<Rational>{{0, -2}, {0, 0}}));
    // a_{m0} beyond the jet order is zero.
    EXPECT_TRUE(closed_form_coefficient(ClosedFormName::am0, KernelSpec::bidisc(1, 1, 1), 3).is_zero());
}

TEST(ClosedForm, Errors) {
    auto spec = KernelSpec::bidisc(1, 1, 2);
    EXPECT_THROW(closed_form_coefficient(ClosedFormName::Ak1, spec, 1), std::out_of_range);
    EXPECT_THROW(closed_form_coefficient(ClosedFormName::Ak1, spec, 4), std::out_of_range);
    EXPECT_THROW(closed_form_coefficient(ClosedFormName::am0, spec, -1), std::out_of_range);
    EXPECT_THROW(parse_closed_form_name("a99"), std::invalid_argument);
    EXPECT_EQ(parse_closed_form_name("ck0"), ClosedFormName::ck0);
}

TEST(ClosedForm, MatchesPipelineOverGrid) {
    for (const auto& alpha : jktest::grid_values())
        for (const auto& beta : jktest::grid_values())
            for (int n = 1; n <= 3; ++n) {
                auto r = check_closed_forms(KernelSpec::bidisc(alpha, beta, n), 6);
                ASSERT_TRUE(r.pass) << r.counterexample;
                EXPECT_GT(r.checked, 15u);
            }
}

TEST(ClosedForm, PerturbationIsDetected) {
    auto spec = KernelSpec::bidisc(1, Rational(3, 2), 2);
    for (auto [name, index, row, col] : {std::tuple{ClosedFormName::a00, 0L, 1u, 1u},
                                         std::tuple{ClosedFormName::am0, 1L, 0u, 1u},
                                         std::tuple{ClosedFormName::am1, 0L, 2u, 2u},
                                         std::tuple{ClosedFormName::ck0, 2L, 0u, 2u},
                                         std::tuple{ClosedFormName::Ak1, 3L, 0u, 2u}}) {
        Perturbation p{name, index, row, col, Rational(1)};
        auto r = check_closed_forms(spec, 6, p);
        EXPECT_FALSE(r.pass) << to_string(name);
        EXPECT_FALSE(r.counterexample.empty());
    }
}

TEST(InverseRelation, Examples) {
    EXPECT_TRUE(verify_inverse_relation(KernelSpec::bidisc(1, 1, 1), 4).pass);
    EXPECT_TRUE(verify_inverse_relation(KernelSpec::bidisc(Rational(1, 2), Rational(3, 2), 3), 5).pass);
    Perturbation p{ClosedFormName::ck0, 1, 0, 1, Rational(1)};
    auto r = verify_inverse_relation(KernelSpec::bidisc(1, 1, 1), 4, p);
    EXPECT_FALSE(r.pass);
    EXPECT_NE(r.counterexample.find("order 1"), std::string::npos);
    EXPECT_THROW(verify_inverse_relation(KernelSpec::bidisc(1, 1, 1), 0), std::invalid_argument);
}

TEST(InverseRelation, PipelineTables) {
    auto nc = normalized_coeffs(KernelSpec::bidisc(2, Rational(1, 2), 3), 6);
    std::vector<Matrix<Rational>> a_col;
    for (std::size_t m = 0; m <= 6; ++m) a_col.push_back(nc.a.coeff(m, 0));
    EXPECT_TRUE(verify_inverse_relation(nc.c, a_col, nc.D, 6).pass);
    auto c = nc.c;
    c[3](0, 3) += Rational(1);
    EXPECT_FALSE(verify_inverse_relation(c, a_col, nc.D, 6).pass);
}

TEST(Oncoeff, PatternOverGrid) {
    for (const auto& alpha : jktest::grid_values())
        for (const auto& beta : jktest::grid_values())
            for (int n = 1; n <= 3; ++n) {
                auto r = check_oncoeff_pattern(KernelSpec::bidisc(alpha, beta, n));
                ASSERT_TRUE(r.pass) << r.counterexample;
                EXPECT_EQ(r.checked, static_cast<std::size_t>(n));
            }
}

TEST(Oncoeff, BandVanishingForRandomParameters) {
    jktest::Gen gen(41);
    for (int trial = 0; trial < 10; ++trial) {
        auto spec = KernelSpec::bidisc(gen.positive_rational(), gen.positive_rational(), static_cast<int>(gen.integer(1, 4)));
        auto r = check_oncoeff_pattern(spec);
        ASSERT_TRUE(r.pass) << r.counterexample;
    }
}
