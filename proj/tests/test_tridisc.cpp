#include "jetkernel/tridisc.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace jetkernel;
using cd = std::complex<double>;

namespace {

const KernelSpec pythagorean = KernelSpec::tridisc(1, 9, 16);

/// G(0,0)^{1/2} G(z,0)^{-1} G(z,w) G(0,w)^{-1} G(0,0)^{1/2} on the polynomial part,
/// computed pointwise with the given exact square roots of G(0,0).
Matrix<ComplexRational> defining_product(const KernelSpec& spec, const std::vector<Rational>& root,
                                         const ComplexRational& z, const ComplexRational& w) {
    const auto G = tridisc_jet_closed_form(spec);
    const auto half = Matrix<ComplexRational>::diagonal(
        {ComplexRational(root[0]), ComplexRational(root[1]), ComplexRational(root[2])});
    const ComplexRational zero(0);
    return half * inverse(G.evaluate_poly_exact(z, zero)) * G.evaluate_poly_exact(z, w) *
           inverse(G.evaluate_poly_exact(zero, w)) * half;
}

}  // namespace

TEST(PolynomialInverse, UnipotentAndFailure) {
    const RPoly z = RPoly::z();
    RPolyMatrix A{{RPoly(2), z}, {RPoly(0), RPoly(3)}};
    auto inv = detail::polynomial_inverse(A);
    EXPECT_EQ(A * inv, lift_constant(Matrix<Rational>::identity(2)));
    RPolyMatrix B{{RPoly(1) - z * RPoly::wbar()}};
    EXPECT_THROW(detail::polynomial_inverse(B), std::domain_error);
}

TEST(TridiscNormalized, IdentityAtWZero) {
    jktest::Gen g(601);
    for (const auto& spec : {pythagorean, KernelSpec::tridisc(Rational(1, 2), 1, 2), KernelSpec::tridisc(1, 1, 1)}) {
        const auto tn = tridisc_normalized(spec);
        for (int trial = 0; trial < 5; ++trial) {
            cd z = g.disc_point().to_complex();
            EXPECT_LT(max_abs_diff(tn.evaluate_at(z, 0.0), Matrix<cd>::identity(3)), 1e-12);
        }
        EXPECT_EQ(detail::at_wbar_zero(tn.symmetrized()), lift_constant(tn.D));
    }
}

TEST(TridiscNormalized, PythagoreanEntry) {
    auto p = tridisc_normalized(pythagorean).exact_poly();
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ((*p)(1, 2), RPoly::monomial(Rational(12), 1, 1));
    EXPECT_EQ((*p)(1, 1), RPoly(1) + RPoly::monomial(Rational(9), 1, 1));
    EXPECT_EQ((*p)(0, 1), RPoly::monomial(Rational(-78), 2, 1));  // -sqrt(9)(1+25)
    EXPECT_FALSE(tridisc_normalized(KernelSpec::tridisc(1, 2, 3)).exact_poly().has_value());
}

TEST(TridiscNormalized, MatchesDefiningProduct) {
    const ComplexRational z(Rational(1, 3)), w(Rational(1, 5));
    auto p = *tridisc_normalized(pythagorean).exact_poly();
    auto direct = defining_product(pythagorean, {Rational(1), Rational(3), Rational(4)}, z, w);
    EXPECT_EQ(evaluate(p, z, conj(w)), direct);

    jktest::Gen g(602);
    const auto spec = KernelSpec::tridisc(Rational(1, 2), Rational(1, 4), Rational(9, 4));
    auto q = *tridisc_normalized(spec).exact_poly();
    for (int trial = 0; trial < 5; ++trial) {
        auto a = g.disc_point(), b = g.disc_point();
        EXPECT_EQ(evaluate(q, a, conj(b)), defining_product(spec, {Rational(1), Rational(1, 2), Rational(3, 2)}, a, b));
    }
}

TEST(TridiscNormalized, NumericMatchesExactScaling) {
    const auto spec = KernelSpec::tridisc(1, 2, 3);
    const auto tn = tridisc_normalized(spec);
    cd z(0.3, 0.1), w(-0.2, 0.4);
    auto H = evaluate(tn.symmetrized(), z, std::conj(w));
    auto G = tn.poly_at(z, w);
    const double d[3] = {1.0, 2.0, 3.0};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(G(i, j) * std::sqrt(d[i] * d[j]) - H(i, j)), 0.0, 1e-12);
}

TEST(TridiscNormalized, DisplayHoldsOnGrid) {
    for (const auto& a : jktest::grid_values())
        for (const auto& b : jktest::grid_values())
            for (const auto& c : jktest::grid_values()) {
                auto spec = KernelSpec::tridisc(a, b, c);
                ASSERT_EQ(tridisc_normalized(spec).symmetrized(), tridisc_display_symmetrized(spec));
            }
}

TEST(TridiscU, ExactWhenPythagorean) {
    auto U = tridisc_u_exact(Rational(9), Rational(16), Rational(25));
    ASSERT_TRUE(U.has_value());
    EXPECT_EQ(*U * U->transpose(), Matrix<Rational>::identity(3));
    EXPECT_EQ((*U)(1, 1), Rational(3, 5));
    EXPECT_FALSE(tridisc_u_exact(Rational(1), Rational(1), Rational(2)).has_value());
    auto Un = tridisc_u_numeric(Rational(1), Rational(1), Rational(2));
    EXPECT_LT(max_abs(Un * Un.transpose() - Matrix<double>::identity(3)), 1e-12);
}

TEST(TridiscBlocks, PythagoreanAllExact) {
    auto r = tridisc_block_diagonalize(pythagorean);
    ASSERT_TRUE(r.pass()) << r.failures.front();
    EXPECT_TRUE(r.exact_u);
    EXPECT_TRUE(r.unitary);
    EXPECT_EQ(r.unitarity_residual, 0.0);
    EXPECT_TRUE(r.block_diagonal);
    EXPECT_TRUE(r.literal_conjugation);
    EXPECT_EQ(r.g2_exponent, Rational(28));
    EXPECT_TRUE(r.g2_matches);
    EXPECT_TRUE(r.g1_at_zero_identity);
    EXPECT_TRUE(r.g2_cocycle);
    EXPECT_TRUE(r.g1_irreducible);
    EXPECT_EQ(r.commutant.arithmetic, Arithmetic::exact);
    EXPECT_EQ(r.commutant.dimension, 2u);
    EXPECT_EQ(r.projection_ranks, (std::vector<std::size_t>{2, 1}));
    EXPECT_TRUE(r.reducible);
}

TEST(TridiscBlocks, ProjectionMatchesU) {
    auto r = tridisc_block_diagonalize(pythagorean);
    auto P = reducing_projections(r.commutant);
    ASSERT_TRUE(P.exact);
    const Matrix<Rational> rank1{{Rational(0), Rational(0), Rational(0)},
                                 {Rational(0), Rational(16, 25), Rational(-12, 25)},
                                 {Rational(0), Rational(-12, 25), Rational(9, 25)}};
    EXPECT_TRUE(std::find(P.exact_projections.begin(), P.exact_projections.end(), rank1) != P.exact_projections.end());
}

TEST(TridiscBlocks, FloatPath) {
    auto r = tridisc_block_diagonalize(KernelSpec::tridisc(1, 1, 1));
    ASSERT_TRUE(r.pass()) << r.failures.front();
    EXPECT_FALSE(r.exact_u);
    EXPECT_LT(r.literal_residual, 1e-12);
    EXPECT_LT(r.unitarity_residual, 1e-12);
    // beta = gamma = 1 keeps the normalized coefficients rational
    EXPECT_EQ(r.commutant.arithmetic, Arithmetic::exact);
    EXPECT_EQ(r.projection_ranks, (std::vector<std::size_t>{2, 1}));
}

TEST(TridiscBlocks, NumericCommutant) {
    auto r = tridisc_block_diagonalize(KernelSpec::tridisc(1, 2, 3));
    ASSERT_TRUE(r.pass()) << r.failures.front();
    EXPECT_EQ(r.commutant.arithmetic, Arithmetic::numeric);
    EXPECT_EQ(r.commutant.dimension, 2u);
    EXPECT_EQ(r.projection_ranks, (std::vector<std::size_t>{2, 1}));
}

TEST(TridiscBlocks, FractionalExponent) {
    auto r = tridisc_block_diagonalize(KernelSpec::tridisc(Rational(1, 2), 1, 2));
    EXPECT_TRUE(r.pass()) << r.failures.front();
    EXPECT_EQ(r.g2_exponent, Rational(11, 2));
}

TEST(TridiscBlocks, MutatedSumFails) {
    TridiscOptions opt;
    opt.sigma_override = Rational(24);
    auto r = tridisc_block_diagonalize(pythagorean, opt);
    EXPECT_FALSE(r.pass());
    EXPECT_FALSE(r.match_bidisc.pass);
    EXPECT_FALSE(r.match_bidisc.counterexample.empty());
    EXPECT_FALSE(r.g1_matches_display);
}

TEST(TridiscMatchBidisc, Examples) {
    EXPECT_TRUE(tridisc_match_bidisc(pythagorean).pass);
    EXPECT_TRUE(tridisc_match_bidisc(KernelSpec::tridisc(Rational(1, 2), 1, 2)).pass);
    auto bad = tridisc_match_bidisc(pythagorean, Rational(24));
    EXPECT_FALSE(bad.pass);
    EXPECT_NE(bad.counterexample.find("24"), std::string::npos);
}

TEST(TridiscMatchBidisc, Grid) {
    for (const auto& a : jktest::grid_values())
        for (const auto& b : jktest::grid_values())
            for (const auto& c : {Rational(1, 2), Rational(2)}) {
                auto r = tridisc_match_bidisc(KernelSpec::tridisc(a, b, c), std::nullopt, 4);
                ASSERT_TRUE(r.pass) << r.counterexample;
                EXPECT_EQ(r.checked, 25u);
            }
}

TEST(Tridisc, WrongDomainThrows) {
    EXPECT_THROW(tridisc_normalized(KernelSpec::bidisc(1, 1, 1)), std::invalid_argument);
    EXPECT_THROW(tridisc_block_diagonalize(KernelSpec::bidisc(1, 1, 1)), std::invalid_argument);
}
