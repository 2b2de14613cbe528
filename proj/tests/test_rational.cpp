#include "jetkernel/rational.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using jetkernel::ComplexRational;
using jetkernel::Rational;

TEST(Rational, CanonicalForm) {
    Rational r(6, -4);
    EXPECT_EQ(r.to_string(), "-3/2");
    EXPECT_EQ(Rational(5).to_string(), "5/1");
    EXPECT_EQ(Rational(0, 7).to_string(), "0/1");
    EXPECT_GT(r.denominator(), 0);
}

TEST(Rational, ZeroDenominatorThrows) {
    EXPECT_THROW(Rational(1, 0), std::domain_error);
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, Parse) {
    EXPECT_EQ(Rational::parse("3/2"), Rational(3, 2));
    EXPECT_EQ(Rational::parse("-4/6"), Rational(-2, 3));
    EXPECT_EQ(Rational::parse("7"), Rational(7));
    EXPECT_EQ(Rational::parse("0.25"), Rational(1, 4));
    EXPECT_EQ(Rational::parse("-1.5"), Rational(-3, 2));
    EXPECT_EQ(Rational::parse(".5"), Rational(1, 2));
    for (const char* bad : {"", "abc", "1/0", "1.2.3", "1/2.5", "3.", "1e5", "--1"})
        EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
}

TEST(Rational, ToLong) {
    EXPECT_EQ(Rational(-12).to_long(), -12);
    EXPECT_THROW(Rational(1, 2).to_long(), std::domain_error);
}

TEST(Rational, Ordering) {
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
    EXPECT_EQ(Rational(2, 4), Rational(1, 2));
}

TEST(Rational, PowAndSqrt) {
    EXPECT_EQ(jetkernel::pow(Rational(2, 3), 3), Rational(8, 27));
    EXPECT_EQ(jetkernel::pow(Rational(2, 3), -2), Rational(9, 4));
    EXPECT_EQ(jetkernel::pow(Rational(5), 0), Rational(1));
    EXPECT_EQ(jetkernel::exact_sqrt(Rational(9, 16)), Rational(3, 4));
    EXPECT_FALSE(jetkernel::exact_sqrt(Rational(2)).has_value());
    EXPECT_FALSE(jetkernel::exact_sqrt(Rational(-4)).has_value());
}

TEST(Pochhammer, Examples) {
    EXPECT_EQ(jetkernel::pochhammer(Rational(7, 3), 0), Rational(1));
    EXPECT_EQ(jetkernel::pochhammer(Rational(1), 2), Rational(2));
    EXPECT_EQ(jetkernel::pochhammer(Rational(3, 2), 3), Rational(105, 8));
    EXPECT_EQ(jetkernel::pochhammer(Rational(-2), 3), Rational(0));
    EXPECT_THROW(jetkernel::pochhammer(Rational(1), -1), std::invalid_argument);
}

TEST(Binomial, Examples) {
    EXPECT_EQ(jetkernel::binomial_general(Rational(5), 2), Rational(10));
    EXPECT_EQ(jetkernel::binomial_general(Rational(3, 7), -1), Rational(0));
    EXPECT_EQ(jetkernel::binomial_general(Rational(-2), 1), Rational(-2));
    EXPECT_EQ(jetkernel::binomial(6, 3), Rational(20));
    EXPECT_EQ(jetkernel::binomial(3, 4), Rational(0));
    EXPECT_EQ(jetkernel::binomial(3, -1), Rational(0));
    EXPECT_EQ(jetkernel::factorial(0), Rational(1));
    EXPECT_EQ(jetkernel::factorial(10), Rational(3628800));
    EXPECT_THROW(jetkernel::factorial(-1), std::invalid_argument);
}

TEST(PochhammerProperty, Recurrence) {
    jktest::Gen gen(11);
    for (int trial = 0; trial < 40; ++trial) {
        Rational x = gen.rational();
        for (long d = 0; d <= 20; ++d)
            ASSERT_EQ(jetkernel::pochhammer(x, d + 1), jetkernel::pochhammer(x, d) * (x + Rational(d)));
    }
}

TEST(PochhammerProperty, BinomialRelation) {
    jktest::Gen gen(12);
    for (int trial = 0; trial < 40; ++trial) {
        Rational x = gen.rational();
        for (long n = 0; n <= 20; ++n)
            ASSERT_EQ(jetkernel::pochhammer(x, n),
                      jetkernel::factorial(n) * jetkernel::binomial_general(x + Rational(n - 1), n));
    }
}

TEST(BinomialProperty, NegatedUpperArgument) {
    jktest::Gen gen(13);
    for (int trial = 0; trial < 40; ++trial) {
        Rational x = gen.rational();
        for (long n = 0; n <= 8; ++n) {
            Rational sign = n % 2 ? Rational(-1) : Rational(1);
            ASSERT_EQ(jetkernel::binomial_general(-x, n),
                      sign * jetkernel::binomial_general(x + Rational(n - 1), n));
        }
    }
}

TEST(RationalProperty, CrossMultiplication) {
    jktest::Gen gen(14);
    for (int trial = 0; trial < 100; ++trial) {
        // Operands well past 64 bits.
        Rational a = jetkernel::pow(gen.rational(1000000, 1), 5) + gen.rational();
        Rational b = jetkernel::pow(gen.positive_rational(1000000, 1), 4);
        Rational c = jetkernel::pow(gen.rational(1000000, 1), 3);
        Rational d = jetkernel::pow(gen.positive_rational(1000000, 1), 6);
        ASSERT_EQ((a / b + c / d) * b * d, a * d + c * b);
    }
}

TEST(ComplexRational, Arithmetic) {
    ComplexRational i(Rational(0), Rational(1));
    EXPECT_EQ(i * i, ComplexRational(-1));
    ComplexRational z(Rational(1, 2), Rational(-1, 3));
    EXPECT_EQ(z / z, ComplexRational(1));
    EXPECT_EQ(jetkernel::conj(z).im, Rational(1, 3));
    EXPECT_EQ(z.norm2(), Rational(13, 36));
    EXPECT_EQ(jetkernel::pow(z, -2) * jetkernel::pow(z, 2), ComplexRational(1));
    EXPECT_THROW(z / ComplexRational(), std::domain_error);
}
