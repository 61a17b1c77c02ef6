#include <gtest/gtest.h>

#include "bopcalc/series.hpp"
#include "oracles.hpp"

using namespace bopcalc;

TEST(Series, ZeroOneMonomial)
{
    const TruncatedSeries z(5);
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.truncation(), 5);
    const auto one = TruncatedSeries::one(5);
    EXPECT_EQ(one[0], 1);
    const auto m = TruncatedSeries::monomial(3, 7, 5);
    EXPECT_EQ(m[3], 7);
    EXPECT_EQ(m[2], 0);
    EXPECT_THROW(TruncatedSeries::monomial(6, 1, 5), TruncationError);
    EXPECT_THROW(TruncatedSeries(-1), TruncationError);
    EXPECT_THROW(TruncatedSeries(3, std::vector<Integer>(3)), TruncationError);
}

TEST(Series, CheckedCoefficientAccess)
{
    const auto p = make_polynomial({{0, 1}, {2, -3}}, 4);
    EXPECT_EQ(coefficient(p, 2), -3);
    EXPECT_THROW(coefficient(p, 5), TruncationError);
    EXPECT_THROW(coefficient(p, -1), TruncationError);
}

TEST(Series, MakePolynomialSumsRepeatsAndRejectsHighTerms)
{
    const auto p = make_polynomial({{1, 2}, {1, 3}}, 4);
    EXPECT_EQ(p[1], 5);
    EXPECT_EQ(p.truncation(), 4);
    EXPECT_THROW(make_polynomial({{9, 4}}, 4), TruncationError);
}

TEST(Series, MultiplicationMatchesSchoolbook)
{
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = oracle::random_series(rng, 30);
        const auto b = oracle::random_series(rng, 30);
        EXPECT_EQ(a * b, oracle::naive_mul(a, b));
    }
}

TEST(Series, MultiplicationRequiresEqualTruncation)
{
    EXPECT_THROW(TruncatedSeries::one(3) * TruncatedSeries::one(4), TruncationError);
}

TEST(Series, InvertAndDivide)
{
    const auto a = make_polynomial({{0, 1}, {1, 1}, {3, -2}}, 20);
    EXPECT_EQ(a * invert(a), TruncatedSeries::one(20));
    const auto b = make_polynomial({{0, -1}, {2, 5}}, 20);
    EXPECT_EQ(divide(a * b, b), a);
    EXPECT_THROW(invert(make_polynomial({{0, 2}}, 4)), NotInvertible);
    EXPECT_THROW(invert(make_polynomial({{1, 1}}, 4)), NotInvertible);
}

TEST(Series, GeometricSeries)
{
    const auto g = geometric(3, 12);
    for (int d = 0; d <= 12; ++d)
        EXPECT_EQ(g[d], d % 3 == 0 ? 1 : 0) << d;
}

TEST(Series, TruncatedAndShifted)
{
    const auto p = make_polynomial({{0, 1}, {1, 2}, {4, 3}}, 6);
    EXPECT_EQ(p.truncated(1), make_polynomial({{0, 1}, {1, 2}}, 1));
    EXPECT_THROW(p.truncated(7), TruncationError);
    const auto s = p.shifted(3);
    EXPECT_EQ(s, make_polynomial({{3, 1}, {4, 2}}, 6));
}

TEST(Series, NonnegativeAndFirstDifference)
{
    const auto p = make_polynomial({{0, 1}, {3, -1}, {5, -2}}, 6);
    EXPECT_EQ(check_nonnegative(p), 3);
    EXPECT_FALSE(check_nonnegative(geometric(2, 6)));
    EXPECT_EQ(first_difference(p, TruncatedSeries::one(6)), 3);
    EXPECT_FALSE(first_difference(p, p));
    EXPECT_THROW(first_difference(p, TruncatedSeries::one(5)), TruncationError);
}

TEST(Factors, InverseOneMinusCountsMonomials)
{
    for (int c = 1; c <= 4; ++c) {
        const auto s = apply_factor(TruncatedSeries::one(30), {3, c, FactorForm::inverse_one_minus});
        EXPECT_EQ(s, oracle::as_series(oracle::count_monomials(std::vector<int>(c, 3), 30))) << c;
    }
}

TEST(Factors, OnePlusCountsSubsets)
{
    for (int c = 1; c <= 6; ++c) {
        const auto s = apply_factor(TruncatedSeries::one(30), {2, c, FactorForm::one_plus});
        EXPECT_EQ(s, oracle::as_series(oracle::count_subsets(std::vector<int>(c, 2), 30))) << c;
    }
}

TEST(Factors, OneMinusIsRepeatedBinomial)
{
    auto expected = TruncatedSeries::one(30);
    for (int c = 1; c <= 5; ++c) {
        expected = oracle::naive_mul(expected, oracle::binomial_factor(4, -1, 30));
        EXPECT_EQ(apply_factor(TruncatedSeries::one(30), {4, c, FactorForm::one_minus}), expected) << c;
    }
}

TEST(Factors, LargeMultiplicityUsesSameAnswer)
{
    // 300 copies of each form at degree 1, far above N = 12, against repeated schoolbook products.
    const int n = 12;
    const int c = 300;
    auto inv = TruncatedSeries::one(n), plus = TruncatedSeries::one(n), minus = TruncatedSeries::one(n);
    const auto geo1 = oracle::as_series(oracle::count_monomials({1}, n));
    for (int r = 0; r < c; ++r) {
        inv = oracle::naive_mul(inv, geo1);
        plus = oracle::naive_mul(plus, oracle::binomial_factor(1, 1, n));
        minus = oracle::naive_mul(minus, oracle::binomial_factor(1, -1, n));
    }
    EXPECT_EQ(apply_factor(TruncatedSeries::one(n), {1, c, FactorForm::inverse_one_minus}), inv);
    EXPECT_EQ(apply_factor(TruncatedSeries::one(n), {1, c, FactorForm::one_plus}), plus);
    EXPECT_EQ(apply_factor(TruncatedSeries::one(n), {1, c, FactorForm::one_minus}), minus);
}

TEST(Factors, HugeMultiplicityStaysExact)
{
    // coefficient of x^2 in 1/(1-x)^c is c(c+1)/2
    const Integer c("100000000000000000000000000000");
    const auto s = apply_factor(TruncatedSeries::one(2), {1, c, FactorForm::inverse_one_minus});
    EXPECT_EQ(s[1], c);
    EXPECT_EQ(s[2], c * (c + 1) / 2);
}

TEST(Factors, RejectsBadFactors)
{
    EXPECT_THROW(apply_factor(TruncatedSeries::one(4), {0, 1, FactorForm::one_plus}), ZeroDegreeFactor);
    EXPECT_THROW(apply_factor(TruncatedSeries::one(4), {-1, 1, FactorForm::one_plus}), InvalidParameter);
    EXPECT_THROW(apply_factor(TruncatedSeries::one(4), {1, -1, FactorForm::one_plus}), InvalidParameter);
    EXPECT_THROW(product_over({{2, 1, FactorForm::one_plus}, {1, 1, FactorForm::one_plus}}, 4), InvalidParameter);
}

TEST(Factors, InfiniteFamilyStopsAtTruncation)
{
    // prod_{d >= 1} 1/(1 - x^d): partition numbers.
    const int n = 40;
    const auto s = product_over(std::views::iota(1) | std::views::transform([](int d) {
                                    return Factor{d, 1, FactorForm::inverse_one_minus};
                                }),
                                n);
    std::vector<int> parts;
    for (int d = 1; d <= n; ++d)
        parts.push_back(d);
    EXPECT_EQ(s, oracle::as_series(oracle::count_monomials(parts, n)));
    for (int d = 0; d <= 20; ++d)
        EXPECT_EQ(s[d], oracle::enumerate_multisets(parts, d)) << d;
}

TEST(Serialization, JsonRoundTrip)
{
    const auto big = Integer("123456789012345678901234567890");
    const auto p = make_polynomial({{0, 1}, {2, big}, {3, -4}}, 5);
    const nlohmann::json j = p;
    EXPECT_EQ(j["truncation"], 5);
    EXPECT_EQ(j["coefficients"][2], big.str());
    EXPECT_EQ(j.get<TruncatedSeries>(), p);
}

TEST(Serialization, Csv)
{
    const auto csv = to_csv(make_polynomial({{0, 1}, {1, -2}}, 1));
    EXPECT_EQ(csv, "degree,coefficient\n0,1\n1,-2\n");
}
