// Randomised algebraic laws over fixed seeds.

#include <gtest/gtest.h>

#include "bopcalc/graded_algebra.hpp"
#include "oracles.hpp"

using namespace bopcalc;

namespace {

constexpr int kTrials = 50;

GeneratorTable random_table(std::mt19937_64& rng, AlgebraKind kind, int n)
{
    std::uniform_int_distribution<int> deg(1, n), cnt(1, 5), size(0, 6);
    std::map<int, Integer> counts;
    for (int i = size(rng); i > 0; --i)
        counts[deg(rng)] += cnt(rng);
    return {kind, std::move(counts), 0, n};
}

}  // namespace

TEST(Properties, RingLaws)
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < kTrials; ++t) {
        const auto a = oracle::random_series(rng, 25);
        const auto b = oracle::random_series(rng, 25);
        const auto c = oracle::random_series(rng, 25);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, TruncatedSeries(25));
        EXPECT_EQ(-(-a), a);
    }
}

TEST(Properties, InverseOfUnits)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int t = 0; t < kTrials; ++t) {
        auto a = oracle::random_series(rng, 25);
        a = a + TruncatedSeries::monomial(0, (sign(rng) ? 1 : -1) - a[0], 25);
        EXPECT_EQ(a * invert(a), TruncatedSeries::one(25));
        EXPECT_EQ(invert(invert(a)), a);
    }
}

TEST(Properties, TruncationCommutesWithProduct)
{
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> cut(0, 30);
    for (int t = 0; t < kTrials; ++t) {
        const auto a = oracle::random_series(rng, 30);
        const auto b = oracle::random_series(rng, 30);
        const int m = cut(rng);
        EXPECT_EQ((a * b).truncated(m), a.truncated(m) * b.truncated(m));
    }
}

TEST(Properties, FactorAndItsInverseCancel)
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> deg(1, 10), mult(1, 40);
    for (int t = 0; t < kTrials; ++t) {
        const auto a = oracle::random_series(rng, 40);
        const int d = deg(rng);
        const Integer c = mult(rng);
        const auto b = apply_factor(apply_factor(a, {d, c, FactorForm::inverse_one_minus}),
                                    {d, c, FactorForm::one_minus});
        EXPECT_EQ(b, a);
    }
}

TEST(Properties, ExtractInvertsPoincare)
{
    std::mt19937_64 rng(19);
    for (int t = 0; t < kTrials; ++t) {
        for (auto kind : {AlgebraKind::polynomial, AlgebraKind::exterior}) {
            const auto g = random_table(rng, kind, 40);
            EXPECT_EQ(extract_generators(poincare_series(g), kind), g);
        }
    }
}

TEST(Properties, PoincareOfTensorIsProduct)
{
    std::mt19937_64 rng(23);
    for (int t = 0; t < kTrials; ++t) {
        for (auto kind : {AlgebraKind::polynomial, AlgebraKind::exterior}) {
            const auto a = random_table(rng, kind, 30);
            const auto b = random_table(rng, kind, 30);
            EXPECT_EQ(poincare_series(tensor(a, b)), poincare_series(a) * poincare_series(b));
        }
    }
}
