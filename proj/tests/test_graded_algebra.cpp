#include <gtest/gtest.h>

#include "bopcalc/graded_algebra.hpp"
#include "oracles.hpp"

using namespace bopcalc;

namespace {

std::vector<int> expand(const GeneratorTable& g)
{
    std::vector<int> out;
    for (const auto& [d, c] : g.counts())
        for (Integer i = 0; i < c; ++i)
            out.push_back(d);
    return out;
}

}  // namespace

TEST(GeneratorTable, Validation)
{
    EXPECT_THROW(GeneratorTable(AlgebraKind::polynomial, {{0, 1}}, 0, 5), InvalidParameter);
    EXPECT_THROW(GeneratorTable(AlgebraKind::polynomial, {{6, 1}}, 0, 5), TruncationError);
    EXPECT_THROW(GeneratorTable(AlgebraKind::polynomial, {{2, -1}}, 0, 5), InvalidParameter);
    EXPECT_THROW(GeneratorTable(AlgebraKind::polynomial, {}, -1, 5), InvalidParameter);
    const GeneratorTable g(AlgebraKind::exterior, {{2, 0}, {3, 2}}, 1, 5);
    EXPECT_EQ(g.counts().size(), 1u);
    EXPECT_EQ(g.count(3), 2);
    EXPECT_EQ(g.count(4), 0);
    EXPECT_EQ(g.total_generators(), 2);
}

TEST(GeneratorTable, KindNames)
{
    for (auto k : {AlgebraKind::polynomial, AlgebraKind::exterior, AlgebraKind::divided_power,
                   AlgebraKind::even_unresolved})
        EXPECT_EQ(parse_algebra_kind(to_string(k)), k);
    EXPECT_THROW(parse_algebra_kind("tensor"), InvalidKind);
}

TEST(PoincareSeries, PolynomialCountsMonomials)
{
    const GeneratorTable g(AlgebraKind::polynomial, {{1, 1}, {2, 2}, {5, 1}}, 0, 30);
    EXPECT_EQ(poincare_series(g), oracle::as_series(oracle::count_monomials(expand(g), 30)));
}

TEST(PoincareSeries, ExteriorCountsSubsets)
{
    const GeneratorTable g(AlgebraKind::exterior, {{1, 3}, {3, 2}, {4, 1}}, 0, 20);
    EXPECT_EQ(poincare_series(g), oracle::as_series(oracle::count_subsets(expand(g), 20)));
}

TEST(PoincareSeries, DividedPowerSharesPolynomialSeries)
{
    const std::map<int, Integer> c{{2, 1}, {4, 3}};
    EXPECT_EQ(poincare_series({AlgebraKind::divided_power, c, 0, 20}),
              poincare_series({AlgebraKind::polynomial, c, 0, 20}));
}

TEST(Extract, RoundTripsBothKinds)
{
    const GeneratorTable p(AlgebraKind::polynomial, {{2, 1}, {3, 4}, {8, 2}, {15, 1}}, 0, 40);
    EXPECT_EQ(extract_generators(poincare_series(p), AlgebraKind::polynomial), p);
    const GeneratorTable e(AlgebraKind::exterior, {{1, 2}, {3, 1}, {5, 3}, {11, 1}}, 0, 40);
    EXPECT_EQ(extract_generators(poincare_series(e), AlgebraKind::exterior), e);
}

TEST(Extract, ReportsNegativeDimension)
{
    try {
        extract_generators(make_polynomial({{0, 1}, {2, -1}}, 6), AlgebraKind::polynomial);
        FAIL() << "expected NegativeDimension";
    } catch (const NegativeDimension& e) {
        EXPECT_EQ(e.degree(), 2);
    }
    EXPECT_THROW(extract_generators(TruncatedSeries::one(4), AlgebraKind::divided_power), InvalidKind);
    EXPECT_THROW(extract_generators(TruncatedSeries(4), AlgebraKind::polynomial), InvalidParameter);
}

TEST(TorSuspend, PolynomialToExterior)
{
    const GeneratorTable g(AlgebraKind::polynomial, {{2, 1}, {4, 2}, {10, 1}}, 3, 10);
    const auto t = tor_suspend(g, 0);
    EXPECT_EQ(t.kind(), AlgebraKind::exterior);
    EXPECT_EQ(t.count(1), 3);
    EXPECT_EQ(t.count(3), 1);
    EXPECT_EQ(t.count(5), 2);
    EXPECT_EQ(t.count(11), 0);
    EXPECT_EQ(t.component_rank(), 0);
}

TEST(TorSuspend, ExteriorToDividedPowerThenStops)
{
    const GeneratorTable g(AlgebraKind::exterior, {{1, 1}, {3, 1}}, 0, 10);
    const auto t = tor_suspend(g, 1);
    EXPECT_EQ(t.kind(), AlgebraKind::divided_power);
    EXPECT_EQ(t.component_rank(), 1);
    EXPECT_THROW(tor_suspend(t, 0), UnresolvedExtension);
    EXPECT_THROW(tor_suspend(resolve_extensions(t, false), 0), UnresolvedExtension);
    EXPECT_EQ(tor_suspend(resolve_extensions(t, true), 0).kind(), AlgebraKind::exterior);
    EXPECT_THROW(resolve_extensions(g, true), InvalidKind);
}

TEST(Tensor, AddsCountsAndComponents)
{
    const GeneratorTable a(AlgebraKind::polynomial, {{2, 1}}, 1, 8);
    const GeneratorTable b(AlgebraKind::polynomial, {{2, 2}, {4, 1}}, 0, 8);
    const auto t = tensor(a, b);
    EXPECT_EQ(t.count(2), 3);
    EXPECT_EQ(t.component_rank(), 1);
    EXPECT_EQ(poincare_series(t), poincare_series(a) * poincare_series(b));
    EXPECT_THROW(tensor(a, GeneratorTable(AlgebraKind::exterior, {}, 0, 8)), InvalidKind);
    EXPECT_THROW(tensor(a, GeneratorTable(AlgebraKind::polynomial, {}, 0, 9)), TruncationError);
}

TEST(Parity, ListsOffendersOnlyWhenMixed)
{
    const auto even = parity_check({AlgebraKind::polynomial, {{2, 1}, {4, 1}}, 0, 8});
    EXPECT_TRUE(even.all_even);
    EXPECT_FALSE(even.all_odd);
    EXPECT_TRUE(even.offending.empty());
    const auto mixed = parity_check({AlgebraKind::polynomial, {{2, 1}, {3, 1}}, 0, 8});
    EXPECT_FALSE(mixed.all_even);
    EXPECT_FALSE(mixed.all_odd);
    EXPECT_EQ(mixed.offending, (std::vector<int>{2, 3}));
}

TEST(Serialization, TableJsonRoundTrip)
{
    const Integer big("98765432109876543210987654321");
    const GeneratorTable g(AlgebraKind::exterior, {{3, 2}, {7, big}}, 1, 10);
    const nlohmann::json j = g;
    EXPECT_EQ(j["kind"], "exterior");
    EXPECT_EQ(j["generators"][0]["count"], 2);
    EXPECT_EQ(j["generators"][1]["count"], big.str());
    EXPECT_EQ(generator_table_from_json(j), g);
}

TEST(TableFromDegrees, SkipsDegreesAboveTruncation)
{
    const auto g = table_from_degrees(AlgebraKind::polynomial, {1, 3, 3, 9}, 0, 5);
    EXPECT_EQ(g.count(3), 2);
    EXPECT_EQ(g.count(9), 0);
}
