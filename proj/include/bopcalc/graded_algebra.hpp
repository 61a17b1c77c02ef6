#pragma once

// Free graded-commutative algebras over Z/2 described only by how many
// generators they have in each degree, together with the Tor rules that
// carry such an algebra for one space of an Omega spectrum to the next.

#include <cstdint>
#include <limits>
#include <map>
#include <ranges>
#include <string>
#include <string_view>
#include <vector>

#include "bopcalc/errors.hpp"
#include "bopcalc/series.hpp"

namespace bopcalc {

enum class AlgebraKind {
    polynomial,
    exterior,
    divided_power,
    even_unresolved,  // divided power whose extension problem was left open
};

constexpr std::string_view to_string(AlgebraKind kind) noexcept
{
    switch (kind) {
    case AlgebraKind::polynomial:
        return "polynomial";
    case AlgebraKind::exterior:
        return "exterior";
    case AlgebraKind::divided_power:
        return "divided_power";
    case AlgebraKind::even_unresolved:
        return "even_unresolved";
    }
    return "?";
}

inline AlgebraKind parse_algebra_kind(std::string_view name)
{
    for (auto k : {AlgebraKind::polynomial, AlgebraKind::exterior, AlgebraKind::divided_power,
                   AlgebraKind::even_unresolved}) {
        if (to_string(k) == name)
            return k;
    }
    throw InvalidKind("unknown algebra kind '" + std::string(name) + "'");
}

/// Generator counts per positive degree plus the number of degree-0
/// generators coming from the components (the group-ring convention: each
/// summand of pi_0 acts as one polynomial generator in degree 0 and so
/// contributes one degree-1 class after a delooping).
class GeneratorTable {
public:
    GeneratorTable(AlgebraKind kind, std::map<int, Integer> counts, int component_rank, int truncation)
        : kind_(kind)
        , component_rank_(component_rank)
        , truncation_(truncation)
    {
        if (truncation < 0)
            throw TruncationError("negative truncation degree " + std::to_string(truncation));
        if (component_rank < 0)
            throw InvalidParameter("negative component rank " + std::to_string(component_rank));
        for (auto& [d, c] : counts) {
            if (d < 1)
                throw InvalidParameter("generator degree " + std::to_string(d) +
                                       " < 1; degree-0 generators belong in component_rank");
            if (d > truncation)
                throw TruncationError("generator degree " + std::to_string(d) + " above truncation " +
                                      std::to_string(truncation));
            if (c < 0)
                throw InvalidParameter("negative generator count at degree " + std::to_string(d));
            if (c != 0)
                counts_.emplace(d, std::move(c));
        }
    }

    static GeneratorTable empty(AlgebraKind kind, int truncation) { return {kind, {}, 0, truncation}; }

    AlgebraKind kind() const noexcept { return kind_; }
    const std::map<int, Integer>& counts() const noexcept { return counts_; }
    int component_rank() const noexcept { return component_rank_; }
    int truncation() const noexcept { return truncation_; }

    Integer count(int degree) const
    {
        auto it = counts_.find(degree);
        return it == counts_.end() ? Integer(0) : it->second;
    }

    Integer total_generators() const
    {
        Integer t = 0;
        for (const auto& [d, c] : counts_)
            t += c;
        return t;
    }

    friend bool operator==(const GeneratorTable&, const GeneratorTable&) = default;

private:
    AlgebraKind kind_;
    std::map<int, Integer> counts_;
    int component_rank_;
    int truncation_;
};

/// One generator in each listed degree; degrees above N are ignored.
template <std::ranges::input_range R>
GeneratorTable table_from_degrees(AlgebraKind kind, R&& degrees, int component_rank, int truncation)
{
    std::map<int, Integer> counts;
    for (int d : degrees) {
        if (d > truncation)
            continue;
        counts[d] += 1;
    }
    return {kind, std::move(counts), component_rank, truncation};
}

inline GeneratorTable table_from_degrees(AlgebraKind kind, std::initializer_list<int> degrees, int component_rank,
                                         int truncation)
{
    return table_from_degrees(kind, std::vector<int>(degrees), component_rank, truncation);
}

struct ParityReport {
    bool all_even = true;
    bool all_odd = true;
    /// Empty unless the table mixes parities, in which case every degree is listed.
    std::vector<int> offending;
};

/// Series of the underlying free algebra. Divided-power and unresolved
/// tables share the polynomial formula: Gamma[z] has one basis element in
/// each degree j|z|. Components contribute nothing here.
inline TruncatedSeries poincare_series(const GeneratorTable& g)
{
    const FactorForm form =
        g.kind() == AlgebraKind::exterior ? FactorForm::one_plus : FactorForm::inverse_one_minus;
    std::vector<Factor> factors;
    factors.reserve(g.counts().size());
    for (const auto& [d, c] : g.counts())
        factors.push_back({d, c, form});
    return product_over(factors, g.truncation());
}

/// One bar-spectral-sequence step, assuming collapse:
/// polynomial -> exterior and exterior -> divided power on the suspensions,
/// plus one degree-1 generator per component of the input.
inline GeneratorTable tor_suspend(const GeneratorTable& g, int next_component_rank)
{
    AlgebraKind out_kind;
    switch (g.kind()) {
    case AlgebraKind::polynomial:
        out_kind = AlgebraKind::exterior;
        break;
    case AlgebraKind::exterior:
        out_kind = AlgebraKind::divided_power;
        break;
    default:
        throw UnresolvedExtension("tor_suspend needs a polynomial or exterior table, got " +
                                  std::string(to_string(g.kind())) + "; resolve the extension first");
    }
    const int n = g.truncation();
    std::map<int, Integer> counts;
    if (g.component_rank() > 0 && n >= 1)
        counts[1] += g.component_rank();
    for (const auto& [d, c] : g.counts()) {
        if (d + 1 <= n)
            counts[d + 1] += c;
    }
    return {out_kind, std::move(counts), next_component_rank, n};
}

/// Settles the multiplicative extensions of a divided-power table, either by
/// asserting the answer is polynomial or by leaving it explicitly open.
inline GeneratorTable resolve_extensions(const GeneratorTable& g, bool assert_polynomial)
{
    if (g.kind() != AlgebraKind::divided_power)
        throw InvalidKind("resolve_extensions needs a divided_power table, got " + std::string(to_string(g.kind())));
    return {assert_polynomial ? AlgebraKind::polynomial : AlgebraKind::even_unresolved, g.counts(),
            g.component_rank(), g.truncation()};
}

/// Reads generator counts off a series by peeling factors in ascending degree.
inline GeneratorTable extract_generators(const TruncatedSeries& s, AlgebraKind kind)
{
    if (kind != AlgebraKind::polynomial && kind != AlgebraKind::exterior)
        throw InvalidKind("extract_generators supports polynomial or exterior, got " + std::string(to_string(kind)));
    if (s[0] != 1)
        throw InvalidParameter("extract_generators needs constant term 1, got " + s[0].str());
    const int n = s.truncation();
    // Dividing out a factor: polynomial generators contribute 1/(1-x^d)^c, so
    // multiply by (1-x^d)^c; exterior ones contribute (1+x^d)^c, so multiply by
    // 1/(1+x^d)^c = (1-x^d)^c / (1-x^{2d})^c.
    TruncatedSeries rest = s;
    std::map<int, Integer> counts;
    for (int d = 1; d <= n; ++d) {
        const Integer c = rest[d];
        if (c < 0)
            throw NegativeDimension(d, "series is not the Poincare series of a free " +
                                           std::string(to_string(kind)) + " algebra");
        if (c == 0)
            continue;
        counts.emplace(d, c);
        rest = apply_factor(std::move(rest), {d, c, FactorForm::one_minus});
        if (kind == AlgebraKind::exterior && 2 * d <= n)
            rest = apply_factor(std::move(rest), {2 * d, c, FactorForm::inverse_one_minus});
    }
    return {kind, std::move(counts), 0, n};
}

inline GeneratorTable tensor(const GeneratorTable& a, const GeneratorTable& b)
{
    if (a.kind() != b.kind())
        throw InvalidKind("tensor of " + std::string(to_string(a.kind())) + " and " +
                          std::string(to_string(b.kind())) + " tables; multiply the series instead");
    if (a.truncation() != b.truncation())
        throw TruncationError("tensor of tables with truncations " + std::to_string(a.truncation()) + " and " +
                              std::to_string(b.truncation()));
    std::map<int, Integer> counts = a.counts();
    for (const auto& [d, c] : b.counts())
        counts[d] += c;
    return {a.kind(), std::move(counts), a.component_rank() + b.component_rank(), a.truncation()};
}

inline ParityReport parity_check(const GeneratorTable& g)
{
    ParityReport r;
    for (const auto& [d, c] : g.counts()) {
        if (d % 2 == 0)
            r.all_odd = false;
        else
            r.all_even = false;
    }
    if (!r.all_even && !r.all_odd) {
        for (const auto& [d, c] : g.counts())
            r.offending.push_back(d);
    }
    return r;
}

// ---------------------------------------------------------------------------
// {"kind": ..., "component_rank": r, "generators": [{"degree": d, "count": c}], "truncation": N}
// Counts that overflow 64 bits are written as decimal strings.

inline nlohmann::json integer_to_json(const Integer& v)
{
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max())
        return v.convert_to<std::uint64_t>();
    if (v < 0 && v >= std::numeric_limits<std::int64_t>::min())
        return v.convert_to<std::int64_t>();
    return v.str();
}

inline Integer integer_from_json(const nlohmann::json& j)
{
    if (j.is_string())
        return Integer(j.get<std::string>());
    if (j.is_number_unsigned())
        return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
}

inline void to_json(nlohmann::json& j, const GeneratorTable& g)
{
    auto gens = nlohmann::json::array();
    for (const auto& [d, c] : g.counts())
        gens.push_back({{"degree", d}, {"count", integer_to_json(c)}});
    j = nlohmann::json{{"kind", std::string(to_string(g.kind()))},
                       {"component_rank", g.component_rank()},
                       {"generators", std::move(gens)},
                       {"truncation", g.truncation()}};
}

inline GeneratorTable generator_table_from_json(const nlohmann::json& j)
{
    std::map<int, Integer> counts;
    for (const auto& e : j.at("generators"))
        counts[e.at("degree").get<int>()] += integer_from_json(e.at("count"));
    return {parse_algebra_kind(j.at("kind").get<std::string>()), std::move(counts), j.at("component_rank").get<int>(),
            j.at("truncation").get<int>()};
}

}  // namespace bopcalc
