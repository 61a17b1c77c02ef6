#pragma once

// Known homotopy of the 2-local spectra BP, BPbar (= prod_a S^{8a} BP),
// BP<k>, bu, bo, BoP and the fibres F, X, plus the classical homology
// tables of the spaces of bo and bu.

#include <map>
#include <optional>
#include <ranges>
#include <string>
#include <vector>

#include "bopcalc/errors.hpp"
#include "bopcalc/graded_algebra.hpp"
#include "bopcalc/series.hpp"

namespace bopcalc {

enum class SpectrumTag { BP, BPbar, BPn, bu, bo, BoP, F, X };

struct SpectrumId {
    SpectrumTag tag = SpectrumTag::BP;
    int k = 0;  // only meaningful for BPn

    static SpectrumId bp() { return {SpectrumTag::BP, 0}; }
    static SpectrumId bpbar() { return {SpectrumTag::BPbar, 0}; }
    static SpectrumId bpn(int k)
    {
        if (k < 1)
            throw InvalidParameter("BP<k> needs k >= 1, got " + std::to_string(k));
        return {SpectrumTag::BPn, k};
    }
    static SpectrumId bu() { return {SpectrumTag::bu, 0}; }
    static SpectrumId bo() { return {SpectrumTag::bo, 0}; }
    static SpectrumId bop() { return {SpectrumTag::BoP, 0}; }
    static SpectrumId f() { return {SpectrumTag::F, 0}; }
    static SpectrumId x() { return {SpectrumTag::X, 0}; }

    friend bool operator==(const SpectrumId&, const SpectrumId&) = default;
};

inline std::string to_string(const SpectrumId& s)
{
    switch (s.tag) {
    case SpectrumTag::BP:
        return "BP";
    case SpectrumTag::BPbar:
        return "BPbar";
    case SpectrumTag::BPn:
        return "BPn(" + std::to_string(s.k) + ")";
    case SpectrumTag::bu:
        return "bu";
    case SpectrumTag::bo:
        return "bo";
    case SpectrumTag::BoP:
        return "BoP";
    case SpectrumTag::F:
        return "F";
    case SpectrumTag::X:
        return "X";
    }
    return "?";
}

/// Accepts the names produced by to_string, plus "BP<k>" for BPn(k).
inline SpectrumId parse_spectrum(const std::string& name)
{
    static const std::map<std::string, SpectrumId> fixed = {
        {"BP", SpectrumId::bp()}, {"BPbar", SpectrumId::bpbar()}, {"bu", SpectrumId::bu()},
        {"bo", SpectrumId::bo()}, {"BoP", SpectrumId::bop()},     {"F", SpectrumId::f()},
        {"X", SpectrumId::x()},
    };
    if (auto it = fixed.find(name); it != fixed.end())
        return it->second;
    auto parse_k = [&](std::size_t prefix, char close) -> std::optional<int> {
        if (name.size() <= prefix + 1 || name.back() != close)
            return std::nullopt;
        const std::string digits = name.substr(prefix, name.size() - prefix - 1);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 6)
            return std::nullopt;
        return std::stoi(digits);
    };
    std::optional<int> k;
    if (name.rfind("BPn(", 0) == 0)
        k = parse_k(4, ')');
    else if (name.rfind("BP<", 0) == 0)
        k = parse_k(3, '>');
    if (k)
        return SpectrumId::bpn(*k);
    throw InvalidParameter("unknown spectrum '" + name + "'");
}

/// Free ranks and Z/2 counts of pi_* of a spectrum, degrees 0..N.
struct HomotopyProfile {
    SpectrumId spectrum;
    TruncatedSeries free_ranks;
    std::map<int, int> torsion_z2;

    int truncation() const noexcept { return free_ranks.truncation(); }

    /// Free rank of pi_m; zero below degree 0 (everything here is connective).
    Integer rank(int m) const
    {
        if (m < 0)
            return 0;
        return free_ranks.coefficient(m);
    }

    int torsion(int m) const
    {
        if (m > truncation())
            throw TruncationError("torsion query at degree " + std::to_string(m) + " above truncation " +
                                  std::to_string(truncation()));
        auto it = torsion_z2.find(m);
        return it == torsion_z2.end() ? 0 : it->second;
    }
};

struct SpaceRef {
    SpectrumId spectrum;
    int index = 0;

    friend bool operator==(const SpaceRef&, const SpaceRef&) = default;
};

inline std::string to_string(const SpaceRef& s)
{
    return to_string(s.spectrum) + "_" + std::to_string(s.index);
}

namespace detail {

/// Degrees 2(2^j - 1) of v_j for j >= first, as an unbounded lazy family.
inline auto v_generator_factors(int first)
{
    return std::views::iota(first) | std::views::transform([](int j) {
               const int d = j >= 30 ? std::numeric_limits<int>::max() : 2 * ((1 << j) - 1);
               return Factor{d, 1, FactorForm::inverse_one_minus};
           });
}

inline std::map<int, int> bo_torsion_pattern(int truncation)
{
    std::map<int, int> t;
    for (int d = 1; d <= truncation; ++d) {
        if (d % 8 == 1 || d % 8 == 2)
            t[d] = 1;
    }
    return t;
}

}  // namespace detail

/// Free rank and Z/2 count of pi_m(KO) for any integer m.
struct KoGroup {
    int rank = 0;
    int torsion = 0;
};

inline KoGroup ko_homotopy(int m)
{
    const int r = ((m % 8) + 8) % 8;
    return {r % 4 == 0 ? 1 : 0, (r == 1 || r == 2) ? 1 : 0};
}

inline HomotopyProfile homotopy_profile(const SpectrumId& s, int truncation)
{
    const int n = truncation;
    auto bp = [n] { return product_over(detail::v_generator_factors(1), n); };
    auto bo_free = [n] { return geometric(4, n); };
    auto bop_free = [n] {
        auto base = geometric(8, n) * geometric(4, n);
        return base * product_over(detail::v_generator_factors(2), n);
    };
    switch (s.tag) {
    case SpectrumTag::BP:
        return {s, bp(), {}};
    case SpectrumTag::BPbar:
        return {s, bp() * geometric(8, n), {}};
    case SpectrumTag::BPn:
        if (s.k < 1)
            throw InvalidParameter("BP<k> needs k >= 1");
        return {s, product_over(detail::v_generator_factors(1) | std::views::take(s.k), n), {}};
    case SpectrumTag::bu:
        return {s, geometric(2, n), {}};
    case SpectrumTag::bo:
        return {s, bo_free(), detail::bo_torsion_pattern(n)};
    case SpectrumTag::BoP:
        return {s, bop_free(), detail::bo_torsion_pattern(n)};
    case SpectrumTag::F:
        return {s, bop_free() - bo_free(), {}};
    case SpectrumTag::X:
        return {s, bp() * geometric(8, n) - geometric(2, n), {}};
    }
    throw InvalidParameter("unknown spectrum");
}

/// Truncation a profile needs so that the rank rule can read pi_{d-i} for d <= N.
inline int profile_truncation_for(int index, int truncation)
{
    return std::max({truncation - index, -index, 0});
}

/// The rank rule: for a torsion-free even spectrum whose bar spectral
/// sequences collapse, the generators of H_*(space i) in degree d > 0 are
/// counted by the free rank of pi_{d-i}, and components by pi_{-i}.
inline GeneratorTable rank_rule_from_profile(const HomotopyProfile& profile, int index, int truncation,
                                             AlgebraKind kind)
{
    if (profile.truncation() < profile_truncation_for(index, truncation))
        throw TruncationError("profile of " + to_string(profile.spectrum) + " truncated at " +
                              std::to_string(profile.truncation()) + " is too short for space " +
                              std::to_string(index) + " up to degree " + std::to_string(truncation));
    std::map<int, Integer> counts;
    for (int d = 1; d <= truncation; ++d) {
        Integer r = profile.rank(d - index);
        if (r != 0)
            counts.emplace(d, std::move(r));
    }
    const Integer comp = profile.rank(-index);
    return {kind, std::move(counts), comp.convert_to<int>(), truncation};
}

inline AlgebraKind kind_for_index(int index)
{
    return index % 2 == 0 ? AlgebraKind::polynomial : AlgebraKind::exterior;
}

// ---------------------------------------------------------------------------
// Spaces of bo and KO.

enum class BoFlavor {
    connective,  // bo_i, the default
    periodic,    // KO_i, with the extra component / low-degree factors
};

struct BoIndex {
    int residue = 0;        // which of the eight tables
    bool periodic = false;  // true when the KO form is served
    bool normalized = false;  // true when the requested index differs from the residue
};

/// bo_i = KO_i for i < 4; for 4 <= i <= 7 the flavor picks bo or KO; for
/// i >= 8 only the 8-periodic KO tables are catalogued.
inline BoIndex normalize_bo_index(int index, BoFlavor flavor)
{
    const int r = ((index % 8) + 8) % 8;
    if (index >= 4 && index <= 7)
        return {r, flavor == BoFlavor::periodic || r == 7, false};
    return {r, true, index != r};
}

inline GeneratorTable bo_space_homology(int index, int truncation, BoFlavor flavor = BoFlavor::connective)
{
    const int n = truncation;
    const auto where = normalize_bo_index(index, flavor);
    auto degrees = [n](auto pred) {
        std::vector<int> out;
        for (int d = 1; d <= n; ++d) {
            if (pred(d))
                out.push_back(d);
        }
        return out;
    };
    auto is_power_of_two = [](int d) { return d > 0 && (d & (d - 1)) == 0; };
    using K = AlgebraKind;
    switch (where.residue) {
    case 0:  // Z x BO
        return table_from_degrees(K::polynomial, degrees([](int) { return true; }), 1, n);
    case 1:
        return table_from_degrees(K::polynomial, degrees([](int d) { return d % 2 == 1; }), 0, n);
    case 2:
        return table_from_degrees(K::polynomial, degrees([](int d) { return d % 4 == 2; }), 0, n);
    case 3:
        return table_from_degrees(K::exterior, degrees([](int d) { return d % 4 == 3; }), 0, n);
    case 4:
        return table_from_degrees(K::polynomial, degrees([](int d) { return d % 4 == 0; }), where.periodic ? 1 : 0,
                                  n);
    case 5:
        if (where.periodic)
            return table_from_degrees(K::exterior, degrees([](int d) { return d % 4 == 1; }), 0, n);
        return table_from_degrees(K::exterior, degrees([](int d) { return d % 4 == 1 && d > 1; }), 0, n);
    case 6:
        // pi_0(KO_6) = Z/2 counts as one component.
        if (where.periodic)
            return table_from_degrees(K::exterior, degrees([](int d) { return d % 2 == 0; }), 1, n);
        return table_from_degrees(
            K::exterior, degrees([&](int d) { return d % 2 == 0 && !is_power_of_two(d); }), 0, n);
    default:  // 7: only the KO form E(x_i) is catalogued; pi_0(KO_7) = Z/2.
        return table_from_degrees(K::exterior, degrees([](int) { return true; }), 1, n);
    }
}

// ---------------------------------------------------------------------------
// Spaces of bu: bu_0 = Z x BU, bu_1 = U, bu_2 = BU; other indices by the rank rule.

inline GeneratorTable bu_space_homology(int index, int truncation)
{
    const int n = truncation;
    std::vector<int> even, odd;
    for (int d = 1; d <= n; ++d)
        (d % 2 == 0 ? even : odd).push_back(d);
    switch (index) {
    case 0:
        return table_from_degrees(AlgebraKind::polynomial, even, 1, n);
    case 1:
        return table_from_degrees(AlgebraKind::exterior, odd, 0, n);
    case 2:
        return table_from_degrees(AlgebraKind::polynomial, even, 0, n);
    default: {
        const auto profile = homotopy_profile(SpectrumId::bu(), profile_truncation_for(index, n));
        return rank_rule_from_profile(profile, index, n, kind_for_index(index));
    }
    }
}

// ---------------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const HomotopyProfile& p)
{
    auto torsion = nlohmann::json::array();
    for (const auto& [d, c] : p.torsion_z2)
        torsion.push_back({{"degree", d}, {"count", c}});
    j = nlohmann::json{{"spectrum", to_string(p.spectrum)},
                       {"truncation", p.truncation()},
                       {"free_ranks", p.free_ranks},
                       {"torsion_z2", std::move(torsion)}};
}

inline void to_json(nlohmann::json& j, const SpaceRef& s)
{
    j = nlohmann::json{{"spectrum", to_string(s.spectrum)}, {"index", s.index}};
}

}  // namespace bopcalc
