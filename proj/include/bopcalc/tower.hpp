#pragma once

// Inductive computation of the homology of Omega-spectrum spaces: the rank
// rule for torsion-free even spectra, iterated bar spectral sequences, and
// the short exact sequences
//   H(BoP_i) -> H(BPbar_i) -> H(BoP_{i+2})    (i >= 2)
//   H(F_i)   -> H(X_i)     -> H(F_{i+2})      (i <= 6)
// solved at the level of Poincare series.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bopcalc/catalog.hpp"
#include "bopcalc/errors.hpp"
#include "bopcalc/graded_algebra.hpp"
#include "bopcalc/report.hpp"
#include "bopcalc/series.hpp"

namespace bopcalc {

enum class Provenance { rank_rule, bss_iteration, ses_solved, catalog, product };

constexpr std::string_view to_string(Provenance p) noexcept
{
    switch (p) {
    case Provenance::rank_rule:
        return "rank_rule";
    case Provenance::bss_iteration:
        return "bss_iteration";
    case Provenance::ses_solved:
        return "ses_solved";
    case Provenance::catalog:
        return "catalog";
    case Provenance::product:
        return "product";
    }
    return "?";
}

/// Homology of one space. `table` is absent only for mixed-kind products,
/// which exist at series level alone.
struct TowerResult {
    SpaceRef space;
    std::optional<GeneratorTable> table;
    TruncatedSeries series;
    Provenance provenance = Provenance::catalog;

    static TowerResult from_table(SpaceRef space, GeneratorTable table, Provenance provenance)
    {
        auto series = poincare_series(table);
        return {space, std::move(table), std::move(series), provenance};
    }
};

// ---------------------------------------------------------------------------

/// Highest F/X index with a kind-labelled table, and the highest overall.
inline constexpr int kFiberLabelledMax = 7;
inline constexpr int kFiberUnresolvedMax = 8;

inline bool rank_rule_applies(const SpectrumId& s)
{
    return s.tag != SpectrumTag::bo && s.tag != SpectrumTag::BoP;
}

/// Kind for the rank-rule table of a space, or RankRuleInapplicable.
inline AlgebraKind rank_rule_kind(const SpaceRef& space)
{
    if (!rank_rule_applies(space.spectrum))
        throw RankRuleInapplicable(to_string(space.spectrum) + " has torsion in homotopy; the rank rule needs a "
                                                               "torsion-free even spectrum");
    const bool fibre = space.spectrum.tag == SpectrumTag::F || space.spectrum.tag == SpectrumTag::X;
    if (fibre && space.index > kFiberUnresolvedMax)
        throw RankRuleInapplicable("no homology model for " + to_string(space) + " (index above " +
                                   std::to_string(kFiberUnresolvedMax) + ")");
    if (fibre && space.index > kFiberLabelledMax)
        return AlgebraKind::even_unresolved;
    return kind_for_index(space.index);
}

/// Rank-rule table computed from an explicit profile (used for fault injection).
inline GeneratorTable rank_rule_homology(const SpaceRef& space, const HomotopyProfile& profile, int truncation)
{
    return rank_rule_from_profile(profile, space.index, truncation, rank_rule_kind(space));
}

inline GeneratorTable rank_rule_homology(const SpaceRef& space, int truncation)
{
    const auto kind = rank_rule_kind(space);
    const auto profile = homotopy_profile(space.spectrum, profile_truncation_for(space.index, truncation));
    return rank_rule_from_profile(profile, space.index, truncation, kind);
}

inline TowerResult rank_rule_result(const SpaceRef& space, int truncation)
{
    return TowerResult::from_table(space, rank_rule_homology(space, truncation), Provenance::rank_rule);
}

// ---------------------------------------------------------------------------

/// Applies `steps` collapsing bar spectral sequences starting from `start`.
/// component_ranks[t] is the pi_0 rank of the space reached after step t+1.
/// A divided-power result is declared polynomial only if every generator
/// sits in even degree and `assert_polynomial` is set.
inline std::vector<TowerResult> bss_iterate(const TowerResult& start, int steps,
                                            const std::vector<int>& component_ranks, bool assert_polynomial)
{
    if (steps < 1)
        throw InvalidParameter("bss_iterate needs at least one step");
    if (static_cast<int>(component_ranks.size()) < steps)
        throw InvalidParameter("bss_iterate needs one component rank per step");
    if (!start.table)
        throw InvalidKind("bss_iterate needs a generator table, not a bare series");
    std::vector<TowerResult> out;
    out.reserve(static_cast<std::size_t>(steps));
    GeneratorTable current = *start.table;
    SpaceRef where = start.space;
    for (int t = 0; t < steps; ++t) {
        GeneratorTable next = tor_suspend(current, component_ranks[static_cast<std::size_t>(t)]);
        if (next.kind() == AlgebraKind::divided_power && assert_polynomial && parity_check(next).all_even)
            next = resolve_extensions(next, true);
        where.index += 1;
        out.push_back(TowerResult::from_table(where, next, Provenance::bss_iteration));
        current = std::move(next);
    }
    return out;
}

/// Quotient of a short exact sequence of connected Hopf algebras, which
/// split as algebras: middle = sub * quotient.
inline TruncatedSeries ses_quotient(const TruncatedSeries& middle, const TruncatedSeries& sub)
{
    if (middle[0] != 1 || sub[0] != 1)
        throw InvalidParameter("ses_quotient needs series with constant term 1");
    auto q = divide(middle, sub);
    if (auto bad = check_nonnegative(q))
        throw NegativeDimension(*bad, "short exact sequence does not factor");
    return q;
}

// ---------------------------------------------------------------------------
// BoP.

/// H_*(BoP_2) = H_*(F_2) (x) H_*(bo_2).
inline TowerResult bop_base(int truncation)
{
    const SpaceRef space{SpectrumId::bop(), 2};
    auto table = tensor(rank_rule_homology({SpectrumId::f(), 2}, truncation), bo_space_homology(2, truncation));
    return TowerResult::from_table(space, std::move(table), Provenance::product);
}

/// H_*(BoP_i) for 2 <= i <= i_max. BoP_2 comes from the product above and
/// BoP_3 from one bar spectral sequence; every later space is the quotient
/// of H(BPbar_{i-2}) by H(BoP_{i-2}), read as a polynomial (i even) or
/// exterior (i odd) algebra.
inline std::vector<TowerResult> bop_tower(int i_max, int truncation)
{
    if (i_max < 2)
        throw InvalidParameter("bop_tower needs i_max >= 2, got " + std::to_string(i_max));
    std::vector<TowerResult> out;
    out.push_back(bop_base(truncation));
    if (i_max >= 3)
        out.push_back(bss_iterate(out.front(), 1, {0}, false).front());
    for (int i = 4; i <= i_max; ++i) {
        const TowerResult& sub = out[static_cast<std::size_t>(i - 4)];
        const auto middle = rank_rule_result({SpectrumId::bpbar(), i - 2}, truncation);
        auto quotient = ses_quotient(middle.series, sub.series);
        auto table = extract_generators(quotient, kind_for_index(i));
        out.push_back({{SpectrumId::bop(), i}, std::move(table), std::move(quotient), Provenance::ses_solved});
    }
    return out;
}

/// Homology of any BoP space: the tower for i >= 2, the F (x) bo product below.
inline TowerResult bop_space_homology(int index, int truncation)
{
    if (index >= 2)
        return bop_tower(index, truncation).back();
    const SpaceRef space{SpectrumId::bop(), index};
    const auto f = rank_rule_homology({SpectrumId::f(), index}, truncation);
    const auto bo = bo_space_homology(index, truncation);
    if (f.kind() == bo.kind())
        return TowerResult::from_table(space, tensor(f, bo), Provenance::product);
    return {space, std::nullopt, poincare_series(f) * poincare_series(bo), Provenance::product};
}

/// Homology of a space by whichever route the library has for it.
inline TowerResult space_homology(const SpaceRef& space, int truncation, BoFlavor flavor = BoFlavor::connective)
{
    switch (space.spectrum.tag) {
    case SpectrumTag::bo:
        return TowerResult::from_table(space, bo_space_homology(space.index, truncation, flavor),
                                       Provenance::catalog);
    case SpectrumTag::bu:
        if (space.index >= 0 && space.index <= 2)
            return TowerResult::from_table(space, bu_space_homology(space.index, truncation), Provenance::catalog);
        return rank_rule_result(space, truncation);
    case SpectrumTag::BoP:
        return bop_space_homology(space.index, truncation);
    default:
        return rank_rule_result(space, truncation);
    }
}

// ---------------------------------------------------------------------------
// Verifications.

/// series(X_i) = series(F_i) * series(F_{i+2}) for i_from <= i <= i_to.
/// An explicit F profile replaces the catalogued one (fault injection).
inline VerificationReport verify_negative_tower(int i_from, int i_to, int truncation,
                                                const std::optional<HomotopyProfile>& f_profile = std::nullopt)
{
    nlohmann::ordered_json params{{"from", i_from}, {"to", i_to}, {"max_degree", truncation}};
    if (f_profile)
        params["f_profile"] = "override";
    return timed_check("negative-tower", std::move(params), [&](VerificationReport& r) {
        if (i_to + 2 > kFiberUnresolvedMax)
            throw InvalidParameter("negative-tower needs i + 2 <= 8");
        const int m = profile_truncation_for(i_from, truncation);
        const auto f = f_profile ? *f_profile : homotopy_profile(SpectrumId::f(), m);
        const auto x = homotopy_profile(SpectrumId::x(), m);
        auto per_i = nlohmann::ordered_json::array();
        for (int i = i_from; i <= i_to; ++i) {
            const auto xi = poincare_series(rank_rule_homology({SpectrumId::x(), i}, x, truncation));
            const auto fi = poincare_series(rank_rule_homology({SpectrumId::f(), i}, f, truncation));
            const auto f2 = poincare_series(rank_rule_homology({SpectrumId::f(), i + 2}, f, truncation));
            const auto diff = first_difference(xi, fi * f2);
            nlohmann::ordered_json row{{"i", i}, {"pass", !diff}};
            if (diff) {
                row["first_failure_degree"] = *diff;
                r.fail(*diff, "X_" + std::to_string(i) + " != F_" + std::to_string(i) + " x F_" +
                                  std::to_string(i + 2));
            }
            per_i.push_back(std::move(row));
        }
        r.details["per_index"] = std::move(per_i);
    });
}

/// Everything asserted about the BoP tower: completion, non-negativity,
/// parity, the reconstruction identity and the base cross-checks.
inline VerificationReport verify_bop_tower(int i_max, int truncation)
{
    return timed_check(
        "bop-tower", {{"i_max", i_max}, {"max_degree", truncation}}, [&](VerificationReport& r) {
            std::vector<TowerResult> tower;
            try {
                tower = bop_tower(i_max, truncation);
            } catch (const NegativeDimension& e) {
                r.fail(e.degree(), e.what());
                return;
            }
            auto per_i = nlohmann::ordered_json::array();
            for (const auto& t : tower) {
                const int i = t.space.index;
                const auto parity = parity_check(*t.table);
                const bool parity_ok = i % 2 == 0 ? parity.all_even : parity.all_odd;
                if (!parity_ok) {
                    int bad = 0;
                    for (const auto& [d, c] : t.table->counts()) {
                        if (d % 2 != i % 2) {
                            bad = d;
                            break;
                        }
                    }
                    r.fail(bad, "BoP_" + std::to_string(i) + " has a generator of the wrong parity");
                }
                if (auto neg = check_nonnegative(t.series))
                    r.fail(*neg, "BoP_" + std::to_string(i) + " series negative");
                if (first_difference(t.series, poincare_series(*t.table)))
                    r.fail(0, "BoP_" + std::to_string(i) + " table does not reproduce its series");
                per_i.push_back({{"i", i},
                                 {"provenance", std::string(to_string(t.provenance))},
                                 {"generators", integer_to_json(t.table->total_generators())}});
            }
            // series(BPbar_i) = series(BoP_i) * series(BoP_{i+2})
            for (std::size_t a = 0; a + 2 < tower.size(); ++a) {
                const int i = tower[a].space.index;
                const auto middle = rank_rule_result({SpectrumId::bpbar(), i}, truncation).series;
                if (auto d = first_difference(middle, tower[a].series * tower[a + 2].series))
                    r.fail(*d, "reconstruction fails at i = " + std::to_string(i));
            }
            // Recurrence vs product at i = 3, 4.
            for (int i : {3, 4}) {
                if (i > i_max)
                    continue;
                const auto product = poincare_series(tensor(rank_rule_homology({SpectrumId::f(), i}, truncation),
                                                            bo_space_homology(i, truncation)));
                if (auto d = first_difference(tower[static_cast<std::size_t>(i - 2)].series, product))
                    r.fail(*d, "BoP_" + std::to_string(i) + " disagrees with F x bo");
            }
            // In degrees <= 2 the only group of BoP_2 is H_2 = Z/2.
            const auto& base = tower.front().series;
            if (truncation >= 2 && (base[1] != 0 || base[2] != 1))
                r.fail(base[1] != 0 ? 1 : 2, "H_2(BoP_2) is not one-dimensional");
            r.details["per_index"] = std::move(per_i);
        });
}

/// The bar spectral sequence reproduces each catalogued bo/KO table from the
/// previous one: exactly for bo_2 -> bo_3, bo_3 -> bo_4 and bo_4 -> bo_5,
/// and as series elsewhere.
inline VerificationReport verify_bo_tables(int truncation)
{
    return timed_check("bo-tables", {{"max_degree", truncation}}, [&](VerificationReport& r) {
        auto steps = nlohmann::ordered_json::array();
        auto step = [&](int from, BoFlavor flavor, bool exact) {
            const auto source = bo_space_homology(from, truncation, flavor);
            const auto target = bo_space_homology(from + 1, truncation, flavor);
            const TowerResult start = TowerResult::from_table({SpectrumId::bo(), from}, source, Provenance::catalog);
            const auto got = bss_iterate(start, 1, {target.component_rank()}, true).front();
            const auto diff = first_difference(got.series, poincare_series(target));
            const bool tables_equal = *got.table == target;
            const std::string label = std::string(flavor == BoFlavor::periodic ? "KO_" : "bo_") +
                                      std::to_string(from) + " -> " + std::to_string(from + 1);
            if (diff)
                r.fail(*diff, label + " series differ");
            else if (exact && !tables_equal)
                r.fail(0, label + " tables differ");
            steps.push_back({{"step", label}, {"exact", exact}, {"pass", !diff && (!exact || tables_equal)}});
        };
        for (int from = 0; from <= 7; ++from)
            step(from, BoFlavor::periodic, from == 2);
        step(2, BoFlavor::connective, true);
        step(3, BoFlavor::connective, true);
        step(4, BoFlavor::connective, true);
        step(5, BoFlavor::connective, false);
        r.details["steps"] = std::move(steps);
    });
}

/// H(bo_2) -> H(bu_2) -> H(bo_4) is short exact at series level.
inline VerificationReport verify_bu2_product(int truncation)
{
    return timed_check("bu2-product", {{"max_degree", truncation}}, [&](VerificationReport& r) {
        const auto bu2 = poincare_series(bu_space_homology(2, truncation));
        const auto bo2 = poincare_series(bo_space_homology(2, truncation));
        const auto bo4 = poincare_series(bo_space_homology(4, truncation));
        if (auto d = first_difference(bu2, bo2 * bo4))
            r.fail(*d, "bu_2 != bo_2 x bo_4");
        try {
            if (auto d = first_difference(ses_quotient(bu2, bo2), bo4))
                r.fail(*d, "quotient differs from bo_4");
        } catch (const NegativeDimension& e) {
            r.fail(e.degree(), e.what());
        }
        if (truncation >= 8)
            r.details["coefficient_x8"] = bu2[8].str();
    });
}

/// Rank rule and iterated bar spectral sequence agree on every index.
inline VerificationReport verify_oracle_equivalence(int i_from, int i_to, int truncation)
{
    return timed_check(
        "oracle-equivalence", {{"from", i_from}, {"to", i_to}, {"max_degree", truncation}},
        [&](VerificationReport& r) {
            if (i_to <= i_from)
                throw InvalidParameter("oracle-equivalence needs from < to");
            for (const auto& s : {SpectrumId::bp(), SpectrumId::bu()}) {
                const auto profile = homotopy_profile(s, profile_truncation_for(i_from, truncation));
                std::vector<int> ranks;
                for (int i = i_from + 1; i <= i_to; ++i)
                    ranks.push_back(profile.rank(-i).convert_to<int>());
                const auto start = rank_rule_result({s, i_from}, truncation);
                const auto chain = bss_iterate(start, i_to - i_from, ranks, true);
                for (const auto& step : chain) {
                    const auto expected = rank_rule_homology(step.space, truncation);
                    if (*step.table != expected) {
                        int at = 0;
                        if (auto d = first_difference(step.series, poincare_series(expected)))
                            at = *d;
                        r.fail(at, to_string(step.space) + ": bss iteration differs from the rank rule");
                    }
                }
            }
        });
}

// ---------------------------------------------------------------------------

inline nlohmann::json to_json_value(const TowerResult& t)
{
    nlohmann::json j{{"space", t.space}, {"provenance", std::string(to_string(t.provenance))}};
    if (t.table)
        j["table"] = *t.table;
    else
        j["table"] = nullptr;
    j["series"] = t.series;
    return j;
}

/// Rows "index,degree,count" for each table.
inline std::string tower_csv(const std::vector<TowerResult>& results)
{
    std::string out = "index,degree,count\n";
    for (const auto& t : results) {
        if (!t.table)
            continue;
        for (const auto& [d, c] : t.table->counts())
            out += std::to_string(t.space.index) + "," + std::to_string(d) + "," + c.str() + "\n";
    }
    return out;
}

}  // namespace bopcalc
