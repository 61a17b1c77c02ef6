#pragma once

// Exact checks behind the splitting of the space BoP_6 into bo_6 and
// irreducible BP<k> spaces: the telescoping power-series identity, the
// rational decomposition of BoP_*, and the index bookkeeping.

#include <algorithm>
#include <limits>
#include <map>
#include <vector>

#include "bopcalc/catalog.hpp"
#include "bopcalc/errors.hpp"
#include "bopcalc/report.hpp"
#include "bopcalc/series.hpp"

namespace bopcalc {

namespace detail {

/// 2^e, saturating well above any usable truncation.
constexpr int pow2(int e) noexcept
{
    return e >= 30 ? std::numeric_limits<int>::max() / 4 : (1 << e);
}

/// prod_{j >= first} (1 - x^{2(2^j - 1)}).
inline TruncatedSeries v_one_minus_product(int first, int truncation)
{
    return product_over(detail::v_generator_factors(first) | std::views::transform([](Factor f) {
                            f.form = FactorForm::one_minus;
                            return f;
                        }),
                        truncation);
}

inline TruncatedSeries shifted_or_zero(const TruncatedSeries& s, int k)
{
    return k > s.truncation() ? TruncatedSeries(s.truncation()) : s.shifted(k);
}

inline void require_s(int s)
{
    if (s < 2)
        throw InvalidParameter("splitting series need s >= 2, got " + std::to_string(s));
}

}  // namespace detail

enum class SplittingFault {
    none,
    drop_one_plus_x2,  // omit the (1 + x^2) factor of C_s
};

/// One summand x^{2^{k+1}-2} (1+x^2)(1-x^{2^{k+1}}) prod_{j>k}(1-x^{2(2^j-1)}) of A_s.
inline TruncatedSeries a_term(int k, int truncation)
{
    const int lead = detail::pow2(k + 1) - 2;
    if (lead > truncation)
        return TruncatedSeries(truncation);
    auto body = detail::v_one_minus_product(k + 1, truncation);
    body = apply_factor(std::move(body), {2, 1, FactorForm::one_plus});
    body = apply_factor(std::move(body), {detail::pow2(k + 1), 1, FactorForm::one_minus});
    return body.shifted(lead);
}

/// A_s = sum_{k >= s} a_term(k); terms whose leading degree exceeds N vanish.
inline TruncatedSeries a_series(int s, int truncation)
{
    detail::require_s(s);
    TruncatedSeries sum(truncation);
    for (int k = s; detail::pow2(k + 1) - 2 <= truncation; ++k)
        sum = sum + a_term(k, truncation);
    return sum;
}

/// B_s = (1 - x^{2^{s+1}}) prod_{j >= s} (1 - x^{2(2^j-1)}).
inline TruncatedSeries b_series(int s, int truncation)
{
    detail::require_s(s);
    return apply_factor(detail::v_one_minus_product(s, truncation),
                        {detail::pow2(s + 1), 1, FactorForm::one_minus});
}

/// C_s = x^{2(2^s-1)} (1+x^2)(1 - x^{2^{s+1}}) prod_{j > s} (1 - x^{2(2^j-1)}).
inline TruncatedSeries c_series(int s, int truncation, SplittingFault fault = SplittingFault::none)
{
    detail::require_s(s);
    auto body = detail::v_one_minus_product(s + 1, truncation);
    if (fault != SplittingFault::drop_one_plus_x2)
        body = apply_factor(std::move(body), {2, 1, FactorForm::one_plus});
    body = apply_factor(std::move(body), {detail::pow2(s + 1), 1, FactorForm::one_minus});
    return detail::shifted_or_zero(body, 2 * (detail::pow2(s) - 1));
}

/// B_{s+1} = B_s + C_s for s_from <= s <= s_to.
inline VerificationReport verify_bcb(int s_from, int s_to, int truncation,
                                     SplittingFault fault = SplittingFault::none)
{
    nlohmann::ordered_json params{{"s_from", s_from}, {"s_to", s_to}, {"max_degree", truncation}};
    if (fault == SplittingFault::drop_one_plus_x2)
        params["fault"] = "drop-one-plus-x2";
    return timed_check("bcb", std::move(params), [&](VerificationReport& r) {
        for (int s = s_from; s <= s_to; ++s) {
            const auto lhs = b_series(s + 1, truncation);
            const auto rhs = b_series(s, truncation) + c_series(s, truncation, fault);
            if (auto d = first_difference(lhs, rhs))
                r.fail(*d, "B_" + std::to_string(s + 1) + " != B_" + std::to_string(s) + " + C_" +
                               std::to_string(s));
        }
    });
}

inline VerificationReport verify_bcb(int s, int truncation, SplittingFault fault = SplittingFault::none)
{
    return verify_bcb(s, s, truncation, fault);
}

/// A_s = C_s + A_{s+1} for s_from <= s <= s_to.
inline VerificationReport verify_telescope(int s_from, int s_to, int truncation)
{
    return timed_check("telescope", {{"s_from", s_from}, {"s_to", s_to}, {"max_degree", truncation}},
                       [&](VerificationReport& r) {
                           for (int s = s_from; s <= s_to; ++s) {
                               const auto lhs = a_series(s, truncation);
                               const auto rhs = c_series(s, truncation) + a_series(s + 1, truncation);
                               if (auto d = first_difference(lhs, rhs))
                                   r.fail(*d, "A_" + std::to_string(s) + " != C_" + std::to_string(s) + " + A_" +
                                                  std::to_string(s + 1));
                           }
                       });
}

/// B_2 + A_2 = 1, together with every telescope step that is visible below N.
inline VerificationReport verify_rhs_one(int truncation)
{
    return timed_check("rhs-one", {{"max_degree", truncation}}, [&](VerificationReport& r) {
        const auto total = b_series(2, truncation) + a_series(2, truncation);
        if (auto d = first_difference(total, TruncatedSeries::one(truncation)))
            r.fail(*d, "B_2 + A_2 != 1");
        int s_last = 2;
        while (detail::pow2(s_last + 2) - 2 <= truncation)
            ++s_last;
        r.absorb(verify_telescope(2, s_last, truncation));
        r.details["telescope_s_max"] = s_last;
    });
}

// ---------------------------------------------------------------------------

/// The (k, u) labelling of a factor BP<k>_{2^{k+1}+8u+4} of BoP_6.
class SplittingIndex {
public:
    static SplittingIndex make(int k, int u)
    {
        if (k < 2 || u < 0 || u >= detail::pow2(k - 2))
            throw InvalidParameter("splitting index needs k >= 2 and 0 <= u < 2^(k-2), got k=" +
                                   std::to_string(k) + " u=" + std::to_string(u));
        return SplittingIndex(k, u);
    }

    int k() const noexcept { return k_; }
    int u() const noexcept { return u_; }
    int connectivity() const noexcept { return detail::pow2(k_ + 1) + 8 * u_ + 4; }

private:
    SplittingIndex(int k, int u)
        : k_(k)
        , u_(u)
    {
    }

    int k_;
    int u_;
};

/// 2^{k+1}-2 < c <= 2^{k+2}-2: the range where BP<k>_c is irreducible.
constexpr bool irreducible_window(int k, int c) noexcept
{
    return detail::pow2(k + 1) - 2 < c && c <= detail::pow2(k + 2) - 2;
}

/// Every BP<k>_{2^{k+1}+8u+4}, k <= k_max, sits in its irreducibility window,
/// and the first u past the range does not.
inline VerificationReport verify_irreducibility(int k_max)
{
    return timed_check("irreducibility", {{"k_max", k_max}}, [&](VerificationReport& r) {
        long long checked = 0;
        for (int k = 2; k <= k_max; ++k) {
            for (int u = 0; u < detail::pow2(k - 2); ++u) {
                const auto idx = SplittingIndex::make(k, u);
                ++checked;
                if (!irreducible_window(k, idx.connectivity()))
                    r.fail(idx.connectivity(), "BP<" + std::to_string(k) + ">_" +
                                                   std::to_string(idx.connectivity()) + " outside its window");
            }
            const int past = detail::pow2(k + 1) + 8 * detail::pow2(k - 2) + 4;
            if (irreducible_window(k, past))
                r.fail(past, "boundary u = 2^(k-2) accepted for k = " + std::to_string(k));
        }
        r.details["indices_checked"] = checked;
    });
}

/// {8u+12 : u >= 0} and {2^{k+1}+8u+4 : k >= 2, u < 2^{k-2}} agree as
/// multisets below the bound.
inline VerificationReport verify_index_bijection(int bound)
{
    return timed_check("index-bijection", {{"bound", bound}}, [&](VerificationReport& r) {
        std::vector<int> plain, labelled;
        for (int c = 12; c <= bound; c += 8)
            plain.push_back(c);
        for (int k = 2; detail::pow2(k + 1) + 4 <= bound; ++k) {
            for (int u = 0; u < detail::pow2(k - 2); ++u) {
                const int c = SplittingIndex::make(k, u).connectivity();
                if (c <= bound)
                    labelled.push_back(c);
            }
        }
        std::sort(labelled.begin(), labelled.end());
        std::vector<int> sym;
        std::set_symmetric_difference(plain.begin(), plain.end(), labelled.begin(), labelled.end(),
                                      std::back_inserter(sym));
        if (!sym.empty())
            r.fail(sym.front(), "connectivity " + std::to_string(sym.front()) + " is not matched");
        r.details["count"] = plain.size();
    });
}

/// rank BP<j>_m = rank BP<j-1>_m + rank BP<j>_{m - |v_j|}, m <= N.
inline VerificationReport verify_bpn_rank_recursion(int j_from, int j_to, int truncation)
{
    return timed_check("bpn-rank-recursion", {{"j_from", j_from}, {"j_to", j_to}, {"max_degree", truncation}},
                       [&](VerificationReport& r) {
                           if (j_from < 2)
                               throw InvalidParameter("bpn-rank-recursion needs j >= 2");
                           for (int j = j_from; j <= j_to; ++j) {
                               const auto whole = homotopy_profile(SpectrumId::bpn(j), truncation).free_ranks;
                               const auto lower = homotopy_profile(SpectrumId::bpn(j - 1), truncation).free_ranks;
                               const auto rhs = lower + detail::shifted_or_zero(whole, detail::pow2(j + 1) - 2);
                               if (auto d = first_difference(whole, rhs))
                                   r.fail(*d, "BP<" + std::to_string(j) + "> rank identity fails");
                           }
                       });
}

/// bo free ranks + sum_{k>=2} sum_{u<2^{k-2}} x^{2^{k+1}+8u-2} BP<k>_*.
inline TruncatedSeries splitting_rhs_free_ranks(int truncation, int extra_shift = 0)
{
    auto sum = homotopy_profile(SpectrumId::bo(), truncation).free_ranks;
    for (int k = 2; detail::pow2(k + 1) - 2 + extra_shift <= truncation; ++k) {
        const auto bpk = homotopy_profile(SpectrumId::bpn(k), truncation).free_ranks;
        for (int u = 0; u < detail::pow2(k - 2); ++u) {
            const int shift = detail::pow2(k + 1) + 8 * u - 2 + extra_shift;
            if (shift > truncation)
                break;
            sum = sum + bpk.shifted(shift);
        }
    }
    return sum;
}

/// BoP_* = bo_* + sum of shifted BP<k>_*, rationally; torsion of BoP and bo agree.
inline VerificationReport verify_rational_splitting(int truncation)
{
    return timed_check("rational-splitting", {{"max_degree", truncation}}, [&](VerificationReport& r) {
        const auto bop = homotopy_profile(SpectrumId::bop(), truncation);
        const auto bo = homotopy_profile(SpectrumId::bo(), truncation);
        if (auto d = first_difference(bop.free_ranks, splitting_rhs_free_ranks(truncation)))
            r.fail(*d, "free ranks differ");
        for (int d = 0; d <= truncation; ++d) {
            if (bop.torsion(d) != bo.torsion(d)) {
                r.fail(d, "torsion differs");
                break;
            }
        }
    });
}

/// pi_*(BoP_6) against pi_*(bo_6) x prod BP<k>_{2^{k+1}+8u+4}, degrees <= N.
inline VerificationReport verify_bop6_splitting(int truncation)
{
    return timed_check("bop6-splitting", {{"max_degree", truncation}}, [&](VerificationReport& r) {
        constexpr int space = 6;
        const auto bop = homotopy_profile(SpectrumId::bop(), truncation);
        const auto bo = homotopy_profile(SpectrumId::bo(), truncation);
        // Free part of pi_d of each side, d = 0..N.
        TruncatedSeries lhs = detail::shifted_or_zero(bop.free_ranks, space);
        TruncatedSeries rhs = detail::shifted_or_zero(bo.free_ranks, space);
        for (int k = 2; detail::pow2(k + 1) + 4 <= truncation; ++k) {
            const auto bpk = homotopy_profile(SpectrumId::bpn(k), truncation).free_ranks;
            for (int u = 0; u < detail::pow2(k - 2); ++u) {
                const int c = SplittingIndex::make(k, u).connectivity();
                if (c > truncation)
                    break;
                rhs = rhs + bpk.shifted(c);
            }
        }
        if (auto d = first_difference(lhs, rhs))
            r.fail(*d, "free homotopy of BoP_6 differs from the product");
        // All torsion comes from bo_6; the BP<k> factors have none.
        for (int d = space; d <= truncation; ++d) {
            if (bop.torsion(d - space) != bo.torsion(d - space)) {
                r.fail(d, "torsion of BoP_6 differs from bo_6");
                break;
            }
        }
        if (truncation >= 12)
            r.details["rank_pi12"] = lhs[12].str();
    });
}

}  // namespace bopcalc
