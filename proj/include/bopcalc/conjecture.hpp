#pragma once

// Series-level consistency machinery for the conjectured spectra BoP<n>:
// quotients of the Steenrod algebra, the epsilon rule, the conjectured
// cohomology and its n -> infinity limit, first appearances of summands,
// and the degree arithmetic of the conjectured squares in H_*(bo_6).

#include <bit>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bopcalc/errors.hpp"
#include "bopcalc/report.hpp"
#include "bopcalc/series.hpp"
#include "bopcalc/splitting.hpp"

namespace bopcalc {

/// A level k of A(k) / A(2,k); nullopt stands for k = infinity.
using Level = std::optional<int>;

/// prod_{i >= 1} 1/(1 - x^{2^i - 1}): the dual Steenrod algebra is
/// polynomial on the Milnor generators xi_i of degree 2^i - 1.
inline TruncatedSeries steenrod_series(int truncation)
{
    return product_over(std::views::iota(1) | std::views::transform([](int i) {
                            return Factor{detail::pow2(i) - 1, 1, FactorForm::inverse_one_minus};
                        }),
                        truncation);
}

namespace detail {

/// s / (1 + x^d) = s * (1 - x^d) / (1 - x^{2d}).
inline TruncatedSeries divide_one_plus(TruncatedSeries s, int d)
{
    s = apply_factor(std::move(s), {d, 1, FactorForm::one_minus});
    return apply_factor(std::move(s), {2 * d, 1, FactorForm::inverse_one_minus});
}

}  // namespace detail

/// A(n) = A / A(Q_0, ..., Q_n), |Q_i| = 2^{i+1} - 1; A is free over E(Q_0, ..., Q_n).
inline TruncatedSeries a_n_series(Level n, int truncation)
{
    if (n && *n < 0)
        throw InvalidParameter("A(n) needs n >= 0, got " + std::to_string(*n));
    auto s = steenrod_series(truncation);
    for (int i = 0; !n || i <= *n; ++i) {
        const int d = detail::pow2(i + 1) - 1;
        if (d > truncation)
            break;
        s = detail::divide_one_plus(std::move(s), d);
    }
    return s;
}

/// A(2, k) = A / A(Q_0, Sq^2, Q_1, ..., Q_k), modelled as A(k) / (1 + x^2).
inline TruncatedSeries a2_k_series(Level k, int truncation)
{
    auto s = truncation >= 2 ? detail::divide_one_plus(a_n_series(k, truncation), 2) : a_n_series(k, truncation);
    if (auto bad = check_nonnegative(s))
        throw NegativeDimension(*bad, "A(2," + (k ? std::to_string(*k) : std::string("inf")) + ") series");
    return s;
}

/// Cohomology series of BPbar = prod_a S^{8a} BP: sum_a x^{8a} A(infinity).
inline TruncatedSeries bpbar_cohomology_series(int truncation)
{
    return a_n_series(std::nullopt, truncation) * geometric(8, truncation);
}

/// Cohomology series of BoP: sum_a x^{8a} A(2, infinity).
inline TruncatedSeries bop_cohomology_series(int truncation)
{
    return a2_k_series(std::nullopt, truncation) * geometric(8, truncation);
}

// ---------------------------------------------------------------------------

/// n = 2^K + a + 1 with 0 <= a < 2^K, for n > 2.
class EpsilonContext {
public:
    static EpsilonContext make(int n)
    {
        if (n <= 2)
            throw InvalidParameter("the conjecture is stated for n > 2, got " + std::to_string(n));
        const int big_k = std::bit_width(static_cast<unsigned>(n - 1)) - 1;
        return EpsilonContext(n, big_k, n - 1 - (1 << big_k));
    }

    int n() const noexcept { return n_; }
    int big_k() const noexcept { return big_k_; }
    int a() const noexcept { return a_; }

private:
    EpsilonContext(int n, int big_k, int a)
        : n_(n)
        , big_k_(big_k)
        , a_(a)
    {
    }

    int n_;
    int big_k_;
    int a_;
};

/// 1 on 0 < s <= a and n - a <= s < n, 0 on a < s < n - a.
inline int epsilon(const EpsilonContext& ctx, int s)
{
    if (s < 1 || s > ctx.n() - 1)
        throw InvalidParameter("epsilon needs 1 <= s <= n-1, got s=" + std::to_string(s) +
                               " for n=" + std::to_string(ctx.n()));
    if (s <= ctx.a() || s >= ctx.n() - ctx.a())
        return 1;
    return 0;
}

/// One suspended copy x^{suspension} A(2, level) of the conjectured sum.
struct ConjectureSummand {
    int s = 0;
    int k_prime = 0;
    int eps = 0;
    int suspension = 0;
    int level = 0;  // K' + 2 + eps
};

/// All summands with suspension <= N, in (s, K') order.
inline std::vector<ConjectureSummand> conjecture_summands(int n, int truncation)
{
    const auto ctx = EpsilonContext::make(n);
    std::vector<ConjectureSummand> out;
    for (int s = 1; s <= n - 1; ++s) {
        const int eps = epsilon(ctx, s);
        for (int kp = ctx.big_k();; ++kp) {
            const long long susp = (1LL << std::min(kp + 3 + eps, 40)) - 8LL * s;
            if (susp < 0)
                throw ConjectureShapeError("negative suspension " + std::to_string(susp) + " for n=" +
                                           std::to_string(n) + " s=" + std::to_string(s) + " K'=" +
                                           std::to_string(kp));
            if (susp > truncation)
                break;
            out.push_back({s, kp, eps, static_cast<int>(susp), kp + 2 + eps});
        }
    }
    return out;
}

namespace detail {

template <class ModuleSeries>
TruncatedSeries conjectured_sum(int n, int truncation, ModuleSeries&& module)
{
    std::map<int, TruncatedSeries> cache;
    TruncatedSeries sum(truncation);
    for (const auto& t : conjecture_summands(n, truncation)) {
        auto it = cache.find(t.level);
        if (it == cache.end())
            it = cache.emplace(t.level, module(t.level, truncation)).first;
        sum = sum + it->second.shifted(t.suspension);
    }
    return sum;
}

}  // namespace detail

/// Conjectured H^*(BoP<n>): sum over s and K' >= K of x^{2^{K'+3+eps} - 8s} A(2, K'+2+eps).
inline TruncatedSeries conjectured_bopn_cohomology(int n, int truncation)
{
    return detail::conjectured_sum(n, truncation, [](int level, int t) { return a2_k_series(level, t); });
}

/// The same index set with A(K'+2+eps): the cohomology of the conjectured BPbar<n> wedge.
inline TruncatedSeries conjectured_bpbarn_cohomology(int n, int truncation)
{
    return detail::conjectured_sum(n, truncation, [](int level, int t) { return a_n_series(level, t); });
}

/// First n whose conjectured cohomology has a summand on degree 8q:
/// n = 2^J + 1 - u for q = 2^J + u, 0 <= u < 2^J.
inline int first_appearance(int q)
{
    if (q < 1)
        throw InvalidParameter("first_appearance needs q >= 1, got " + std::to_string(q));
    const int j = std::bit_width(static_cast<unsigned>(q)) - 1;
    const int u = q - (1 << j);
    return (1 << j) + 1 - u;
}

/// Scans n = 3..n_max for a summand with suspension 8q.
inline std::optional<int> first_appearance_enumerated(int q, int n_max)
{
    for (int n = 3; n <= n_max; ++n) {
        for (const auto& t : conjecture_summands(n, 8 * q)) {
            if (t.suspension == 8 * q)
                return n;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

/// b_{(m_1)}^{e_1} ... b_{(m_k)}^{e_k}, the conjectured square of x_{2j}.
struct SquareMonomial {
    std::vector<std::pair<int, int>> factors;  // (subscript m, exponent 2^i)
    int source_degree = 0;                     // 2j

    friend bool operator==(const SquareMonomial&, const SquareMonomial&) = default;
};

/// j = 2^{s_1} + ... + 2^{s_k}, k > 1  ->  b_{(s_1)}^2 b_{(s_2 - 1)}^4 ... b_{(s_k - k + 1)}^{2^k}.
inline SquareMonomial square_monomial(int j)
{
    if (j < 1 || std::has_single_bit(static_cast<unsigned>(j)))
        throw NotApplicable("x_{2j} exists in H_*(bo_6) only when j is not a power of 2, got j=" +
                            std::to_string(j));
    SquareMonomial m;
    m.source_degree = 2 * j;
    int i = 1;
    for (int bit = 0; (j >> bit) != 0; ++bit) {
        if ((j >> bit) & 1) {
            m.factors.emplace_back(bit - i + 1, 1 << i);
            ++i;
        }
    }
    return m;
}

/// Total degree under the convention |b_{(m)}| = 2^{m+1}.
inline long long square_degree(const SquareMonomial& m)
{
    long long total = 0;
    for (const auto& [sub, exp] : m.factors)
        total += static_cast<long long>(exp) * (1LL << (sub + 1));
    return total;
}

inline bool square_degree_check(const SquareMonomial& m)
{
    return square_degree(m) == 2LL * m.source_degree;
}

// ---------------------------------------------------------------------------
// Verifications.

/// The three epsilon ranges partition {1, ..., n-1} for 2 < n <= n_max.
inline VerificationReport verify_epsilon_partition(int n_max)
{
    return timed_check("epsilon", {{"n_max", n_max}}, [&](VerificationReport& r) {
        for (int n = 3; n <= n_max; ++n) {
            const auto ctx = EpsilonContext::make(n);
            const int a = ctx.a();
            for (int s = 1; s <= n - 1; ++s) {
                const bool lower = 0 < s && s <= a;
                const bool upper = n - a <= s && s < n;
                const bool middle = a < s && s < n - a;
                const int hits = int(lower) + int(upper) + int(middle);
                const int expected_eps = (lower || upper) ? 1 : 0;
                if (hits != 1 || epsilon(ctx, s) != expected_eps) {
                    r.fail(n, "epsilon ranges do not partition at n=" + std::to_string(n) + " s=" +
                                  std::to_string(s));
                    break;
                }
            }
        }
    });
}

/// Degree-wise stabilisation of the conjectured H^*(BoP<n>) and equality
/// with H^*(BoP) for every n_from <= n <= n_to.
inline VerificationReport verify_conjecture_limit(int n_from, int n_to, int truncation)
{
    return timed_check(
        "conjecture-limit", {{"n_from", n_from}, {"n_to", n_to}, {"max_degree", truncation}},
        [&](VerificationReport& r) {
            if (n_from < 3 || n_to < n_from)
                throw InvalidParameter("conjecture-limit needs 3 <= n_from <= n_to");
            const auto target = bop_cohomology_series(truncation);
            std::vector<TruncatedSeries> by_n;
            for (int n = 3; n <= n_to; ++n)
                by_n.push_back(conjectured_bopn_cohomology(n, truncation));
            // n0(d): least n from which the degree-d coefficient stays fixed.
            int worst_n0 = 3;
            for (int d = 0; d <= truncation; ++d) {
                int n0 = n_to;
                while (n0 > 3 && by_n[static_cast<std::size_t>(n0 - 4)][d] == by_n.back()[d])
                    --n0;
                worst_n0 = std::max(worst_n0, n0);
                if (by_n.back()[d] != target[d])
                    r.fail(d, "stable coefficient differs from H^*(BoP)");
            }
            for (int n = n_from; n <= n_to; ++n) {
                if (auto d = first_difference(by_n[static_cast<std::size_t>(n - 3)], target))
                    r.fail(*d, "n=" + std::to_string(n) + " differs from H^*(BoP)");
            }
            r.details["stable_from_n"] = worst_n0;
        });
}

/// The closed formula for first appearances against enumeration over n >= 3.
/// Formula values 1 and 2 lie below the conjecture's range, where the
/// enumeration necessarily reports n = 3.
inline VerificationReport verify_first_appearance(int q_max)
{
    return timed_check("first-appearance", {{"q_max", q_max}}, [&](VerificationReport& r) {
        int below_range = 0;
        for (int q = 1; q <= q_max; ++q) {
            const int formula = first_appearance(q);
            if (formula < 3)
                ++below_range;
            const auto seen = first_appearance_enumerated(q, q + 2);
            if (!seen || *seen != std::max(formula, 3))
                r.fail(8 * q, "q=" + std::to_string(q) + ": formula " + std::to_string(formula) +
                                  ", enumeration " + (seen ? std::to_string(*seen) : std::string("none")));
        }
        r.details["formula_below_n3"] = below_range;
    });
}

/// square_degree_check for every j < bound that is not a power of 2.
inline VerificationReport verify_squares(int bound)
{
    return timed_check("squares", {{"bound", bound}}, [&](VerificationReport& r) {
        int checked = 0;
        for (int j = 3; j < bound; ++j) {
            if (std::has_single_bit(static_cast<unsigned>(j)))
                continue;
            const auto m = square_monomial(j);
            ++checked;
            bool subscripts_ok = true;
            for (const auto& [sub, exp] : m.factors)
                subscripts_ok = subscripts_ok && sub >= 0;
            if (!subscripts_ok || !square_degree_check(m))
                r.fail(2 * j, "square of x_" + std::to_string(2 * j) + " lands in the wrong degree");
        }
        r.details["checked"] = checked;
    });
}

/// Every conjectured summand has a non-negative suspension, every A(2,k)
/// involved is non-negative, and the BPbar<n> pairing holds term by term.
inline VerificationReport verify_shape(int n_max, int truncation)
{
    return timed_check("shape", {{"n_max", n_max}, {"max_degree", truncation}}, [&](VerificationReport& r) {
        for (int n = 3; n <= n_max; ++n) {
            try {
                const auto bop = conjectured_bopn_cohomology(n, truncation);
                const auto bpbar = conjectured_bpbarn_cohomology(n, truncation);
                const auto lifted = apply_factor(bop, {2, 1, FactorForm::one_plus});
                if (auto d = first_difference(lifted, bpbar))
                    r.fail(*d, "BoP<" + std::to_string(n) + "> x (1+x^2) != BPbar<" + std::to_string(n) + ">");
            } catch (const ConjectureShapeError& e) {
                r.fail(0, e.what());
            } catch (const NegativeDimension& e) {
                r.fail(e.degree(), e.what());
            }
        }
    });
}

}  // namespace bopcalc
