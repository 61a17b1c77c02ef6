#pragma once

// Exact truncated power series in one variable x over arbitrary-precision
// integers. Every Poincare series in the library is one of these.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ranges>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "bopcalc/errors.hpp"

namespace bopcalc {

using Integer = boost::multiprecision::cpp_int;

class TruncatedSeries {
public:
    /// The zero series 0 + 0x + ... + 0x^N.
    explicit TruncatedSeries(int truncation)
        : coeffs_(checked_size(truncation))
    {
    }

    TruncatedSeries(int truncation, std::vector<Integer> coefficients)
        : coeffs_(std::move(coefficients))
    {
        if (coeffs_.size() != checked_size(truncation))
            throw TruncationError("expected " + std::to_string(truncation + 1) + " coefficients, got " +
                                  std::to_string(coeffs_.size()));
    }

    static TruncatedSeries one(int truncation) { return monomial(0, 1, truncation); }

    static TruncatedSeries monomial(int degree, const Integer& c, int truncation)
    {
        TruncatedSeries s(truncation);
        if (degree < 0 || degree > truncation)
            throw TruncationError("monomial degree " + std::to_string(degree) + " outside 0.." +
                                  std::to_string(truncation));
        s.coeffs_[static_cast<std::size_t>(degree)] = c;
        return s;
    }

    int truncation() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    /// Unchecked access; 0 <= d <= truncation().
    const Integer& operator[](int d) const noexcept { return coeffs_[static_cast<std::size_t>(d)]; }

    const Integer& coefficient(int d) const
    {
        if (d < 0 || d > truncation())
            throw TruncationError("degree " + std::to_string(d) + " outside 0.." + std::to_string(truncation()));
        return (*this)[d];
    }

    std::span<const Integer> coefficients() const noexcept { return coeffs_; }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0; });
    }

    /// Drops every coefficient above degree m (m <= truncation()).
    TruncatedSeries truncated(int m) const
    {
        if (m < 0 || m > truncation())
            throw TruncationError("cannot truncate a degree-" + std::to_string(truncation()) + " series to " +
                                  std::to_string(m));
        return TruncatedSeries(m, std::vector<Integer>(coeffs_.begin(), coeffs_.begin() + m + 1));
    }

    /// Multiplication by x^k, k >= 0.
    TruncatedSeries shifted(int k) const
    {
        if (k < 0)
            throw InvalidParameter("negative shift " + std::to_string(k));
        TruncatedSeries out(truncation());
        for (int d = truncation(); d >= k; --d)
            out.coeffs_[static_cast<std::size_t>(d)] = coeffs_[static_cast<std::size_t>(d - k)];
        return out;
    }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        require_same_truncation(a, b);
        TruncatedSeries out = a;
        for (std::size_t d = 0; d < out.coeffs_.size(); ++d)
            out.coeffs_[d] += b.coeffs_[d];
        return out;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        require_same_truncation(a, b);
        TruncatedSeries out = a;
        for (std::size_t d = 0; d < out.coeffs_.size(); ++d)
            out.coeffs_[d] -= b.coeffs_[d];
        return out;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a)
    {
        TruncatedSeries out = a;
        for (auto& c : out.coeffs_)
            c = -c;
        return out;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        require_same_truncation(a, b);
        const int n = a.truncation();
        std::vector<Integer> out(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            if (a[i] == 0)
                continue;
            for (int j = 0; i + j <= n; ++j) {
                if (b[j] != 0)
                    out[static_cast<std::size_t>(i + j)] += a[i] * b[j];
            }
        }
        return TruncatedSeries(n, std::move(out));
    }

    friend TruncatedSeries operator*(const Integer& k, const TruncatedSeries& a)
    {
        TruncatedSeries out = a;
        for (auto& c : out.coeffs_)
            c *= k;
        return out;
    }

private:
    template <class Fn>
    friend TruncatedSeries transform_coefficients(TruncatedSeries s, Fn&& fn);

    static std::size_t checked_size(int truncation)
    {
        if (truncation < 0)
            throw TruncationError("negative truncation degree " + std::to_string(truncation));
        return static_cast<std::size_t>(truncation) + 1;
    }

    static void require_same_truncation(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        if (a.truncation() != b.truncation())
            throw TruncationError("truncation mismatch: " + std::to_string(a.truncation()) + " vs " +
                                  std::to_string(b.truncation()));
    }

    std::vector<Integer> coeffs_;
};

/// Gives the in-place kernels below write access without exposing a mutator.
template <class Fn>
TruncatedSeries transform_coefficients(TruncatedSeries s, Fn&& fn)
{
    fn(s.coeffs_);
    return s;
}

inline TruncatedSeries make_polynomial(std::span<const std::pair<int, Integer>> terms, int truncation)
{
    if (truncation < 0)
        throw TruncationError("negative truncation degree " + std::to_string(truncation));
    std::vector<Integer> c(static_cast<std::size_t>(truncation) + 1);
    for (const auto& [degree, value] : terms) {
        if (degree < 0 || degree > truncation)
            throw TruncationError("term degree " + std::to_string(degree) + " outside 0.." +
                                  std::to_string(truncation));
        c[static_cast<std::size_t>(degree)] += value;
    }
    return TruncatedSeries(truncation, std::move(c));
}

inline TruncatedSeries make_polynomial(std::initializer_list<std::pair<int, Integer>> terms, int truncation)
{
    return make_polynomial(std::span<const std::pair<int, Integer>>(terms.begin(), terms.size()), truncation);
}

inline const Integer& coefficient(const TruncatedSeries& a, int d) { return a.coefficient(d); }

/// Multiplicative inverse; the constant term must be +1 or -1.
inline TruncatedSeries invert(const TruncatedSeries& a)
{
    const Integer& a0 = a[0];
    if (a0 != 1 && a0 != -1)
        throw NotInvertible("constant term " + a0.str() + " is not a unit");
    const int n = a.truncation();
    std::vector<Integer> b(static_cast<std::size_t>(n) + 1);
    b[0] = a0;  // 1/a0 == a0 for a unit
    for (int d = 1; d <= n; ++d) {
        Integer acc = 0;
        for (int k = 1; k <= d; ++k) {
            if (a[k] != 0)
                acc += a[k] * b[static_cast<std::size_t>(d - k)];
        }
        b[static_cast<std::size_t>(d)] = -acc * a0;
    }
    return TruncatedSeries(n, std::move(b));
}

inline TruncatedSeries divide(const TruncatedSeries& a, const TruncatedSeries& b) { return a * invert(b); }

/// Least degree with a negative coefficient, or nullopt when every coefficient is >= 0.
inline std::optional<int> check_nonnegative(const TruncatedSeries& a)
{
    for (int d = 0; d <= a.truncation(); ++d) {
        if (a[d] < 0)
            return d;
    }
    return std::nullopt;
}

/// Least degree where the two series differ, or nullopt if equal.
inline std::optional<int> first_difference(const TruncatedSeries& a, const TruncatedSeries& b)
{
    if (a.truncation() != b.truncation())
        throw TruncationError("truncation mismatch: " + std::to_string(a.truncation()) + " vs " +
                              std::to_string(b.truncation()));
    for (int d = 0; d <= a.truncation(); ++d) {
        if (a[d] != b[d])
            return d;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Products of cyclotomic-style factors.

enum class FactorForm {
    inverse_one_minus,  // 1/(1 - x^d)^c
    one_plus,           // (1 + x^d)^c
    one_minus,          // (1 - x^d)^c
};

struct Factor {
    int degree = 1;
    Integer multiplicity = 1;
    FactorForm form = FactorForm::inverse_one_minus;
};

namespace detail {

// Coefficients of (1 -+ x^d)^{+-c} as a series in y = x^d, up to y^m.
inline std::vector<Integer> factor_weights(const Integer& c, FactorForm form, int m)
{
    std::vector<Integer> w(static_cast<std::size_t>(m) + 1);
    w[0] = 1;
    for (int k = 1; k <= m; ++k) {
        const Integer& prev = w[static_cast<std::size_t>(k - 1)];
        Integer next;
        switch (form) {
        case FactorForm::inverse_one_minus:  // binom(c+k-1, k)
            next = prev * (c + k - 1) / k;
            break;
        case FactorForm::one_plus:  // binom(c, k)
            next = prev * (c - k + 1) / k;
            break;
        case FactorForm::one_minus:  // (-1)^k binom(c, k)
            next = -prev * (c - k + 1) / k;
            break;
        }
        w[static_cast<std::size_t>(k)] = std::move(next);
    }
    return w;
}

inline void multiply_factor_in_place(std::vector<Integer>& v, const Factor& f)
{
    const int n = static_cast<int>(v.size()) - 1;
    const int d = f.degree;
    if (d == 0)
        throw ZeroDegreeFactor("degree-0 factor in a product");
    if (d < 0)
        throw InvalidParameter("negative factor degree " + std::to_string(d));
    if (f.multiplicity < 0)
        throw InvalidParameter("negative factor multiplicity " + f.multiplicity.str());
    if (d > n || f.multiplicity == 0)
        return;

    const int m = n / d;
    auto at = [&v](int i) -> Integer& { return v[static_cast<std::size_t>(i)]; };
    if (f.multiplicity <= m) {
        // Repeated single-factor passes, each O(N).
        const auto reps = f.multiplicity.convert_to<long long>();
        for (long long r = 0; r < reps; ++r) {
            switch (f.form) {
            case FactorForm::inverse_one_minus:
                for (int i = d; i <= n; ++i)
                    at(i) += at(i - d);
                break;
            case FactorForm::one_plus:
                for (int i = n; i >= d; --i)
                    at(i) += at(i - d);
                break;
            case FactorForm::one_minus:
                for (int i = n; i >= d; --i)
                    at(i) -= at(i - d);
                break;
            }
        }
        return;
    }
    // Large multiplicity: one sparse convolution with binomial weights.
    const auto w = factor_weights(f.multiplicity, f.form, m);
    for (int i = n; i >= 0; --i) {
        Integer acc = v[static_cast<std::size_t>(i)];
        for (int k = 1; k * d <= i; ++k) {
            const auto& wk = w[static_cast<std::size_t>(k)];
            if (wk != 0)
                acc += wk * at(i - k * d);
        }
        at(i) = std::move(acc);
    }
}

}  // namespace detail

/// series * factor, exactly.
inline TruncatedSeries apply_factor(TruncatedSeries s, const Factor& f)
{
    return transform_coefficients(std::move(s), [&f](std::vector<Integer>& v) {
        detail::multiply_factor_in_place(v, f);
    });
}

/// Truncated product of a (possibly infinite) family of factors with
/// non-decreasing degrees. Consumption stops at the first degree > N.
template <std::ranges::input_range R>
    requires std::convertible_to<std::ranges::range_reference_t<R>, Factor>
TruncatedSeries product_over(R&& factors, int truncation)
{
    return transform_coefficients(TruncatedSeries::one(truncation), [&](std::vector<Integer>& v) {
        int previous = 0;
        for (auto&& item : factors) {
            const Factor f = item;
            if (f.degree == 0)
                throw ZeroDegreeFactor("degree-0 factor in a product");
            if (f.degree < previous)
                throw InvalidParameter("factor degrees must be non-decreasing (" + std::to_string(f.degree) +
                                       " after " + std::to_string(previous) + ")");
            previous = f.degree;
            if (f.degree > truncation)
                break;
            detail::multiply_factor_in_place(v, f);
        }
    });
}

inline TruncatedSeries product_over(std::initializer_list<Factor> factors, int truncation)
{
    return product_over(std::span<const Factor>(factors.begin(), factors.size()), truncation);
}

/// The geometric series 1/(1 - x^d).
inline TruncatedSeries geometric(int d, int truncation)
{
    return apply_factor(TruncatedSeries::one(truncation), {d, 1, FactorForm::inverse_one_minus});
}

// ---------------------------------------------------------------------------
// Serialization: {"truncation": N, "coefficients": ["c0", ..., "cN"]}

inline void to_json(nlohmann::json& j, const TruncatedSeries& s)
{
    auto coeffs = nlohmann::json::array();
    for (const auto& c : s.coefficients())
        coeffs.push_back(c.str());
    j = nlohmann::json{{"truncation", s.truncation()}, {"coefficients", std::move(coeffs)}};
}

inline void from_json(const nlohmann::json& j, TruncatedSeries& s)
{
    const int n = j.at("truncation").get<int>();
    const auto& arr = j.at("coefficients");
    std::vector<Integer> c;
    c.reserve(arr.size());
    for (const auto& e : arr)
        c.emplace_back(e.get<std::string>());
    s = TruncatedSeries(n, std::move(c));
}

inline std::string to_csv(const TruncatedSeries& s)
{
    std::ostringstream out;
    out << "degree,coefficient\n";
    for (int d = 0; d <= s.truncation(); ++d)
        out << d << ',' << s[d].str() << '\n';
    return out.str();
}

}  // namespace bopcalc

namespace nlohmann {
template <>
struct adl_serializer<bopcalc::TruncatedSeries> {
    static bopcalc::TruncatedSeries from_json(const json& j)
    {
        bopcalc::TruncatedSeries s(0);
        bopcalc::from_json(j, s);
        return s;
    }
    static void to_json(json& j, const bopcalc::TruncatedSeries& s) { bopcalc::to_json(j, s); }
};
}  // namespace nlohmann
