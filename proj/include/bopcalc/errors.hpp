#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace bopcalc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Degree out of range, or two series with different truncations combined.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// Constant term is not a unit (+1 or -1).
class NotInvertible : public Error {
public:
    using Error::Error;
};

/// A product factor of degree 0 was supplied.
class ZeroDegreeFactor : public Error {
public:
    using Error::Error;
};

/// A dimension series went negative. Carries the first offending degree.
class NegativeDimension : public Error {
public:
    NegativeDimension(int degree, const std::string& what)
        : Error(what + " (negative coefficient at degree " + std::to_string(degree) + ")")
        , degree_(degree)
    {
    }

    int degree() const noexcept { return degree_; }

private:
    int degree_;
};

/// A divided-power table reached tor_suspend without an extension assertion.
class UnresolvedExtension : public Error {
public:
    using Error::Error;
};

class InvalidKind : public Error {
public:
    using Error::Error;
};

/// The rank rule needs torsion-free even homotopy; bo and BoP do not qualify.
class RankRuleInapplicable : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// A conjectured summand would need a negative suspension.
class ConjectureShapeError : public Error {
public:
    using Error::Error;
};

/// The square formula only applies to j with at least two binary digits set.
class NotApplicable : public Error {
public:
    using Error::Error;
};

}  // namespace bopcalc
