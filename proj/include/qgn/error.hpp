#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace qgn {

using Index = Eigen::Index;

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (q outside (0, 1], index out of range, mismatched shapes, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

/// A function evaluation or intermediate result was not finite.
class NumericalFailure : public Error
{
public:
    using Error::Error;
};

/// The least-squares step matrix is rank deficient.
class SingularSystem : public Error
{
public:
    SingularSystem(Index rank, Index cols)
        : Error("rank-deficient Jacobian: estimated rank " + std::to_string(rank) + " of " +
                std::to_string(cols) + " columns"),
          rank_(rank), cols_(cols)
    { }

    Index rank() const noexcept { return rank_; }
    Index cols() const noexcept { return cols_; }

private:
    Index rank_;
    Index cols_;
};

/// A point was rejected by a problem's domain guard.
class InvalidPoint : public Error
{
public:
    using Error::Error;
};

} // namespace qgn
