#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qhqm {

/// Base class for every error raised by the workbench.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched or unsupported matrix dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Parameter outside its mathematical domain (angles, weights, grids).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A stated precondition does not hold (non-Hermitian metric, non-involutive parity, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Malformed input file or JSON payload.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Matrix required to be invertible is singular to working precision.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// Observable proportional to the identity imposes no constraint.
class TrivialityError : public Error {
public:
    using Error::Error;
};

/// No positive-definite metric exists for the requested construction.
class NoPositiveMetricError : public Error {
public:
    using Error::Error;
};

/// Iterative solver failed to reach the required residual.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual_achieved)
        : Error(what), residual_(residual_achieved) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Spectrum is defective (or numerically indistinguishable from defective);
/// carries the offending eigenvalue index and its nearest partner.
class ExceptionalPointError : public Error {
public:
    ExceptionalPointError(const std::string& what, std::size_t index_i, std::size_t index_j)
        : Error(what), index_i_(index_i), index_j_(index_j) {}

    std::size_t index_i() const noexcept { return index_i_; }
    std::size_t index_j() const noexcept { return index_j_; }

private:
    std::size_t index_i_;
    std::size_t index_j_;
};

}  // namespace qhqm
