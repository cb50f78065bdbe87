#pragma once

#include <stdexcept>
#include <string>

namespace unruh_qfi {

/// Input violates a documented precondition (domain, shape, Hermiticity).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a trustworthy result.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotHermitianError : public DomainError {
public:
    NotHermitianError(const std::string& what, double max_asymmetry)
        : DomainError(what), max_asymmetry_(max_asymmetry) {}

    double max_asymmetry() const noexcept { return max_asymmetry_; }

private:
    double max_asymmetry_;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double residual)
        : NumericalError(what), residual_(residual) {}

    /// Off-diagonal Frobenius norm left when the sweep cap was hit.
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Degenerate eigenvalue pair whose derivative mixes the pair: the
/// eigenbasis derivative is not defined there.
class IllDefinedDerivativeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace unruh_qfi
