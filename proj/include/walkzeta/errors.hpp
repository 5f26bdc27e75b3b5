#pragma once

#include <stdexcept>
#include <string>

namespace walkzeta {

// A dimension, side length, index, or window size is out of range.
class SizeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A construction that needs a real spectrum was handed a transition matrix
// that is not symmetric.
class SymmetryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The series variable u lies on or outside the convergence disk |u| * rho < 1,
// where rho bounds the modulus of the evolution eigenvalues.
class RadiusError : public std::domain_error {
public:
    RadiusError(double abs_u, double rho)
        : std::domain_error("u outside convergence disk: |u| = " + std::to_string(abs_u) +
                            ", rho = " + std::to_string(rho) + ", need |u| * rho < 1"),
          abs_u_(abs_u),
          rho_(rho) {}

    double abs_u() const noexcept { return abs_u_; }
    double rho() const noexcept { return rho_; }

private:
    double abs_u_;
    double rho_;
};

// An argument is outside the documented accuracy envelope (caps on |z|, t, x,
// or the Bessel order).
class EnvelopeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A truncation cap was reached before the accuracy target (kernel window cap,
// series term cap).
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A quadrature grid is too coarse (or below the minimum) for the requested
// quantity.
class GridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A matrix file is malformed.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace walkzeta
