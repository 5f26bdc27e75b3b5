#pragma once

// Integer-order Bessel functions of complex argument, by direct power-series
// summation:
//
//   I_a(z) = sum_{k>=0}        (z/2)^(2k+a) / (k! (a+k)!)
//   J_a(z) = sum_{k>=0} (-1)^k (z/2)^(2k+a) / (k! (a+k)!)
//
// Negative orders reduce through I_{-n} = I_n and J_{-n} = (-1)^n J_n.
//
// The series is summed with a term recurrence; the leading term switches to
// log-space assembly once the factorial leaves the exactly-representable
// range (above 20!). Summation stops when |term| <= 1e-17 |sum| and at least
// |z| terms have been taken, with a hard cap of 500 terms.
//
// Accuracy is that of the raw series: near machine precision where the terms
// are single-signed (I on the positive real axis), degrading through
// cancellation in oscillatory directions — roughly one digit lost per 3 units
// of |z|, so ~1e-12 relative error is still delivered at |z| = 30. Arguments
// are capped at |z| <= 100 and orders at |a| <= 1024; beyond either cap the
// call throws EnvelopeError rather than returning digits it cannot stand
// behind.

#include <complex>

namespace walkzeta {

inline constexpr int kBesselOrderCap = 1024;
inline constexpr double kBesselArgCap = 100.0;

std::complex<double> bessel_i(int order, std::complex<double> z);
std::complex<double> bessel_j(int order, std::complex<double> z);

}  // namespace walkzeta
