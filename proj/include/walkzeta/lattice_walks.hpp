#pragma once

// Walk distributions and evolution kernels on the integer lattice Z.
//
// The continuous-time evolution started from a delta at the origin has the
// closed-form kernel
//
//   g_t(x) = e^{-w t} I_x(w t),   w = e^{i xi},
//
// which solves the lattice PDE  d psi / dt = e^{i xi} (1/2) Delta psi  with
// Delta F(x) = F(x-1) + F(x+1) - 2 F(x). General initial states evolve by
// convolution with g_t. At the endpoints the kernel carries the standard
// walk distributions: the CTRW pmf e^{-t} I_x(t) at xi = 0 and the CTQW
// squared amplitude J_x(t)^2 at xi = pi/2.
//
// Kernels are tabulated on a symmetric window [-radius, radius]. The window
// auto-widens (doubling, capped at 512) until the truncated mass accounts
// for the whole line: at xi = 0 the window mass must reach 1 within 1e-12,
// at xi = pi/2 the squared-modulus mass must reach 1 within 1e-10 (the
// oscillatory series itself floors near 1e-12 at t ~ 10, so the quantum
// target matches the probability tolerance rather than the classical one),
// and in between the classical tail scaled by e^{t (1 - cos xi)} — an
// entrywise bound on |g_t| — must fall below 1e-12. If the cap cannot meet
// the target (large-t quantum kernels lose too many digits to cancellation),
// the construction throws TruncationError rather than return an
// unnormalized window.

#include <complex>
#include <cstddef>
#include <vector>

#include "walkzeta/errors.hpp"
#include "walkzeta/linalg_complex.hpp"

namespace walkzeta {

inline constexpr double kWalkTimeCap = 50.0;
inline constexpr long long kWalkSiteCap = 512;
inline constexpr long long kKernelRadiusCap = 512;

// Finitely supported state on Z: values[i] sits at site offset + i. States
// flagged `probability` must hold nonnegative real entries of unit total
// mass (within 1e-10).
struct LatticeState {
    long long offset = 0;
    std::vector<std::complex<double>> values;
    bool probability = false;

    long long first_site() const noexcept { return offset; }
    long long last_site() const noexcept {
        return offset + static_cast<long long>(values.size()) - 1;
    }
    // 0 outside the stored window
    std::complex<double> at(long long x) const;
    // enforces the type invariants; throws on violation
    void validate() const;
};

// Evolution kernel on the window [-radius, radius]; values[radius + x] is
// g_t(x).
struct Kernel {
    EvolutionParams params;
    long long radius;
    std::vector<std::complex<double>> values;

    std::complex<double> at(long long x) const;
};

// Delta F(x) = F(x-1) + F(x+1) - 2 F(x); widens the window by one site each way
LatticeState discrete_laplacian(const LatticeState& f);

// g_t on [-radius, radius], auto-widened as described above; t <= 50
Kernel kernel(const EvolutionParams& params, long long radius);

// convolution with the kernel; t = 0 returns the state unchanged; the
// probability flag survives only classical evolution of a flagged state
LatticeState evolve(const LatticeState& f, const EvolutionParams& params, long long radius);

// closed-form pmfs at the endpoints; t <= 50, |x| <= 512
double ctrw_pmf(double t, long long x);
double ctqw_pmf(double t, long long x);

// max over interior sites |x| <= radius - 1 of the central-difference
// residual | (g_{t+h} - g_{t-h}) / 2h - e^{i xi} (1/2) Delta g_t |;
// needs 0 < h < t and t + h <= 50
double pde_residual(double xi, double t, double h, long long radius);

}  // namespace walkzeta
