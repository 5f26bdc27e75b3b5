#pragma once

// Zeta functions of walk evolutions on finite graphs,
//
//   zeta(G, u)^-1 = det(I - u M)^{1/n},   M = exp(e^{i xi} t (P - I)),
//
// evaluated through three independent routes: the spectral form
//
//   log zeta^-1 = (1/n) sum_j Log(1 - u exp(e^{i xi} t (lambda_j - 1)))
//
// with the principal branch applied termwise, the determinant of I - u M at
// the n-th power level (no root is ever taken of the determinant, so the two
// routes are compared as det vs exp(n log zeta^-1)), and the coefficient
// series
//
//   -log zeta^-1 = sum_{r>=1} C_r u^r / r,
//   C_r = (1/n) sum_j exp(e^{i xi} r t (lambda_j - 1)) = (1/n) tr(M^r).
//
// On the torus (Z mod N)^d the spectral sums run over the momentum grid and
// are periodic-trapezoid quadratures of their N -> infinity limits; the limit
// of C_r collapses to the Bessel closed form
//
//   lim_N C_r = exp(-e^{i xi} r t) I_0(e^{i xi} r t / d)^d.
//
// The discrete-time analogues replace exp(e^{i xi} t (lambda - 1)) with
// lambda itself; for the simple random walk the r-step return probability is
// binom(r, r/2) / 2^r per axis in d <= 2, and quadrature elsewhere.
//
// Every u-evaluation enforces the convergence-disk precondition
// |u| rho < 1, where rho bounds the eigenvalue moduli; violations throw
// RadiusError. All grid sums are Neumaier-compensated and run in row-major
// momentum order, so results are bit-stable across runs.

#include <complex>

#include "walkzeta/errors.hpp"
#include "walkzeta/graph_spectra.hpp"
#include "walkzeta/linalg_complex.hpp"

namespace walkzeta {

// periodic-trapezoid limit evaluations refuse grids below this
inline constexpr unsigned long long kLimitGridMin = 16;

// the Bessel closed form is kept inside the |z| <= 100 series envelope
inline constexpr double kBesselLimitCap = 100.0;

struct ZetaValue {
    std::complex<double> log_zeta_inverse;
    std::complex<double> zeta_inverse;  // exp(log_zeta_inverse)
};

// spectral route, any eigenvalue multiset
ZetaValue ctm_zeta_inverse_spectral(const Spectrum& spectrum, const EvolutionParams& params,
                                    std::complex<double> u);

// determinant route at the n-th power level: det(I - u M)
std::complex<double> ctm_zeta_inverse_determinant(const TransitionMatrix& p,
                                                  const EvolutionParams& params,
                                                  std::complex<double> u);

// C_r from a spectrum (r >= 1)
std::complex<double> ctm_coeff(const Spectrum& spectrum, const EvolutionParams& params, unsigned r);

// torus specializations: streaming momentum-grid sums, no matrix built
ZetaValue torus_zeta_inverse_finite(const TorusSpec& spec, const EvolutionParams& params,
                                    std::complex<double> u);
std::complex<double> torus_coeff_finite(const TorusSpec& spec, const EvolutionParams& params,
                                        unsigned r);

// N -> infinity limits: the same formulas on a refinement grid (>= 16), and
// the Bessel closed form (requires r t <= 100 d)
ZetaValue torus_zeta_inverse_limit(int d, const EvolutionParams& params, std::complex<double> u,
                                   unsigned long long grid);
std::complex<double> torus_coeff_limit_bessel(int d, const EvolutionParams& params, unsigned r);

// discrete-time model: powers of P instead of the exponential flow
ZetaValue dtm_zeta_inverse(const Spectrum& spectrum, std::complex<double> u);
std::complex<double> dtm_coeff(const Spectrum& spectrum, unsigned r);

// streaming torus version of dtm_coeff: (1/N^d) sum_k lambda_k^r
double dtm_coeff_torus(const TorusSpec& spec, unsigned r);

// r-step return probability of the simple random walk on Z^d: closed form
// for d <= 2, periodic-trapezoid quadrature (grid > r required) for d >= 3
double dtrw_return_probability(int d, unsigned r, unsigned long long grid);

// quadrature value with a two-grid convergence estimate attached; the
// uncertainty is 0 where the closed form applies
struct ReturnProbabilityEstimate {
    double value;
    double uncertainty;
};

ReturnProbabilityEstimate dtrw_return_probability_estimate(int d, unsigned r,
                                                           unsigned long long grid);

}  // namespace walkzeta
