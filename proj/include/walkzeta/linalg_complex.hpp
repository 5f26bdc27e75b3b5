#pragma once

// Complex dense linear algebra for evolution operators of continuous-time
// walks. The evolution matrix interpolates between the classical heat
// semigroup and the quantum unitary group through a phase xi in [0, pi/2]:
//
//   M = exp(e^{i xi} t (P - I))
//
// xi = 0 keeps M stochastic (columns sum to 1), xi = pi/2 makes M unitary
// when P is symmetric; every xi > 0 requires symmetry so the interpolation
// stays on one spectral family.
//
// The exponential is computed by scaling and squaring: scale A = e^{i xi} t
// (P - I) by 2^-s until ||A||_inf <= 1/2, sum the Taylor series to 1e-18
// relative (at most 30 terms), then square s times. Determinants come from
// LU with partial pivoting, with the row-swap sign tracked explicitly.
// Traces of powers use binary exponentiation once r > 8.
//
// Matrix products accumulate in a fixed i-k-j order, so every entry is an
// ascending-k sum: results are bit-identical from run to run.

#include <complex>
#include <cstddef>
#include <vector>

#include "walkzeta/errors.hpp"
#include "walkzeta/graph_spectra.hpp"

namespace walkzeta {

// Interpolation parameters: phase xi in [0, pi/2] (radians) and time t >= 0.
struct EvolutionParams {
    double xi;
    double t;

    EvolutionParams(double xi_, double t_);

    // e^{i xi} t, the complex time multiplying (P - I)
    std::complex<double> complex_time() const;
};

// Dense square complex matrix with finite entries, row-major.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t n);
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix from_transition(const TransitionMatrix& p);

    std::size_t size() const noexcept { return n_; }
    std::complex<double>& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const std::complex<double>& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * n_ + j];
    }
    const std::vector<std::complex<double>>& entries() const noexcept { return entries_; }

private:
    std::size_t n_;
    std::vector<std::complex<double>> entries_;
};

// C = A B with ascending-k accumulation per entry
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

// conjugate transpose
ComplexMatrix adjoint(const ComplexMatrix& a);

// max row sum of entry moduli
double inf_norm(const ComplexMatrix& a);

// exp(e^{i xi} t (P - I)); exact identity at t = 0; throws SymmetryError for
// xi > 0 on a non-symmetric P
ComplexMatrix evolution_matrix(const TransitionMatrix& p, const EvolutionParams& params);

// determinant by LU with partial pivoting; exact 0 on a singular pivot
std::complex<double> lu_determinant(const ComplexMatrix& a);

// tr(M^r); r = 0 gives n, r > 8 goes through binary exponentiation
std::complex<double> matrix_power_trace(const ComplexMatrix& m, unsigned r);

// rho = max_j |exp(e^{i xi} t (lambda_j - 1))|, the modulus bound of the
// evolution eigenvalues; the matrix overload diagonalizes (symmetric only)
double max_abs_eigenvalue_bound(const Spectrum& spectrum, const EvolutionParams& params);
double max_abs_eigenvalue_bound(const TransitionMatrix& p, const EvolutionParams& params);

}  // namespace walkzeta
