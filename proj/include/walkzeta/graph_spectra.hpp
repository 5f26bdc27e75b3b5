#pragma once

// Transition matrices of discrete-time random walks on finite graphs and
// their spectra, specialized to the torus (Z mod N)^d.
//
// A walk step from vertex x picks one of 2d jump slots (one step forward or
// back along each axis) uniformly, so the transition matrix P has entry
// (x, y) equal to the total slot weight from x landing on y. Small side
// lengths keep the multigraph reading: N = 2 doubles an edge, N = 1 is a
// loop, and P stays doubly stochastic for every N >= 1.
//
// Torus eigenvalues come in closed form, one per momentum vector
// k in {0..N-1}^d:
//
//   lambda_k = (1/d) sum_j cos(2 pi k_j / N)
//
// enumerated in row-major order of k (last coordinate fastest). General
// symmetric matrices are diagonalized by a cyclic Jacobi sweep.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "walkzeta/errors.hpp"

namespace walkzeta {

inline constexpr double kColumnSumTol = 1e-12;
inline constexpr double kSymmetryTol = 1e-12;

// caps on the torus vertex count N^d: full matrices stay addressable up to
// 2^20 vertices; the closed-form spectrum path streams and allows 2^28
inline constexpr unsigned long long kTorusMatrixCap = 1ull << 20;
inline constexpr unsigned long long kTorusSpectrumCap = 1ull << 28;

// Column-stochastic matrix: square, nonnegative, unit column sums (within
// kColumnSumTol). Symmetry within kSymmetryTol is detected on construction.
class TransitionMatrix {
public:
    TransitionMatrix(std::size_t n, std::vector<double> entries);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
    bool is_symmetric() const noexcept { return symmetric_; }
    const std::vector<double>& entries() const noexcept { return entries_; }

private:
    std::size_t n_;
    std::vector<double> entries_;
    bool symmetric_;
};

// The torus (Z mod N)^d.
struct TorusSpec {
    int d;
    long long side;

    TorusSpec(int dimension, long long N);
    unsigned long long vertex_count() const noexcept { return count_; }

private:
    unsigned long long count_;
};

// A momentum vector k in {0..N-1}^d with its angles 2 pi k_j / N.
struct MomentumIndex {
    std::vector<long long> k;
    std::vector<double> angle;
};

// Decodes the flat row-major index (last coordinate fastest) into k.
MomentumIndex momentum_index(const TorusSpec& spec, unsigned long long flat);

// Real or complex eigenvalue multiset, held sorted descending (real part,
// then imaginary part) so equal spectra compare entrywise.
class Spectrum {
public:
    static Spectrum from_real(std::vector<double> values);
    static Spectrum from_complex(std::vector<std::complex<double>> values);

    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<std::complex<double>>& values() const noexcept { return values_; }
    double max_modulus() const;

private:
    explicit Spectrum(std::vector<std::complex<double>> values);
    std::vector<std::complex<double>> values_;
};

// sum_j cos(w_j) over a nonempty list of angles
double cosine_sum(std::span<const double> angles);

// Dense transition matrix of the torus walk; vertex count capped at 2^20.
TransitionMatrix build_torus_transition(const TorusSpec& spec);

// Closed-form torus eigenvalues in row-major momentum order (unsorted), and
// the same multiset as a sorted Spectrum. Vertex count capped at 2^28.
std::vector<double> torus_spectrum_row_major(const TorusSpec& spec);
Spectrum torus_spectrum(const TorusSpec& spec);

// Eigenvalues of a symmetric transition matrix by cyclic Jacobi rotations
// (sweeps until off(A) <= 1e-14 ||A||_F, at most 50 sweeps). The eigensystem
// variant also accumulates orthonormal eigenvectors, column j of `vectors`
// pairing with values[j].
Spectrum hermitian_eigenvalues(const TransitionMatrix& p);

struct EigenSystem {
    std::size_t n = 0;
    std::vector<double> values;   // sorted descending
    std::vector<double> vectors;  // row-major n x n, columns are eigenvectors
};

EigenSystem hermitian_eigensystem(const TransitionMatrix& p);

// CSV exchange format: first line the dimension n, then n lines of n
// comma-separated entries (rows). Loading validates like the constructor and
// reports the worst-offending column on stochasticity failures.
TransitionMatrix load_transition_csv(std::istream& in);
TransitionMatrix load_transition_csv_file(const std::string& path);
void save_transition_csv(const TransitionMatrix& p, std::ostream& out);

}  // namespace walkzeta
