#include "walkzeta/linalg_complex.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace walkzeta {

namespace {

using cd = std::complex<double>;

constexpr int kTaylorCap = 30;
constexpr double kTaylorStop = 1e-18;
constexpr unsigned kPlainPowerCap = 8;

void validate_finite(const ComplexMatrix& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            const cd v = a(i, j);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw std::invalid_argument("matrix entry (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ") is not finite");
            }
        }
    }
}

ComplexMatrix power(const ComplexMatrix& m, unsigned r) {
    // plain products for small r, square-and-multiply beyond
    if (r <= kPlainPowerCap) {
        ComplexMatrix acc = m;
        for (unsigned i = 1; i < r; ++i) acc = multiply(acc, m);
        return acc;
    }
    ComplexMatrix result = ComplexMatrix::identity(m.size());
    ComplexMatrix base = m;
    while (r > 0) {
        if (r & 1u) result = multiply(result, base);
        r >>= 1u;
        if (r > 0) base = multiply(base, base);
    }
    return result;
}

}  // namespace

EvolutionParams::EvolutionParams(double xi_, double t_) : xi(xi_), t(t_) {
    if (!(xi >= 0.0 && xi <= std::numbers::pi / 2.0)) {
        throw std::invalid_argument("phase xi must lie in [0, pi/2], got " + std::to_string(xi));
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("time t must be finite and nonnegative, got " + std::to_string(t));
    }
}

std::complex<double> EvolutionParams::complex_time() const { return std::polar(1.0, xi) * t; }

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), entries_(n * n, cd(0.0, 0.0)) {
    if (n_ == 0) throw SizeError("complex matrix must be at least 1 x 1");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = cd(1.0, 0.0);
    return m;
}

ComplexMatrix ComplexMatrix::from_transition(const TransitionMatrix& p) {
    const std::size_t n = p.size();
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = cd(p(i, j), 0.0);
    }
    return m;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.size() != b.size()) throw SizeError("matrix product needs equal dimensions");
    const std::size_t n = a.size();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cd aik = a(i, k);
            // skipping exact zeros leaves the remaining ascending-k sum
            // bit-identical and makes sparse first factors cheap
            if (aik == cd(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    const std::size_t n = a.size();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) c(i, j) = std::conj(a(j, i));
    }
    return c;
}

double inf_norm(const ComplexMatrix& a) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) row += std::abs(a(i, j));
        worst = std::max(worst, row);
    }
    return worst;
}

ComplexMatrix evolution_matrix(const TransitionMatrix& p, const EvolutionParams& params) {
    const std::size_t n = p.size();
    if (params.xi > 0.0 && !p.is_symmetric()) {
        throw SymmetryError("interpolated and quantum evolution require a symmetric transition matrix");
    }
    if (params.t == 0.0) return ComplexMatrix::identity(n);

    // A = e^{i xi} t (P - I)
    const cd w = params.complex_time();
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = w * (p(i, j) - (i == j ? 1.0 : 0.0));
    }

    // scale by 2^-s until ||A||_inf <= 1/2
    int s = 0;
    for (double norm = inf_norm(a); norm > 0.5; norm *= 0.5) ++s;
    if (s > 0) {
        const double scale = std::ldexp(1.0, -s);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a(i, j) *= scale;
        }
    }

    // Taylor series of exp(A / 2^s)
    ComplexMatrix x = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= kTaylorCap; ++k) {
        term = multiply(term, a);
        const double inv_k = 1.0 / k;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                term(i, j) *= inv_k;
                x(i, j) += term(i, j);
            }
        }
        if (inf_norm(term) <= kTaylorStop * inf_norm(x)) break;
    }

    // undo the scaling by repeated squaring
    for (int i = 0; i < s; ++i) x = multiply(x, x);
    return x;
}

std::complex<double> lu_determinant(const ComplexMatrix& a) {
    validate_finite(a);
    const std::size_t n = a.size();
    std::vector<cd> m = a.entries();
    double sign = 1.0;
    cd det(1.0, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(m[col * n + col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            const double mag = std::abs(m[i * n + col]);
            if (mag > best) {
                best = mag;
                piv = i;
            }
        }
        if (best == 0.0) return cd(0.0, 0.0);
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(m[piv * n + j], m[col * n + j]);
            sign = -sign;
        }
        const cd pivot = m[col * n + col];
        det *= pivot;
        for (std::size_t i = col + 1; i < n; ++i) {
            const cd f = m[i * n + col] / pivot;
            if (f == cd(0.0, 0.0)) continue;
            for (std::size_t j = col + 1; j < n; ++j) m[i * n + j] -= f * m[col * n + j];
        }
    }
    return sign * det;
}

std::complex<double> matrix_power_trace(const ComplexMatrix& m, unsigned r) {
    validate_finite(m);
    if (r == 0) return cd(static_cast<double>(m.size()), 0.0);
    const ComplexMatrix mr = power(m, r);
    cd trace(0.0, 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) trace += mr(i, i);
    return trace;
}

double max_abs_eigenvalue_bound(const Spectrum& spectrum, const EvolutionParams& params) {
    // |exp(e^{i xi} t (lambda - 1))| = exp(t (cos xi (Re lambda - 1) - sin xi Im lambda))
    const double c = std::cos(params.xi);
    const double s = std::sin(params.xi);
    double worst = -std::numeric_limits<double>::infinity();
    for (const cd lambda : spectrum.values()) {
        worst = std::max(worst, params.t * (c * (lambda.real() - 1.0) - s * lambda.imag()));
    }
    return std::exp(worst);
}

double max_abs_eigenvalue_bound(const TransitionMatrix& p, const EvolutionParams& params) {
    if (!p.is_symmetric()) {
        throw SymmetryError("eigenvalue bound from a matrix requires symmetry; supply a spectrum instead");
    }
    return max_abs_eigenvalue_bound(hermitian_eigenvalues(p), params);
}

}  // namespace walkzeta
