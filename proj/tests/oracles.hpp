#pragma once

// Test-only reference implementations, deliberately written along different
// numerical routes than the library code they check:
//
//  * Bessel series assembled per-term in log space via lgamma (the library
//    uses a term recurrence with an exact factorial table),
//  * 3x3 determinants by cofactor expansion (the library uses LU),
//  * the matrix exponential by a straight Taylor sum with no scaling step,
//  * torus transition matrices from explicit coordinate arithmetic,
//  * binomial coefficients from Pascal's triangle.
//
// All sums are compensated (Neumaier) so the oracles themselves contribute
// errors well below the tolerances the tests assert.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

// ---------------------------------------------------------------------------
// compensated accumulation

class NeumaierSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexSum {
public:
    void add(cd v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    cd value() const { return {re_.value(), im_.value()}; }

private:
    NeumaierSum re_;
    NeumaierSum im_;
};

// ---------------------------------------------------------------------------
// Bessel functions by per-term log-space assembly
//
//   term_k = sign^k (z/2)^(2k+a) / (k! (a+k)!)
//
// |term_k| and the phase are built from lgamma and arg(z/2) independently for
// every k; nothing is carried between terms. 120 terms are fully converged
// for |z| <= 30 and order <= 40.

inline cd bessel_series(int a, cd z, double sign, int terms = 120) {
    if (z == cd(0.0, 0.0)) return {a == 0 ? 1.0 : 0.0, 0.0};
    const cd w = 0.5 * z;
    const double logw = std::log(std::abs(w));
    const double argw = std::arg(w);
    ComplexSum sum;
    for (int k = 0; k < terms; ++k) {
        const double logmag = (2 * k + a) * logw - std::lgamma(k + 1.0) - std::lgamma(a + k + 1.0);
        double phase = (2 * k + a) * argw;
        double mag = std::exp(logmag);
        if (sign < 0.0 && (k % 2 == 1)) mag = -mag;
        sum.add(mag * cd(std::cos(phase), std::sin(phase)));
    }
    return sum.value();
}

inline cd bessel_i(int order, cd z) {
    const int a = order < 0 ? -order : order;
    return bessel_series(a, z, +1.0);
}

inline cd bessel_j(int order, cd z) {
    const int a = order < 0 ? -order : order;
    const cd v = bessel_series(a, z, -1.0);
    return (order < 0 && a % 2 == 1) ? -v : v;
}

// ---------------------------------------------------------------------------
// 3x3 determinant by cofactor expansion (row-major entries)

inline cd det3(const cd* m) {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

// ---------------------------------------------------------------------------
// matrix exponential by plain Taylor summation (no scaling/squaring);
// converged to machine precision for ||A|| up to ~5 with 80 terms.

inline std::vector<cd> exp_taylor(const std::vector<cd>& a, std::size_t n, int terms = 80) {
    std::vector<cd> x(n * n, cd(0.0, 0.0));
    std::vector<cd> term(n * n, cd(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        x[i * n + i] = 1.0;
        term[i * n + i] = 1.0;
    }
    std::vector<cd> next(n * n);
    for (int k = 1; k <= terms; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                ComplexSum s;
                for (std::size_t l = 0; l < n; ++l) s.add(term[i * n + l] * a[l * n + j]);
                next[i * n + j] = s.value() / static_cast<double>(k);
            }
        }
        term = next;
        for (std::size_t i = 0; i < n * n; ++i) x[i] += term[i];
    }
    return x;
}

// ---------------------------------------------------------------------------
// torus transition matrix from explicit coordinate arithmetic: vertex x of
// (Z mod N)^d holds 2d jump slots, one step +1/-1 along each axis, each of
// probability 1/(2d); entry (x, y) is the total slot weight from x landing
// on y. Coordinates are decoded with the last axis fastest.

inline std::vector<double> torus_transition(int d, long long N) {
    std::size_t n = 1;
    for (int j = 0; j < d; ++j) n *= static_cast<std::size_t>(N);
    std::vector<double> p(n * n, 0.0);
    const double hop = 1.0 / (2.0 * d);
    for (std::size_t x = 0; x < n; ++x) {
        // decode digits of x, last axis fastest
        std::vector<long long> digit(d);
        std::size_t rem = x;
        for (int j = d - 1; j >= 0; --j) {
            digit[j] = static_cast<long long>(rem % static_cast<std::size_t>(N));
            rem /= static_cast<std::size_t>(N);
        }
        for (int j = 0; j < d; ++j) {
            for (int step : {+1, -1}) {
                std::vector<long long> nb = digit;
                nb[j] = ((nb[j] + step) % N + N) % N;
                std::size_t y = 0;
                for (int l = 0; l < d; ++l) y = y * static_cast<std::size_t>(N) + static_cast<std::size_t>(nb[l]);
                p[x * n + y] += hop;
            }
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// binomial coefficients from Pascal's triangle, in doubles

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    std::vector<double> row{1.0};
    for (int i = 1; i <= n; ++i) {
        std::vector<double> next(i + 1, 1.0);
        for (int j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
        row = std::move(next);
    }
    return row[k];
}

}  // namespace oracle
