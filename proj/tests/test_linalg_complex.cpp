#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "walkzeta/graph_spectra.hpp"
#include "walkzeta/linalg_complex.hpp"

using namespace walkzeta;
using cd = std::complex<double>;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    }
    return m;
}

// deterministic complex matrix with entries in the unit box
ComplexMatrix seeded_matrix(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = cd(u(rng), u(rng));
    }
    return m;
}

}  // namespace

TEST_CASE("EvolutionParams validates its ranges") {
    CHECK_NOTHROW(EvolutionParams(0.0, 0.0));
    CHECK_NOTHROW(EvolutionParams(kHalfPi, 3.0));
    CHECK_THROWS_AS(EvolutionParams(-0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(EvolutionParams(kHalfPi + 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(EvolutionParams(0.5, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(EvolutionParams(std::nan(""), 1.0), std::invalid_argument);

    const EvolutionParams quantum(kHalfPi, 2.0);
    CHECK(std::abs(quantum.complex_time() - cd(0.0, 2.0)) < 1e-15);
}

TEST_CASE("evolution at t = 0 is the exact identity") {
    const TransitionMatrix p = build_torus_transition(TorusSpec(1, 4));
    const ComplexMatrix m = evolution_matrix(p, EvolutionParams(0.7, 0.0));
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) CHECK(m(i, j) == cd(i == j ? 1.0 : 0.0, 0.0));
    }
}

TEST_CASE("evolution of the one-vertex walk is scalar") {
    const TransitionMatrix p = build_torus_transition(TorusSpec(1, 1));
    const ComplexMatrix m = evolution_matrix(p, EvolutionParams(0.3, 5.0));
    REQUIRE(m.size() == 1);
    // P = I, so M = exp(0) = 1 for every xi and t
    CHECK(std::abs(m(0, 0) - cd(1.0, 0.0)) < 1e-15);
}

TEST_CASE("two-vertex classical evolution matches the closed form") {
    // P = [[0,1],[1,0]]: eigenvalues 1 and -1, so at xi = 0, t = 1 the
    // diagonal is (1 + e^-2)/2 and the off-diagonal (1 - e^-2)/2
    const TransitionMatrix p = build_torus_transition(TorusSpec(1, 2));
    const ComplexMatrix m = evolution_matrix(p, EvolutionParams(0.0, 1.0));
    const double diag = 0.5676676416183063459;  // (1 + e^-2)/2
    const double off = 0.4323323583816936541;   // (1 - e^-2)/2
    CHECK(std::abs(m(0, 0) - cd(diag, 0)) < 1e-15);
    CHECK(std::abs(m(1, 1) - cd(diag, 0)) < 1e-15);
    CHECK(std::abs(m(0, 1) - cd(off, 0)) < 1e-15);
    CHECK(std::abs(m(1, 0) - cd(off, 0)) < 1e-15);
}

TEST_CASE("evolution matches a plain Taylor oracle") {
    for (auto [d, N] : {std::pair<int, long long>{1, 5}, {2, 3}}) {
        const TransitionMatrix p = build_torus_transition(TorusSpec(d, N));
        const std::size_t n = p.size();
        for (double xi : {0.0, 0.6, kHalfPi}) {
            for (double t : {0.35, 1.0, 2.5}) {
                const EvolutionParams params(xi, t);
                const ComplexMatrix m = evolution_matrix(p, params);
                // oracle: straight Taylor sum of e^{i xi} t (P - I)
                std::vector<cd> a(n * n);
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        a[i * n + j] = params.complex_time() * (p(i, j) - (i == j ? 1.0 : 0.0));
                    }
                }
                const std::vector<cd> want = oracle::exp_taylor(a, n);
                double worst = 0.0;
                for (std::size_t i = 0; i < n * n; ++i) {
                    worst = std::max(worst, std::abs(m.entries()[i] - want[i]));
                }
                CHECK(worst < 1e-13);
            }
        }
    }
}

TEST_CASE("xi > 0 on a non-symmetric matrix is refused, xi = 0 is not") {
    const TransitionMatrix p(2, {0.2, 0.6, 0.8, 0.4});
    CHECK_THROWS_AS(evolution_matrix(p, EvolutionParams(0.1, 1.0)), SymmetryError);
    CHECK_THROWS_AS(evolution_matrix(p, EvolutionParams(kHalfPi, 1.0)), SymmetryError);
    CHECK_NOTHROW(evolution_matrix(p, EvolutionParams(0.0, 1.0)));
}

TEST_CASE("classical evolution stays stochastic") {
    for (auto [d, N] : {std::pair<int, long long>{1, 6}, {2, 3}}) {
        const TransitionMatrix p = build_torus_transition(TorusSpec(d, N));
        const std::size_t n = p.size();
        for (double t : {0.5, 2.0, 10.0}) {
            const ComplexMatrix m = evolution_matrix(p, EvolutionParams(0.0, t));
            for (std::size_t j = 0; j < n; ++j) {
                cd col_sum(0, 0);
                for (std::size_t i = 0; i < n; ++i) {
                    col_sum += m(i, j);
                    CHECK(m(i, j).real() >= -1e-14);
                    CHECK(std::abs(m(i, j).imag()) < 1e-14);
                }
                CHECK(std::abs(col_sum - cd(1, 0)) < 1e-12);
            }
        }
    }
}

TEST_CASE("quantum evolution is unitary") {
    for (auto [d, N] : {std::pair<int, long long>{1, 6}, {2, 3}}) {
        const TransitionMatrix p = build_torus_transition(TorusSpec(d, N));
        for (double t : {0.5, 2.0, 10.0}) {
            const ComplexMatrix m = evolution_matrix(p, EvolutionParams(kHalfPi, t));
            const ComplexMatrix gram = multiply(adjoint(m), m);
            CHECK(max_abs_diff(gram, ComplexMatrix::identity(m.size())) < 1e-10);
        }
    }
}

TEST_CASE("evolution obeys the semigroup law in t") {
    const TransitionMatrix p = build_torus_transition(TorusSpec(2, 3));
    for (double xi : {0.0, std::numbers::pi / 4.0, kHalfPi}) {
        for (auto [t1, t2] : {std::pair<double, double>{0.5, 1.0}, {2.0, 3.0}, {0.1, 4.9}}) {
            const ComplexMatrix lhs = evolution_matrix(p, EvolutionParams(xi, t1 + t2));
            const ComplexMatrix rhs = multiply(evolution_matrix(p, EvolutionParams(xi, t1)),
                                               evolution_matrix(p, EvolutionParams(xi, t2)));
            CHECK(max_abs_diff(lhs, rhs) < 1e-9 * p.size());
        }
    }
}

TEST_CASE("trace of evolution powers matches the spectral sum") {
    const TorusSpec spec(1, 8);
    const TransitionMatrix p = build_torus_transition(spec);
    const auto lambdas = torus_spectrum_row_major(spec);
    for (double xi : {0.0, kHalfPi}) {
        for (double t : {0.5, 2.0}) {
            const EvolutionParams params(xi, t);
            const ComplexMatrix m = evolution_matrix(p, params);
            for (unsigned r : {1u, 2u, 5u, 8u}) {
                cd spectral(0, 0);
                for (double l : lambdas) {
                    spectral += std::exp(params.complex_time() * double(r) * (l - 1.0));
                }
                CHECK(std::abs(matrix_power_trace(m, r) - spectral) < 1e-9 * p.size());
            }
        }
    }
}

TEST_CASE("lu_determinant on closed-form cases") {
    CHECK(lu_determinant(ComplexMatrix::identity(5)) == cd(1.0, 0.0));

    ComplexMatrix diag(2);
    diag(0, 0) = cd(2, 0);
    diag(1, 1) = cd(0, 3);
    CHECK(std::abs(lu_determinant(diag) - cd(0, 6)) < 1e-15);

    // row swap flips the sign: permutation matrix has det -1
    ComplexMatrix perm(2);
    perm(0, 1) = cd(1, 0);
    perm(1, 0) = cd(1, 0);
    CHECK(lu_determinant(perm) == cd(-1.0, 0.0));

    // duplicate real rows eliminate exactly, leaving a hard zero pivot
    ComplexMatrix sing(3);
    for (std::size_t j = 0; j < 3; ++j) {
        sing(0, j) = cd(1.0 + double(j), 0.0);
        sing(1, j) = sing(0, j);
        sing(2, j) = cd(0.25, double(j));
    }
    CHECK(lu_determinant(sing) == cd(0.0, 0.0));
}

TEST_CASE("lu_determinant agrees with cofactor expansion on random 3x3") {
    for (unsigned seed : {11u, 12u, 13u, 14u}) {
        const ComplexMatrix m = seeded_matrix(3, seed);
        const cd want = oracle::det3(m.entries().data());
        CHECK(std::abs(lu_determinant(m) - want) <= 1e-13 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("lu_determinant is multiplicative") {
    for (unsigned seed : {21u, 22u}) {
        const ComplexMatrix a = seeded_matrix(8, seed);
        const ComplexMatrix b = seeded_matrix(8, seed + 100);
        const cd lhs = lu_determinant(multiply(a, b));
        const cd rhs = lu_determinant(a) * lu_determinant(b);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("lu_determinant rejects non-finite entries") {
    ComplexMatrix m = ComplexMatrix::identity(2);
    m(0, 1) = cd(std::nan(""), 0.0);
    CHECK_THROWS_AS(lu_determinant(m), std::invalid_argument);
}

TEST_CASE("matrix_power_trace across both exponentiation routes") {
    CHECK(matrix_power_trace(ComplexMatrix::identity(7), 0) == cd(7, 0));
    CHECK(matrix_power_trace(ComplexMatrix::identity(7), 13) == cd(7, 0));

    ComplexMatrix diag(2);
    diag(0, 0) = cd(0.5, 0.25);
    diag(1, 1) = cd(-0.75, 0.0);
    const cd a = diag(0, 0), b = diag(1, 1);
    CHECK(std::abs(matrix_power_trace(diag, 2) - (a * a + b * b)) < 1e-15);

    // r = 13 exercises binary exponentiation; compare against 12 plain products
    const ComplexMatrix m = seeded_matrix(5, 31u);
    ComplexMatrix plain = m;
    for (int i = 1; i < 13; ++i) plain = multiply(plain, m);
    cd want(0, 0);
    for (std::size_t i = 0; i < 5; ++i) want += plain(i, i);
    CHECK(std::abs(matrix_power_trace(m, 13) - want) <= 1e-11 * std::max(1.0, std::abs(want)));

    // classical two-vertex evolution at t = 1: tr M = 1 + e^-2
    const TransitionMatrix p = build_torus_transition(TorusSpec(1, 2));
    const ComplexMatrix ev = evolution_matrix(p, EvolutionParams(0.0, 1.0));
    CHECK(std::abs(matrix_power_trace(ev, 1) - cd(1.1353352832366126919, 0)) < 1e-14);
}

TEST_CASE("max_abs_eigenvalue_bound is 1 on stochastic symmetric families") {
    const TransitionMatrix p = build_torus_transition(TorusSpec(1, 4));
    for (double xi : {0.0, 0.4, kHalfPi}) {
        for (double t : {0.0, 1.0, 7.0}) {
            CHECK(max_abs_eigenvalue_bound(p, EvolutionParams(xi, t)) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    // quantum phases have modulus exactly 1 regardless of the spectrum
    const Spectrum shifted = Spectrum::from_real({0.5, -1.0});
    CHECK(max_abs_eigenvalue_bound(shifted, EvolutionParams(kHalfPi, 3.0)) == doctest::Approx(1.0).epsilon(1e-14));
    // classical spectrum bounded away from 1 contracts: rho = e^{-t/2} here
    CHECK(max_abs_eigenvalue_bound(shifted, EvolutionParams(0.0, 2.0)) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-13));

    const TransitionMatrix asym(2, {0.2, 0.6, 0.8, 0.4});
    CHECK_THROWS_AS(max_abs_eigenvalue_bound(asym, EvolutionParams(0.0, 1.0)), SymmetryError);
}
