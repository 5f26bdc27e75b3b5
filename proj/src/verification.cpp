#include "walkzeta/verification.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <utility>
#include <vector>

#include "walkzeta/compensated.hpp"
#include "walkzeta/graph_spectra.hpp"
#include "walkzeta/lattice_walks.hpp"
#include "walkzeta/linalg_complex.hpp"
#include "walkzeta/special_fn.hpp"
#include "walkzeta/zeta_engine.hpp"

namespace walkzeta {

namespace {

using cd = std::complex<double>;

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kQuarterPi = std::numbers::pi / 4.0;

const std::vector<double> kXiSet{0.0, kQuarterPi, kHalfPi};
const std::vector<double> kTimeSet{0.0, 0.5, 2.0};
const std::vector<cd> kUSet{cd(0.3, 0.0), cd(0.0, 0.5), cd(-0.25, 0.25)};

std::vector<TorusSpec> test_tori(VerifyLevel level) {
    // vertex counts 4, 16, 64, and at full level also 256 and 512
    std::vector<TorusSpec> tori{TorusSpec(1, 4), TorusSpec(2, 4), TorusSpec(3, 4)};
    if (level == VerifyLevel::full) {
        tori.emplace_back(2, 16);
        tori.emplace_back(1, 512);
    }
    return tori;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

CheckResult report(std::string name, bool pass, double worst, double tolerance,
                   const std::string& note = "") {
    std::string detail = "worst " + fmt(worst) + " vs tolerance " + fmt(tolerance);
    if (!note.empty()) detail += "; " + note;
    return {std::move(name), pass, std::move(detail)};
}

// 1. det(I - u M) against exp(n log zeta^-1) over the full parameter box
CheckResult check_determinant_vs_spectral(VerifyLevel level) {
    const double tol = 1e-8;
    double worst = 0.0;
    bool pass = true;
    for (const TorusSpec& spec : test_tori(level)) {
        const TransitionMatrix p = build_torus_transition(spec);
        const double n = static_cast<double>(spec.vertex_count());
        for (double xi : kXiSet) {
            for (double t : kTimeSet) {
                const EvolutionParams params(xi, t);
                const ComplexMatrix m = evolution_matrix(p, params);
                for (cd u : kUSet) {
                    const std::size_t dim = m.size();
                    ComplexMatrix b(dim);
                    for (std::size_t i = 0; i < dim; ++i) {
                        for (std::size_t j = 0; j < dim; ++j) {
                            b(i, j) = (i == j ? 1.0 : 0.0) - u * m(i, j);
                        }
                    }
                    const cd det = lu_determinant(b);
                    const cd spectral =
                        std::exp(n * torus_zeta_inverse_finite(spec, params, u).log_zeta_inverse);
                    const double resid = std::abs(det - spectral) / (1.0 + std::abs(det));
                    worst = std::max(worst, resid);
                    pass = pass && resid <= tol;
                }
            }
        }
    }
    return report("determinant route reproduces the spectral zeta at the power level", pass, worst,
                  tol);
}

// 2. C_r: closed form vs (1/n) tr(M^r) vs momentum-grid sum
CheckResult check_coefficient_triple(VerifyLevel level) {
    const double tol = 1e-9;
    double worst = 0.0;
    bool pass = true;
    std::vector<TorusSpec> tori{TorusSpec(1, 8), TorusSpec(2, 4), TorusSpec(3, 2)};
    if (level == VerifyLevel::full) tori.emplace_back(2, 8);
    for (const TorusSpec& spec : tori) {
        const TransitionMatrix p = build_torus_transition(spec);
        const Spectrum s = torus_spectrum(spec);
        const double n = static_cast<double>(spec.vertex_count());
        for (double xi : kXiSet) {
            for (double t : {0.5, 2.0}) {
                const EvolutionParams params(xi, t);
                const ComplexMatrix m = evolution_matrix(p, params);
                for (unsigned r = 1; r <= 6; ++r) {
                    const cd a = ctm_coeff(s, params, r);
                    const cd b = matrix_power_trace(m, r) / n;
                    const cd c = torus_coeff_finite(spec, params, r);
                    const double resid = std::max(std::abs(a - b), std::abs(a - c));
                    worst = std::max(worst, resid);
                    pass = pass && resid <= tol;
                }
            }
        }
    }
    return report("coefficient routes agree: spectral sum, averaged trace, momentum grid", pass,
                  worst, tol);
}

// 3. -log zeta^-1 = sum_{r<=60} C_r u^r / r on the 8-cycle
CheckResult check_series_identity(VerifyLevel) {
    const double tol = 1e-10;
    double worst = 0.0;
    bool pass = true;
    const TorusSpec spec(1, 8);
    const Spectrum s = torus_spectrum(spec);
    for (double xi : kXiSet) {
        for (double t : kTimeSet) {
            const EvolutionParams params(xi, t);
            for (cd u : {cd(0.5, 0.0), cd(-0.5, 0.0), cd(0.0, 0.5), cd(0.25, 0.25)}) {
                const cd lhs = -torus_zeta_inverse_finite(spec, params, u).log_zeta_inverse;
                cd rhs(0.0, 0.0);
                cd upow(1.0, 0.0);
                for (unsigned r = 1; r <= 60; ++r) {
                    upow *= u;
                    rhs += ctm_coeff(s, params, r) * upow / static_cast<double>(r);
                }
                const double resid = std::abs(lhs - rhs);
                worst = std::max(worst, resid);
                pass = pass && resid <= tol;
            }
        }
    }
    return report("log-zeta series matches its coefficients through order 60", pass, worst, tol);
}

// 4. finite-N coefficient against the Bessel limit at N = 128
CheckResult check_bessel_limit(VerifyLevel level) {
    const double tol = 1e-10;
    double worst = 0.0;
    bool pass = true;
    const std::vector<std::pair<unsigned, double>> rt_pairs{
        {1, 0.5}, {1, 1.0}, {2, 1.0}, {1, 5.0}, {5, 1.0}, {2, 5.0}, {10, 1.0}, {5, 2.0}};
    const int dmax = (level == VerifyLevel::full) ? 3 : 2;
    for (int d = 1; d <= dmax; ++d) {
        const TorusSpec spec(d, 128);
        for (double xi : {0.0, kHalfPi}) {
            for (const auto& [r, t] : rt_pairs) {
                const EvolutionParams params(xi, t);
                const cd finite = torus_coeff_finite(spec, params, r);
                const cd limit = torus_coeff_limit_bessel(d, params, r);
                const double resid = std::abs(finite - limit);
                worst = std::max(worst, resid);
                pass = pass && resid <= tol;
            }
        }
    }
    return report("momentum-grid coefficients land on the Bessel limit at N = 128", pass, worst,
                  tol);
}

// 5. DTRW return probabilities against the central-binomial closed forms
CheckResult check_return_probabilities(VerifyLevel) {
    double worst_even = 0.0, worst_odd = 0.0, worst_square = 0.0;
    bool pass = true;
    const TorusSpec line(1, 128);
    const TorusSpec plane(2, 128);
    for (unsigned r = 1; r <= 20; ++r) {
        const double quad1 = dtm_coeff_torus(line, r);
        const double quad2 = dtm_coeff_torus(plane, r);
        const double closed = dtrw_return_probability(1, r, 128);
        if (r % 2 == 0) {
            const double resid = std::abs(quad1 - closed);
            worst_even = std::max(worst_even, resid);
            pass = pass && resid <= 1e-13;
        } else {
            const double resid = std::abs(quad1);
            worst_odd = std::max(worst_odd, resid);
            pass = pass && resid <= 1e-15;
        }
        const double resid2 = std::abs(quad2 - closed * closed);
        worst_square = std::max(worst_square, resid2);
        pass = pass && resid2 <= 1e-12;
    }
    return {"walk return probabilities: quadrature hits the binomial closed forms", pass,
            "worst even " + fmt(worst_even) + " (tol 1e-13), odd " + fmt(worst_odd) +
                " (tol 1e-15), d=2 " + fmt(worst_square) + " (tol 1e-12)"};
}

// 6. endpoint structure of the evolution: unitary at pi/2, stochastic at 0
CheckResult check_endpoint_structure(VerifyLevel level) {
    double worst_unitary = 0.0, worst_stochastic = 0.0, worst_negative = 0.0;
    bool pass = true;
    for (const TorusSpec& spec : test_tori(level)) {
        const TransitionMatrix p = build_torus_transition(spec);
        for (double t : kTimeSet) {
            const ComplexMatrix q = evolution_matrix(p, EvolutionParams(kHalfPi, t));
            const ComplexMatrix gram = multiply(adjoint(q), q);
            for (std::size_t i = 0; i < gram.size(); ++i) {
                for (std::size_t j = 0; j < gram.size(); ++j) {
                    const double dev = std::abs(gram(i, j) - cd(i == j ? 1.0 : 0.0, 0.0));
                    worst_unitary = std::max(worst_unitary, dev);
                }
            }
            const ComplexMatrix c = evolution_matrix(p, EvolutionParams(0.0, t));
            for (std::size_t j = 0; j < c.size(); ++j) {
                ComplexNeumaierSum col;
                for (std::size_t i = 0; i < c.size(); ++i) {
                    col.add(c(i, j));
                    worst_negative = std::max(worst_negative, -c(i, j).real());
                }
                worst_stochastic = std::max(worst_stochastic, std::abs(col.value() - cd(1.0, 0.0)));
            }
        }
    }
    pass = worst_unitary <= 1e-10 && worst_stochastic <= 1e-12 && worst_negative <= 1e-14;
    return {"evolution endpoints stay unitary (pi/2) and stochastic (0)", pass,
            "worst ||M*M - I|| " + fmt(worst_unitary) + " (tol 1e-10), column-sum " +
                fmt(worst_stochastic) + " (tol 1e-12), negativity " + fmt(worst_negative) +
                " (tol 1e-14)"};
}

// 7. lattice pmfs conserve mass over |x| <= 80
CheckResult check_lattice_conservation(VerifyLevel) {
    const double tol = 1e-10;
    double worst = 0.0;
    bool pass = true;
    for (double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        NeumaierSum classical, quantum;
        for (long long x = -80; x <= 80; ++x) {
            classical.add(ctrw_pmf(t, x));
            quantum.add(ctqw_pmf(t, x));
        }
        const double resid =
            std::max(std::abs(classical.value() - 1.0), std::abs(quantum.value() - 1.0));
        worst = std::max(worst, resid);
        pass = pass && resid <= tol;
    }
    return report("lattice walk distributions conserve mass", pass, worst, tol);
}

// 8. kernel solves the lattice PDE to second order in the time step
CheckResult check_pde_residual(VerifyLevel) {
    double worst = 0.0, worst_ratio_dev = 0.0;
    bool pass = true;
    for (double xi : kXiSet) {
        const double r1 = pde_residual(xi, 1.0, 1e-3, 40);
        const double r2 = pde_residual(xi, 1.0, 5e-4, 40);
        worst = std::max(worst, r1);
        const double ratio = r1 / r2;
        worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 4.0));
        pass = pass && r1 <= 1e-6 && ratio >= 3.0 && ratio <= 5.0;
    }
    return {"kernel satisfies the lattice PDE with second-order residuals", pass,
            "worst residual " + fmt(worst) + " (tol 1e-6), halving ratio within " +
                fmt(worst_ratio_dev) + " of 4 (band [3, 5])"};
}

// 9. kernel center equals the d = 1 coefficient limit
CheckResult check_kernel_coefficient_identity(VerifyLevel) {
    const double tol = 1e-12;
    double worst = 0.0;
    bool pass = true;
    for (double xi : kXiSet) {
        for (double t : {0.5, 1.0, 2.0}) {
            const EvolutionParams params(xi, t);
            const cd center = kernel(params, 8).at(0);
            const cd limit = torus_coeff_limit_bessel(1, params, 1);
            const double resid = std::abs(center - limit);
            worst = std::max(worst, resid);
            pass = pass && resid <= tol;
        }
    }
    return report("kernel origin value equals the d = 1 coefficient limit", pass, worst, tol);
}

// 10. rotation identity I_x(it) = i^x J_x(t)
CheckResult check_rotation_identity(VerifyLevel) {
    const double tol = 1e-11;
    double worst = 0.0;
    bool pass = true;
    const cd i_unit(0.0, 1.0);
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
        for (int x = -20; x <= 20; ++x) {
            // i^x with the sign of x folded into the exponent mod 4
            cd ipow(1.0, 0.0);
            for (int k = 0; k < ((x % 4) + 4) % 4; ++k) ipow *= i_unit;
            const double resid = std::abs(bessel_i(x, i_unit * t) - ipow * bessel_j(x, cd(t, 0.0)));
            worst = std::max(worst, resid);
            pass = pass && resid <= tol;
        }
    }
    return report("modified and ordinary Bessel families agree under rotation", pass, worst, tol);
}

}  // namespace

std::vector<CheckResult> run_verification(VerifyLevel level) {
    std::vector<CheckResult> results;
    results.push_back(check_determinant_vs_spectral(level));
    results.push_back(check_coefficient_triple(level));
    results.push_back(check_series_identity(level));
    results.push_back(check_bessel_limit(level));
    results.push_back(check_return_probabilities(level));
    results.push_back(check_endpoint_structure(level));
    results.push_back(check_lattice_conservation(level));
    results.push_back(check_pde_residual(level));
    results.push_back(check_kernel_coefficient_identity(level));
    results.push_back(check_rotation_identity(level));
    return results;
}

}  // namespace walkzeta
