#include "walkzeta/zeta_engine.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "walkzeta/compensated.hpp"
#include "walkzeta/special_fn.hpp"

namespace walkzeta {

namespace {

using cd = std::complex<double>;

void require_inside_disk(cd u, double rho) {
    // the negated comparison also rejects NaN inputs
    if (!(std::abs(u) * rho < 1.0)) throw RadiusError(std::abs(u), rho);
}

void require_positive_order(unsigned r) {
    if (r < 1) throw SizeError("coefficient order r must be at least 1");
}

ZetaValue make_zeta(cd log_zeta_inverse) { return {log_zeta_inverse, std::exp(log_zeta_inverse)}; }

// Walks the momentum grid {0..N-1}^d in row-major order (last axis fastest)
// and hands each eigenvalue (1/d) sum_j cos(2 pi k_j / N) to fn. Cosines come
// from one shared table; the d-term sum is rebuilt per point so no rounding
// drift is carried around the odometer.
template <typename F>
void for_each_torus_lambda(const TorusSpec& spec, F&& fn) {
    const auto side = static_cast<std::size_t>(spec.side);
    std::vector<double> cos_table(side);
    for (std::size_t k = 0; k < side; ++k) {
        cos_table[k] =
            std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(side));
    }
    const unsigned long long count = spec.vertex_count();
    std::vector<std::size_t> digit(spec.d, 0);
    for (unsigned long long flat = 0; flat < count; ++flat) {
        double s = 0.0;
        for (int j = 0; j < spec.d; ++j) s += cos_table[digit[j]];
        fn(s / spec.d);
        for (int j = spec.d - 1; j >= 0; --j) {
            if (++digit[j] < side) break;
            digit[j] = 0;
        }
    }
}

// exact binom(r, r/2) / 2^r for even r <= 60; the stepwise products
// C(r,k+1) = C(r,k)(r-k)/(k+1) stay inside 64 bits up to r = 60
double axis_return_probability(unsigned r) {
    if (r % 2 == 1) return 0.0;
    if (r <= 60) {
        unsigned long long binom = 1;
        for (unsigned k = 0; k < r / 2; ++k) binom = binom * (r - k) / (k + 1);
        return std::ldexp(static_cast<double>(binom), -static_cast<int>(r));
    }
    // log-space fallback above the exact-integer range
    const double lg =
        std::lgamma(r + 1.0) - 2.0 * std::lgamma(r / 2 + 1.0) - r * std::numbers::ln2;
    return std::exp(lg);
}

}  // namespace

ZetaValue ctm_zeta_inverse_spectral(const Spectrum& spectrum, const EvolutionParams& params, cd u) {
    require_inside_disk(u, max_abs_eigenvalue_bound(spectrum, params));
    const cd w = params.complex_time();
    ComplexNeumaierSum acc;
    for (const cd lambda : spectrum.values()) {
        acc.add(std::log(1.0 - u * std::exp(w * (lambda - 1.0))));
    }
    return make_zeta(acc.value() / static_cast<double>(spectrum.size()));
}

std::complex<double> ctm_zeta_inverse_determinant(const TransitionMatrix& p,
                                                  const EvolutionParams& params, cd u) {
    // rho = 1 for every valid transition matrix: unit column sums put
    // lambda = 1 in the spectrum, and |lambda| <= 1 caps Re lambda at 1, so
    // the largest evolution-eigenvalue modulus is exp(0)
    require_inside_disk(u, 1.0);
    const ComplexMatrix m = evolution_matrix(p, params);
    const std::size_t n = m.size();
    ComplexMatrix b(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) b(i, j) = (i == j ? 1.0 : 0.0) - u * m(i, j);
    }
    return lu_determinant(b);
}

std::complex<double> ctm_coeff(const Spectrum& spectrum, const EvolutionParams& params, unsigned r) {
    require_positive_order(r);
    const cd wr = params.complex_time() * static_cast<double>(r);
    ComplexNeumaierSum acc;
    for (const cd lambda : spectrum.values()) acc.add(std::exp(wr * (lambda - 1.0)));
    return acc.value() / static_cast<double>(spectrum.size());
}

ZetaValue torus_zeta_inverse_finite(const TorusSpec& spec, const EvolutionParams& params, cd u) {
    // k = 0 contributes lambda = 1, so rho = 1 on every torus
    require_inside_disk(u, 1.0);
    const cd w = params.complex_time();
    ComplexNeumaierSum acc;
    for_each_torus_lambda(spec, [&](double lambda) {
        acc.add(std::log(1.0 - u * std::exp(w * (lambda - 1.0))));
    });
    return make_zeta(acc.value() / static_cast<double>(spec.vertex_count()));
}

std::complex<double> torus_coeff_finite(const TorusSpec& spec, const EvolutionParams& params,
                                        unsigned r) {
    require_positive_order(r);
    const cd wr = params.complex_time() * static_cast<double>(r);
    ComplexNeumaierSum acc;
    for_each_torus_lambda(spec, [&](double lambda) { acc.add(std::exp(wr * (lambda - 1.0))); });
    return acc.value() / static_cast<double>(spec.vertex_count());
}

ZetaValue torus_zeta_inverse_limit(int d, const EvolutionParams& params, cd u,
                                   unsigned long long grid) {
    if (grid < kLimitGridMin) {
        throw GridError("limit evaluation needs a grid of at least " +
                        std::to_string(kLimitGridMin) + " points per axis");
    }
    return torus_zeta_inverse_finite(TorusSpec(d, static_cast<long long>(grid)), params, u);
}

std::complex<double> torus_coeff_limit_bessel(int d, const EvolutionParams& params, unsigned r) {
    require_positive_order(r);
    if (d < 1) throw SizeError("dimension must be at least 1");
    const double rt = static_cast<double>(r) * params.t;
    if (rt > kBesselLimitCap * d) {
        throw EnvelopeError("r t = " + std::to_string(rt) + " exceeds the Bessel envelope " +
                            std::to_string(kBesselLimitCap * d) + " for d = " + std::to_string(d));
    }
    const cd arg = params.complex_time() * static_cast<double>(r);
    const cd i0 = bessel_i(0, arg / static_cast<double>(d));
    cd power(1.0, 0.0);
    for (int j = 0; j < d; ++j) power *= i0;
    return std::exp(-arg) * power;
}

ZetaValue dtm_zeta_inverse(const Spectrum& spectrum, cd u) {
    require_inside_disk(u, spectrum.max_modulus());
    ComplexNeumaierSum acc;
    for (const cd lambda : spectrum.values()) acc.add(std::log(1.0 - u * lambda));
    return make_zeta(acc.value() / static_cast<double>(spectrum.size()));
}

std::complex<double> dtm_coeff(const Spectrum& spectrum, unsigned r) {
    require_positive_order(r);
    ComplexNeumaierSum acc;
    for (const cd lambda : spectrum.values()) {
        cd p(1.0, 0.0);
        for (unsigned i = 0; i < r; ++i) p *= lambda;
        acc.add(p);
    }
    return acc.value() / static_cast<double>(spectrum.size());
}

double dtm_coeff_torus(const TorusSpec& spec, unsigned r) {
    require_positive_order(r);
    NeumaierSum acc;
    for_each_torus_lambda(spec, [&](double lambda) {
        double p = 1.0;
        for (unsigned i = 0; i < r; ++i) p *= lambda;
        acc.add(p);
    });
    return acc.value() / static_cast<double>(spec.vertex_count());
}

double dtrw_return_probability(int d, unsigned r, unsigned long long grid) {
    if (d < 1) throw SizeError("dimension must be at least 1");
    require_positive_order(r);
    if (d == 1) return axis_return_probability(r);
    if (d == 2) {
        // the two axes alternate independently: the square of the axis walk
        const double p = axis_return_probability(r);
        return p * p;
    }
    // d >= 3: no closed form; periodic-trapezoid quadrature of the momentum
    // integral, exact once the grid outruns the integrand bandwidth r
    if (grid <= r) {
        throw GridError("quadrature grid " + std::to_string(grid) +
                        " must exceed the power r = " + std::to_string(r) +
                        " to resolve the integrand");
    }
    return dtm_coeff_torus(TorusSpec(d, static_cast<long long>(grid)), r);
}

ReturnProbabilityEstimate dtrw_return_probability_estimate(int d, unsigned r,
                                                           unsigned long long grid) {
    const double value = dtrw_return_probability(d, r, grid);
    if (d <= 2) return {value, 0.0};
    // two-grid convergence estimate: compare against the halved (or, when
    // halving would alias, doubled) grid
    const unsigned long long other = (grid / 2 > r) ? grid / 2 : grid * 2;
    const double check = dtrw_return_probability(d, r, other);
    return {value, std::abs(value - check)};
}

}  // namespace walkzeta
