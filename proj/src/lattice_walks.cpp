#include "walkzeta/lattice_walks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "walkzeta/compensated.hpp"
#include "walkzeta/special_fn.hpp"

namespace walkzeta {

namespace {

using cd = std::complex<double>;

constexpr double kQuantumPhase = std::numbers::pi / 2.0;
constexpr double kClassicalMassTol = 1e-12;
constexpr double kQuantumMassTol = 1e-10;
constexpr double kStateImagTol = 1e-12;
constexpr double kStateMassTol = 1e-10;

void check_time(double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("time t must be nonnegative, got " + std::to_string(t));
    if (t > kWalkTimeCap) {
        throw EnvelopeError("t = " + std::to_string(t) + " exceeds the lattice-walk envelope t <= " +
                            std::to_string(kWalkTimeCap));
    }
}

void check_site(long long x) {
    if (x > kWalkSiteCap || x < -kWalkSiteCap) {
        throw EnvelopeError("site |x| = " + std::to_string(std::abs(x)) +
                            " exceeds the envelope |x| <= " + std::to_string(kWalkSiteCap));
    }
}

// g_t(x) = e^{-w t} I_x(w t) for x in [-radius, radius], w = e^{i xi}
std::vector<cd> tabulate_kernel(double xi, double t, long long radius) {
    const cd wt = std::polar(1.0, xi) * t;
    const cd prefactor = std::exp(-wt);
    std::vector<cd> values(static_cast<std::size_t>(2 * radius + 1));
    for (long long x = 0; x <= radius; ++x) {
        const cd g = prefactor * bessel_i(static_cast<int>(x), wt);
        values[static_cast<std::size_t>(radius + x)] = g;
        values[static_cast<std::size_t>(radius - x)] = g;  // I_{-x} = I_x
    }
    return values;
}

// How far the tabulated window is from accounting for the whole line. At the
// endpoints this is the literal normalization deviation of the type
// invariant; in between, |g_t(x)| <= e^{t(1-cos xi)} e^{-t} I_x(t) entrywise
// (|I_x(z)| <= I_x(|z|)), so the classical tail scaled by that envelope
// bounds the missing |g|-mass.
double window_residual(double xi, double t, long long radius, const std::vector<cd>& values) {
    if (xi == 0.0) {
        NeumaierSum mass;
        for (const cd v : values) mass.add(v.real());
        return std::abs(1.0 - mass.value());
    }
    if (xi == kQuantumPhase) {
        NeumaierSum mass;
        for (const cd v : values) mass.add(std::norm(v));
        return std::abs(1.0 - mass.value());
    }
    NeumaierSum classical;
    const double decay = std::exp(-t);
    for (long long x = -radius; x <= radius; ++x) {
        classical.add(decay * bessel_i(static_cast<int>(std::abs(x)), cd(t, 0.0)).real());
    }
    return std::exp(t * (1.0 - std::cos(xi))) * std::abs(1.0 - classical.value());
}

}  // namespace

std::complex<double> LatticeState::at(long long x) const {
    if (x < first_site() || x > last_site()) return {0.0, 0.0};
    return values[static_cast<std::size_t>(x - offset)];
}

void LatticeState::validate() const {
    if (values.empty()) throw SizeError("lattice state must hold at least one site");
    for (std::size_t i = 0; i < values.size(); ++i) {
        const cd v = values[i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument("lattice state entry at site " +
                                        std::to_string(offset + static_cast<long long>(i)) +
                                        " is not finite");
        }
    }
    if (!probability) return;
    NeumaierSum mass;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const cd v = values[i];
        if (std::abs(v.imag()) > kStateImagTol || v.real() < -kStateImagTol) {
            throw std::invalid_argument("probability state entry at site " +
                                        std::to_string(offset + static_cast<long long>(i)) +
                                        " is not a nonnegative real");
        }
        mass.add(v.real());
    }
    if (std::abs(mass.value() - 1.0) > kStateMassTol) {
        throw std::invalid_argument("probability state mass deviates from 1 by " +
                                    std::to_string(std::abs(mass.value() - 1.0)));
    }
}

std::complex<double> Kernel::at(long long x) const {
    if (x < -radius || x > radius) return {0.0, 0.0};
    return values[static_cast<std::size_t>(radius + x)];
}

LatticeState discrete_laplacian(const LatticeState& f) {
    f.validate();
    LatticeState out;
    out.offset = f.offset - 1;
    out.values.resize(f.values.size() + 2);
    out.probability = false;
    for (long long x = out.first_site(); x <= out.last_site(); ++x) {
        out.values[static_cast<std::size_t>(x - out.offset)] =
            f.at(x - 1) + f.at(x + 1) - 2.0 * f.at(x);
    }
    return out;
}

Kernel kernel(const EvolutionParams& params, long long radius) {
    if (radius < 1 || radius > kKernelRadiusCap) {
        throw SizeError("kernel radius must lie in [1, " + std::to_string(kKernelRadiusCap) + "]");
    }
    check_time(params.t);
    if (params.t == 0.0) {
        // exact delta on the requested window
        std::vector<cd> values(static_cast<std::size_t>(2 * radius + 1), cd(0.0, 0.0));
        values[static_cast<std::size_t>(radius)] = cd(1.0, 0.0);
        return Kernel{params, radius, std::move(values)};
    }

    const double target = (params.xi == kQuantumPhase) ? kQuantumMassTol : kClassicalMassTol;
    long long r = std::min(kKernelRadiusCap,
                           std::max(radius, static_cast<long long>(std::ceil(params.t)) + 8));
    while (true) {
        std::vector<cd> values = tabulate_kernel(params.xi, params.t, r);
        const double residual = window_residual(params.xi, params.t, r, values);
        if (residual <= target) return Kernel{params, r, std::move(values)};
        if (r >= kKernelRadiusCap) {
            throw TruncationError("kernel window cap " + std::to_string(kKernelRadiusCap) +
                                  " reached with normalization residual " + std::to_string(residual) +
                                  " above the target " + std::to_string(target));
        }
        r = std::min(kKernelRadiusCap, 2 * r);
    }
}

LatticeState evolve(const LatticeState& f, const EvolutionParams& params, long long radius) {
    f.validate();
    if (params.t == 0.0) return f;
    const Kernel g = kernel(params, radius);

    LatticeState out;
    out.offset = f.offset - g.radius;
    out.values.resize(f.values.size() + static_cast<std::size_t>(2 * g.radius));
    // (g * f)(x) = sum_y g(y) f(x - y); the kernel is even, so this is also
    // the expectation form sum_y g(y) f(x + y)
    for (long long x = out.first_site(); x <= out.last_site(); ++x) {
        const long long y_lo = std::max(-g.radius, x - f.last_site());
        const long long y_hi = std::min(g.radius, x - f.first_site());
        ComplexNeumaierSum acc;
        for (long long y = y_lo; y <= y_hi; ++y) acc.add(g.at(y) * f.at(x - y));
        out.values[static_cast<std::size_t>(x - out.offset)] = acc.value();
    }
    out.probability = f.probability && params.xi == 0.0;
    if (out.probability) out.validate();
    return out;
}

double ctrw_pmf(double t, long long x) {
    check_time(t);
    check_site(x);
    if (t == 0.0) return x == 0 ? 1.0 : 0.0;
    return std::exp(-t) * bessel_i(static_cast<int>(std::abs(x)), cd(t, 0.0)).real();
}

double ctqw_pmf(double t, long long x) {
    check_time(t);
    check_site(x);
    if (t == 0.0) return x == 0 ? 1.0 : 0.0;
    const double j = bessel_j(static_cast<int>(std::abs(x)), cd(t, 0.0)).real();
    return j * j;
}

double pde_residual(double xi, double t, double h, long long radius) {
    if (radius < 1) throw SizeError("residual window radius must be at least 1");
    if (!(h > 0.0) || !(h < t)) {
        throw std::invalid_argument("central difference step needs 0 < h < t");
    }
    if (t + h > kWalkTimeCap) {
        throw EnvelopeError("t + h exceeds the lattice-walk envelope t <= " +
                            std::to_string(kWalkTimeCap));
    }
    // validate xi through the params type
    const EvolutionParams params(xi, t);
    const cd w = std::polar(1.0, xi);

    const std::vector<cd> minus = tabulate_kernel(xi, t - h, radius);
    const std::vector<cd> center = tabulate_kernel(xi, t, radius);
    const std::vector<cd> plus = tabulate_kernel(xi, t + h, radius);

    double worst = 0.0;
    for (long long x = -(radius - 1); x <= radius - 1; ++x) {
        const std::size_t i = static_cast<std::size_t>(radius + x);
        const cd dt = (plus[i] - minus[i]) / (2.0 * h);
        const cd lap = center[i - 1] + center[i + 1] - 2.0 * center[i];
        worst = std::max(worst, std::abs(dt - w * 0.5 * lap));
    }
    return worst;
}

}  // namespace walkzeta
