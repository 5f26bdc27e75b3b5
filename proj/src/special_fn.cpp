#include "walkzeta/special_fn.hpp"

#include <array>
#include <cmath>
#include <string>

#include "walkzeta/errors.hpp"

namespace walkzeta {

namespace {

using cd = std::complex<double>;

constexpr double kTermStop = 1e-17;
constexpr int kTermCap = 500;

// 0! .. 20! are exactly representable in double (the odd part of 20! still
// fits in 53 bits); beyond that the leading term is assembled in log space.
constexpr std::array<double, 21> kFactorial = {
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
};

// (z/2)^a / a! — the k = 0 term of the series.
cd leading_term(int a, cd w) {
    if (a <= 20) {
        cd p(1.0, 0.0);
        for (int i = 0; i < a; ++i) p *= w;
        return p / kFactorial[static_cast<std::size_t>(a)];
    }
    const double logmag = a * std::log(std::abs(w)) - std::lgamma(a + 1.0);
    const double phase = a * std::arg(w);
    return std::exp(logmag) * cd(std::cos(phase), std::sin(phase));
}

// sum_k sign^k (z/2)^(2k+a) / (k! (a+k)!) for a >= 0, via the term ratio
// term_{k+1} / term_k = sign (z/2)^2 / ((k+1)(a+k+1)).
cd series(int a, cd z, double sign) {
    if (z == cd(0.0, 0.0)) return {a == 0 ? 1.0 : 0.0, 0.0};
    const cd w = 0.5 * z;
    const cd ratio_num = sign * w * w;
    const double zmag = std::abs(z);
    cd term = leading_term(a, w);
    cd sum = term;
    for (int k = 1; k <= kTermCap; ++k) {
        term *= ratio_num / (static_cast<double>(k) * (a + k));
        sum += term;
        if (std::abs(term) <= kTermStop * std::abs(sum) && k >= zmag) break;
    }
    return sum;
}

int checked_order(int order) {
    if (order > kBesselOrderCap || order < -kBesselOrderCap) {
        throw EnvelopeError("Bessel order " + std::to_string(order) + " exceeds the cap |order| <= " +
                            std::to_string(kBesselOrderCap));
    }
    return order < 0 ? -order : order;
}

void check_argument(cd z) {
    // the negated comparison also rejects NaN components
    if (!(std::abs(z) <= kBesselArgCap)) {
        throw EnvelopeError("Bessel argument with |z| = " + std::to_string(std::abs(z)) +
                            " is outside the envelope |z| <= " + std::to_string(kBesselArgCap));
    }
}

}  // namespace

std::complex<double> bessel_i(int order, std::complex<double> z) {
    check_argument(z);
    return series(checked_order(order), z, +1.0);
}

std::complex<double> bessel_j(int order, std::complex<double> z) {
    check_argument(z);
    const int a = checked_order(order);
    const cd v = series(a, z, -1.0);
    return (order < 0 && a % 2 == 1) ? -v : v;
}

}  // namespace walkzeta
