#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qes/numerics.hpp"

namespace qes {

namespace {

// B_{2k} / (2k (2k - 1)), k = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,       -1.0 / 360.0,          1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,     -691.0 / 360360.0,     1.0 / 156.0,  -3617.0 / 122400.0,
};

constexpr double kStirlingThreshold = 15.0;

Complex stirling(Complex w) {
    const Complex inv = 1.0 / w;
    const Complex inv2 = inv * inv;
    Complex series{};
    Complex p = inv;
    for (const double b : kStirling) {
        series += b * p;
        p *= inv2;
    }
    return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace

Complex log_gamma(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorCode::InvalidParameter, "log_gamma of a non-finite argument");
    }
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        std::ostringstream os;
        os << "Gamma has a pole at " << z.real();
        throw Error(ErrorCode::PoleOfGamma, os.str());
    }
    // log Gamma(z) = log Gamma(z + n) - sum_k log(z + k). With principal logs
    // every term is analytic off the negative real axis, so the sum is the
    // principal branch of log Gamma.
    Complex shift_sum{};
    Complex w = z;
    while (w.real() < kStirlingThreshold) {
        shift_sum += std::log(w);
        w += 1.0;
    }
    return stirling(w) - shift_sum;
}

Complex q_pochhammer_inf(Complex a, double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw Error(ErrorCode::DivergentProduct, "q-Pochhammer base must lie in (0, 1)");
    }
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw Error(ErrorCode::DivergentProduct, "q-Pochhammer argument is not finite");
    }
    Complex prod = 1.0;
    Complex term = a;
    while (std::abs(term) >= 1e-17) {
        prod *= 1.0 - term;
        term *= q;
    }
    return prod;
}

}  // namespace qes
