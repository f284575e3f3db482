#include "ncrw/special.hpp"

#include <cmath>

namespace ncrw {

namespace {

// Stirling coefficients B_{2k} / (2k (2k-1)).
constexpr double kStirling[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2*pi)/2

// Stirling asymptotic series, valid for large |z| with Re z > 0.
cplx log_gamma_stirling(cplx z) {
    cplx s = (z - 0.5) * std::log(z) - z + kHalfLog2Pi;
    const cplx zi2 = 1.0 / (z * z);
    cplx zp = 1.0 / z;
    for (double c : kStirling) {
        s += c * zp;
        zp *= zi2;
    }
    return s;
}

}  // namespace

cplx log_gamma_complex(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw pole_error("log_gamma_complex: pole at nonpositive integer");

    if (z.real() < 0.5) {
        // Reflection.  log_sin_pi is the H-holomorphic branch, real on (0,1),
        // which is exactly what keeps the result continuous on the cut plane.
        return std::log(kPi) - log_sin_pi(z) - log_gamma_complex(1.0 - z);
    }

    // Upward recursion until Stirling is accurate.
    cplx shift = 0.0;
    while (std::abs(z) < 12.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    return log_gamma_stirling(z) + shift;
}

cplx log_sin_pi(cplx z) {
    if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}),  |e^{2 pi i z}| <= 1 for Im z >= 0.
    // log(i/2) = -log 2 + i pi/2 with principal branches throughout.
    const cplx ipz = cplx(0.0, kPi) * z;
    const cplx w = std::exp(2.0 * ipz);
    if (std::abs(1.0 - w) == 0.0)
        throw pole_error("log_sin_pi: zero of sin(pi z) at integer z");
    return cplx(-std::log(2.0), kPi / 2.0) - ipz + std::log(1.0 - w);
}

cplx ipow(cplx z, long long n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cplx r = 1.0, p = z;
    while (n > 0) {
        if (n & 1) r *= p;
        p *= p;
        n >>= 1;
    }
    return r;
}

double log_factorial(long long n) {
    if (n < 0) throw domain_error("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0.0;
    return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

}  // namespace ncrw
