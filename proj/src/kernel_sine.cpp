#include "ncrw/kernel_sine.hpp"

#include <cmath>

#include "ncrw/quadrature.hpp"
#include "ncrw/special.hpp"

namespace ncrw {

cplx extended_sine(cplx u, const SineQuery& q, double abs_tol) {
    if (!(u.imag() > 0.0)) throw domain_error("extended_sine: Im u must be > 0");
    if (u.imag() < 1e-12)
        throw domain_error("extended_sine: u too close to the real axis for a crossing path");

    const long long dt = q.t - q.s;
    const long long dx = q.x - q.y;
    // Path conj(u) -> c -> u with c = 1/2 (t > s) or c = -1 (t <= s).
    const cplx c = (dt > 0) ? cplx(0.5, 0.0) : cplx(-1.0, 0.0);

    auto integrand = [&](cplx z) { return ipow(1.0 - z, dt) * ipow(z, -dx - 1); };

    QuadratureSettings st;
    st.abs_tol = abs_tol;
    const cplx ubar = std::conj(u);
    const cplx integral =
        segment_integral(integrand, ubar, c, st) + segment_integral(integrand, c, u, st);
    return -integral / cplx(0.0, 2.0 * kPi);
}

double discrete_sine(double phi, long long x, long long y) {
    if (!(phi > 0.0 && phi < kPi)) throw domain_error("discrete_sine: phi must be in (0,pi)");
    if (x == y) return phi / kPi;
    const double d = static_cast<double>(x - y);
    return std::sin(phi * d) / (kPi * d);
}

SineKernelFn complement_kernel(SineKernelFn k) {
    return [k = std::move(k)](const SineQuery& q) -> cplx {
        const double delta = (q.x == q.y && q.t == q.s) ? 1.0 : 0.0;
        return delta - k(q);
    };
}

}  // namespace ncrw
