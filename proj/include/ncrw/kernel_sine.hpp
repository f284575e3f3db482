#pragma once

#include <functional>

#include "ncrw/types.hpp"

namespace ncrw {

struct SineQuery {
    long long t = 0;
    long long x = 0;
    long long s = 0;
    long long y = 0;
};

// Extended discrete sine kernel (incomplete beta kernel)
//   K_u(t,x;s,y) = -(1/2 pi i) int_{conj(u)}^{u} (1-z)^{t-s} z^{-(x-y)-1} dz,
// path crossing (0,1) for t > s and (-inf,0) for t <= s.  The integrand is a
// rational function of z (integer exponents), so the only path data that
// matters is the crossing interval.
cplx extended_sine(cplx u, const SineQuery& q, double abs_tol = 1e-12);

// Discrete sine kernel, K(x,x) = phi/pi.
double discrete_sine(double phi, long long x, long long y);

// Particle-hole involution: K -> 1_{x=y} 1_{t=s} - K.
using SineKernelFn = std::function<cplx(const SineQuery&)>;
SineKernelFn complement_kernel(SineKernelFn k);

}  // namespace ncrw
