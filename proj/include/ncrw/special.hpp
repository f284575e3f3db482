#pragma once

#include "ncrw/types.hpp"

namespace ncrw {

// Principal log-gamma: exp(log_gamma_complex(z)) = Gamma(z), continuous on
// the cut plane C \ (-inf, 0], real on the positive real axis.
// Stirling series with upward recursion; reflection for Re z < 1/2.
cplx log_gamma_complex(cplx z);

// log(sin(pi z)) on the branch that is holomorphic in the upper half plane
// and real on (0,1).  Stable for large |Im z| (never forms sin directly).
// For Im z < 0 the conjugate branch is used, so the function is continuous
// on C \ Z away from the real axis only through (0,1)+2Z-type intervals;
// callers that exponentiate the result may ignore the branch entirely.
cplx log_sin_pi(cplx z);

// Integer power of a complex number by binary exponentiation (n may be < 0).
cplx ipow(cplx z, long long n);

// log of n! for n >= 0.
double log_factorial(long long n);

// Binomial coefficient as a double, C(n, k) for n >= 0, 0 <= k <= n.
double binomial(long long n, long long k);

}  // namespace ncrw
