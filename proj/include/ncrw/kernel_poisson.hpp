#pragma once

#include "ncrw/types.hpp"

namespace ncrw {

struct RealTimeQuery {
    double tau1 = 1.0;
    long long x1 = 0;
    double tau2 = 1.0;
    long long x2 = 0;
};

// Correlation kernel of the noncolliding Poisson random walk started from a.
// w-integral as a finite residue sum over {...,x1-1,x1} cap a; z-integral over
// the vertical line Re z = x2 - 1/2 with Gamma(x2-z) decay.
double k_poisson(const ParticleConfig& a, const RealTimeQuery& q,
                 const QuadratureSettings& settings = {});

}  // namespace ncrw
