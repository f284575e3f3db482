#pragma once

#include <functional>

#include "ncrw/types.hpp"

namespace ncrw {

// det[K(p_a, p_b)]_{a,b} over the given distinct space-time points.
// Empty list -> 1.  Throws domain_error on duplicate points.
double correlation_probability(const std::function<double(const KernelQuery&)>& kernel,
                               const std::vector<SpaceTimePoint>& points);

// Same, for a complex-valued kernel; the determinant is collapsed to real
// with the usual imaginary-leak bound.
double correlation_probability_complex(
    const std::function<cplx(const KernelQuery&)>& kernel,
    const std::vector<SpaceTimePoint>& points, double im_tol = 1e-8);

// Plain LU determinant of a dense complex matrix (row-major, n x n).
cplx det_complex(std::vector<cplx> m, std::size_t n);

}  // namespace ncrw
