#pragma once

#include <string>

#include "ncrw/types.hpp"

namespace ncrw {

// Trapezoid of height L with N noncolliding paths; the L cut positions
// y_1 < ... < y_L lie in {0, -1, ..., -N-L+1}.
struct TilingSpec {
    long long N = 1;
    long long L = 1;
    std::vector<long long> y;

    void validate() const;
    // Path starting points: {0,-1,...,-N-L+1} \ y.
    ParticleConfig path_starts() const;
};

// Exact number of lozenge tilings, prod_{i<j} (y_j - y_i)/(j - i), as a
// decimal string (exact integer arithmetic).
std::string tiling_count(const TilingSpec& spec);

// Same count as a double (exact while it fits).
double tiling_count_double(const TilingSpec& spec);

// Correlation kernel of the lozenge process; both contour integrals are
// finite residue sums.  Valid for 0 <= t1 <= L-1, 1 <= t2 <= L-1.
double k_tilings(const TilingSpec& spec, const KernelQuery& q);

// Path kernel via the particle-hole involution 1_{eq} - k_tilings.
double k_paths(const TilingSpec& spec, const KernelQuery& q);

// K^paths of the shifted trapezoid evaluated at the shifted query; converges
// to k_bernoulli as L -> infinity.
double k_paths_scaled(const ParticleConfig& a, double beta, long long L,
                      const KernelQuery& q);

}  // namespace ncrw
