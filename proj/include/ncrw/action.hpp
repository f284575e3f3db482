#pragma once

#include <optional>

#include "ncrw/types.hpp"

namespace ncrw {

struct DensityProfile;  // slope.hpp

// Finite-N noncolliding Bernoulli walk: initial configuration a, jump
// probability beta, observation time T.
struct WalkModel {
    ParticleConfig a;
    double beta = 0.5;
    long long T = 1;

    void validate() const {
        a.validate();
        if (!(beta > 0.0 && beta < 1.0)) throw domain_error("WalkModel: beta must be in (0,1)");
        if (T < 1) throw domain_error("WalkModel: T must be >= 1");
    }
};

struct CriticalPoint {
    cplx z_c;
    double residual = 0.0;  // |S'(z_c)|
    cplx s2;                // S''(z_c)
};

// S'(z) = sum_r 1/(Tz-a_r) + sum_{i=1}^{T-1} 1/(Tz+i) - pi cot(pi T z) - log(1/beta - 1).
// The principal-value lattice sum is realized exactly by the cotangent term;
// removable singularities are evaluated by the pole-cancelled form.
cplx s_prime(const WalkModel& model, cplx z);

// S''(z); matches finite differences of s_prime.
cplx s_second(const WalkModel& model, cplx z);

// The action S(z), holomorphic in the upper half plane with the log_H branches
// and the corrected sine-log branch.  z must satisfy Im z >= 0 and, when real,
// avoid the non-removable singular set.
cplx s_value(const WalkModel& model, cplx z);

// Im S(x) for real x off the singular set; piecewise constant in x.
double im_s_on_real_line(const WalkModel& model, double x);

// True iff T*x is within eps of a non-removable singularity of S.
bool near_singularity(const WalkModel& model, double x, double eps = 1e-9);

// Unique upper-half-plane root of S'(z) = 0.  Newton from (a) the caller's
// guess, (b) the limit-slope prediction when a profile is supplied, (c) a
// coarse grid over the search box; then an argument-principle zero count over
// the box certifies uniqueness.
struct CriticalSearchBox {
    double re_lo = -20.0, re_hi = 20.0;
    double im_lo = 0.02, im_hi = 20.0;
};
CriticalPoint find_critical_point(const WalkModel& model,
                                  std::optional<cplx> initial_guess = std::nullopt,
                                  const DensityProfile* profile = nullptr,
                                  const CriticalSearchBox& box = {});

// Level curves {Im S = Im S(z_c)} traced from the critical point by
// predictor-corrector continuation until they leave the box.  Curves are
// truncated at Im z = step near the real axis.  re_monotone_up[i] tells
// whether Re S increases along curve i.
struct LevelCurves {
    std::vector<std::vector<cplx>> curves;  // 4 polylines starting at z_c
    bool re_monotone_up[4] = {false, false, false, false};
};
LevelCurves level_curves(const WalkModel& model, const CriticalPoint& cp,
                         double re_lo, double re_hi, double im_hi, double step);

}  // namespace ncrw
