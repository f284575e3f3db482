#pragma once

#include "ncrw/types.hpp"

namespace ncrw {

// Complex slope u (Im u > 0) of the extended sine kernel, with the derived
// angle phi = pi - arg(u) and density q = phi/pi.
struct ComplexSlope {
    cplx u;
    double phi() const { return kPi - std::arg(u); }
    double q() const { return phi() / kPi; }
    double modulus() const { return std::abs(u); }

    void validate() const {
        if (!(u.imag() > 0.0)) throw domain_error("ComplexSlope: Im u must be > 0");
        const double qq = q();
        if (!(qq > 0.0 && qq < 1.0)) throw domain_error("ComplexSlope: q must be in (0,1)");
    }
};

// Piecewise-constant local density mu_loc plus the drift constant d.
// pieces are ordered, disjoint, with densities in [0,1]; left_tail_rho acts on
// (-inf, min v_lo), right_tail_rho on (max v_hi, +inf).  For a profile with no
// pieces the two tails meet at v = 0 (constant density requires them equal).
//
// drift stores d(R) for R beyond all pieces (the "tail" cutoff, where the
// paper's examples make d(R) constant); conversions to other cutoffs add the
// closed-form mu_loc integral.
struct DensityProfile {
    struct Piece {
        double v_lo, v_hi, rho;
    };
    std::vector<Piece> pieces;
    double left_tail_rho = 0.0;
    double right_tail_rho = 0.0;
    double drift = 0.0;

    static DensityProfile lebesgue(double q, double d = 0.0) {
        DensityProfile p;
        p.left_tail_rho = p.right_tail_rho = q;
        p.drift = d;
        return p;
    }

    double tail_start() const {
        if (pieces.empty()) return 0.0;
        return std::max({std::abs(pieces.front().v_lo), std::abs(pieces.back().v_hi)});
    }

    void validate() const;
};

// d(R) at an arbitrary cutoff R > 0 from the stored tail drift.
double drift_at(const DensityProfile& profile, double R);

// S*'(z) = int (1/(z-v) + 1_{|v|>R}/v) mu_loc(dv) - d(R)
//          + log(z+1) - log z + i pi - log(1/beta - 1),
// closed forms on every constant-density piece; independent of R.
cplx limit_action_prime(const DensityProfile& profile, double beta, double R, cplx z);

// d/dz of limit_action_prime (for Newton).
cplx limit_action_second(const DensityProfile& profile, cplx z);

// Unique upper-half-plane root u* of the slope equation for the given profile;
// residual < 1e-10, uniqueness certified by an argument-principle count.
ComplexSlope solve_limit_slope(const DensityProfile& profile, double beta);

// Lebesgue closed form u* = (beta e^{-d}/(1-beta)) e^{i pi (1-q)} and the
// effective parameter beta_eff = 1/(1 + e^d (1/beta - 1)).
struct LebesgueSlope {
    ComplexSlope slope;
    double beta_eff;
};
LebesgueSlope slope_lebesgue(double beta, double d, double q);

// Root of (1 - 3h(1-u)/u)^{1/6} = i u (1 - 1/beta) in the upper half plane
// (principal branch of the sixth root).
ComplexSlope slope_staircase(double beta, double h);

}  // namespace ncrw
