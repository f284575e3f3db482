#include "ncrw/slope.hpp"

#include <cmath>

#include "ncrw/quadrature.hpp"

namespace ncrw {

void DensityProfile::validate() const {
    auto chk = [](double rho) {
        if (!(rho >= 0.0 && rho <= 1.0))
            throw domain_error("DensityProfile: densities must lie in [0,1]");
    };
    chk(left_tail_rho);
    chk(right_tail_rho);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (!(pieces[i].v_lo < pieces[i].v_hi))
            throw domain_error("DensityProfile: piece must have v_lo < v_hi");
        chk(pieces[i].rho);
        if (i > 0 && pieces[i - 1].v_hi > pieces[i].v_lo)
            throw domain_error("DensityProfile: pieces must be ordered and disjoint");
    }
    if (pieces.empty() && left_tail_rho != right_tail_rho)
        throw domain_error("DensityProfile: tails meeting at 0 must have equal density");
}

namespace {

// int over (a,b) of 1_{|v|>R}/v dv, finite a<b, R>0.
double reg_integral(double a, double b, double R) {
    auto seg = [](double lo, double hi) {  // same-sign interval, 0 not inside
        if (hi <= lo) return 0.0;
        return std::log(std::abs(hi)) - std::log(std::abs(lo));
    };
    double s = 0.0;
    // negative part: (a,b) cap (-inf,-R)
    s += seg(std::min(a, -R), std::min(b, -R));
    // positive part: (a,b) cap (R, inf)
    s += seg(std::max(a, R), std::max(b, R));
    return s;
}

// Density of the profile at a point v (tail-aware); interval gaps have rho 0.
double density_at(const DensityProfile& p, double v) {
    if (p.pieces.empty()) return p.left_tail_rho;
    if (v < p.pieces.front().v_lo) return p.left_tail_rho;
    if (v > p.pieces.back().v_hi) return p.right_tail_rho;
    for (const auto& pc : p.pieces)
        if (v >= pc.v_lo && v <= pc.v_hi) return pc.rho;
    return 0.0;
}

// int over (lo,hi) of mu_loc(dv)/v with the profile's piecewise density;
// requires 0 < lo < hi or lo < hi < 0 handled via |.|; both signs combined by
// the caller.  Interval endpoints may cross piece boundaries.
double mu_over_v(const DensityProfile& p, double lo, double hi) {
    // integrate rho(v)/v on (lo,hi), 0 not inside
    double s = 0.0;
    // walk breakpoints
    std::vector<double> brk = {lo, hi};
    for (const auto& pc : p.pieces) {
        if (pc.v_lo > lo && pc.v_lo < hi) brk.push_back(pc.v_lo);
        if (pc.v_hi > lo && pc.v_hi < hi) brk.push_back(pc.v_hi);
    }
    std::sort(brk.begin(), brk.end());
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
        const double m = 0.5 * (brk[i] + brk[i + 1]);
        s += density_at(p, m) * (std::log(std::abs(brk[i + 1])) - std::log(std::abs(brk[i])));
    }
    return s;
}

}  // namespace

double drift_at(const DensityProfile& profile, double R) {
    profile.validate();
    if (!(R > 0)) throw domain_error("drift_at: R must be > 0");
    const double ts = profile.tail_start();
    double d = profile.drift;
    if (R < ts) {
        // inward: d(R) = d(ts) + int_{R<|v|<ts} mu/v
        d += mu_over_v(profile, R, ts) + mu_over_v(profile, -ts, -R);
    } else if (R > ts) {
        // outward: only the tails contribute, and they enter with opposite signs
        const double imbalance = profile.right_tail_rho - profile.left_tail_rho;
        if (imbalance != 0.0) d -= imbalance * (std::log(R) - std::log(ts));
    }
    return d;
}

cplx limit_action_prime(const DensityProfile& profile, double beta, double R, cplx z) {
    profile.validate();
    if (!(beta > 0 && beta < 1)) throw domain_error("limit_action_prime: beta in (0,1)");
    if (!(R > 0)) throw domain_error("limit_action_prime: R must be > 0");
    if (!(z.imag() > 0)) throw domain_error("limit_action_prime: Im z must be > 0");

    cplx s = 0.0;
    // tails
    const double mL = profile.pieces.empty() ? 0.0 : profile.pieces.front().v_lo;
    const double mR = profile.pieces.empty() ? 0.0 : profile.pieces.back().v_hi;
    {
        // left tail (-inf, mL):  rho * (sL - log(z - mL)),
        // sL = log(-mL) if mL <= -R;  log R if |mL| < R;  log(mL) if mL >= R.
        const double b = mL;
        double sL;
        if (b <= -R)
            sL = std::log(-b);
        else if (b < R)
            sL = std::log(R);
        else
            sL = std::log(b);
        s += profile.left_tail_rho * (sL - std::log(z - b));
    }
    {
        // right tail (mR, inf):  rho * (log(z - mR) - sR - i pi)
        const double a = mR;
        double sR;
        if (a >= R)
            sR = std::log(a);
        else if (a > -R)
            sR = std::log(R);
        else
            sR = std::log(-a);
        s += profile.right_tail_rho * (std::log(z - a) - sR - cplx(0.0, kPi));
    }
    for (const auto& pc : profile.pieces) {
        s += pc.rho * (std::log(z - pc.v_lo) - std::log(z - pc.v_hi) +
                       reg_integral(pc.v_lo, pc.v_hi, R));
    }

    s -= drift_at(profile, R);
    s += std::log(z + 1.0) - std::log(z) + cplx(0.0, kPi);
    s -= std::log(1.0 / beta - 1.0);
    return s;
}

cplx limit_action_second(const DensityProfile& profile, cplx z) {
    profile.validate();
    cplx s = 0.0;
    const double mL = profile.pieces.empty() ? 0.0 : profile.pieces.front().v_lo;
    const double mR = profile.pieces.empty() ? 0.0 : profile.pieces.back().v_hi;
    s += profile.left_tail_rho * (-1.0 / (z - mL));
    s += profile.right_tail_rho * (1.0 / (z - mR));
    for (const auto& pc : profile.pieces)
        s += pc.rho * (1.0 / (z - pc.v_lo) - 1.0 / (z - pc.v_hi));
    s += 1.0 / (z + 1.0) - 1.0 / z;
    return s;
}

ComplexSlope solve_limit_slope(const DensityProfile& profile, double beta) {
    profile.validate();
    const double R = std::max(1.0, 2.0 * profile.tail_start());

    auto f = [&](cplx z) { return limit_action_prime(profile, beta, R, z); };
    auto fp = [&](cplx z) { return limit_action_second(profile, z); };

    // Newton from a grid of starts in H (z-plane).
    cplx root;
    bool found = false;
    for (double y : {0.5, 0.1, 1.0, 3.0, 10.0, 0.02}) {
        for (double x = -12.0; x <= 12.0 && !found; x += 0.5) {
            cplx z(x, y);
            for (int it = 0; it < 100; ++it) {
                if (z.imag() <= 1e-12) break;
                cplx step = f(z) / fp(z);
                if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
                if (std::abs(step) > 1.0) step /= std::abs(step);
                z -= step;
                if (std::abs(step) < 1e-14) break;
            }
            if (z.imag() > 0.0 && std::abs(f(z)) < 1e-10) {
                root = z;
                found = true;
            }
        }
        if (found) break;
    }
    if (!found) throw convergence_error("solve_limit_slope: no root found (degenerate profile?)");

    // Certify uniqueness on a large half-plane rectangle.
    const int count = zero_count_rectangle(f, -60.0, 60.0, 1e-3, 60.0);
    if (count != 1)
        throw convergence_error("solve_limit_slope: argument-principle count is " +
                                std::to_string(count) + ", expected 1");

    ComplexSlope out{root / (1.0 + root)};
    out.validate();
    return out;
}

LebesgueSlope slope_lebesgue(double beta, double d, double q) {
    if (!(beta > 0 && beta < 1)) throw domain_error("slope_lebesgue: beta in (0,1)");
    if (!(q > 0 && q < 1)) throw domain_error("slope_lebesgue: q in (0,1)");
    if (!std::isfinite(d)) throw domain_error("slope_lebesgue: d must be finite");
    LebesgueSlope out;
    out.slope.u = beta * std::exp(-d) / (1.0 - beta) * std::polar(1.0, kPi * (1.0 - q));
    out.slope.validate();
    out.beta_eff = 1.0 / (1.0 + std::exp(d) * (1.0 / beta - 1.0));
    return out;
}

ComplexSlope slope_staircase(double beta, double h) {
    if (!(beta > 0 && beta < 1)) throw domain_error("slope_staircase: beta in (0,1)");
    if (!(h > 0)) throw domain_error("slope_staircase: h must be > 0");

    const cplx coef(0.0, 1.0 - 1.0 / beta);  // i * (1 - 1/beta)
    auto g = [&](cplx u) {
        const cplx w = 1.0 - 3.0 * h * (1.0 - u) / u;
        return std::pow(w, 1.0 / 6.0) - coef * u;
    };

    // Continuation in h from the h->0 limit u = i beta/(1-beta).
    cplx u = cplx(0.0, 1.0) * beta / (1.0 - beta);
    for (double hh = std::min(0.05, h);; hh = std::min(h, hh * 1.6)) {
        const double h_save = hh;
        auto gh = [&](cplx v) {
            const cplx w = 1.0 - 3.0 * h_save * (1.0 - v) / v;
            return std::pow(w, 1.0 / 6.0) - coef * v;
        };
        auto ghp = [&](cplx v) {
            const cplx w = 1.0 - 3.0 * h_save * (1.0 - v) / v;
            return std::pow(w, 1.0 / 6.0 - 1.0) * (3.0 * h_save / (v * v)) / 6.0 - coef;
        };
        for (int it = 0; it < 100; ++it) {
            const cplx step = gh(u) / ghp(u);
            u -= step;
            if (std::abs(step) < 1e-15) break;
        }
        if (h_save == h) break;
    }
    if (!(u.imag() > 0.0) || std::abs(g(u)) >= 1e-10)
        throw convergence_error("slope_staircase: Newton failed to reach residual 1e-10");
    ComplexSlope out{u};
    out.validate();
    return out;
}

}  // namespace ncrw
