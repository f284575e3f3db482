#include "ncrw/action.hpp"

#include <cmath>

#include "ncrw/quadrature.hpp"
#include "ncrw/slope.hpp"
#include "ncrw/special.hpp"

namespace ncrw {

namespace {

// pi*cot(pi*w) - 1/(w-k) for k = nearest integer, stable near w = k.
// Series: pi cot(pi d)= 1/d - pi^2 d/3 - pi^4 d^3/45 - 2 pi^6 d^5/945 - ...
cplx cot_minus_pole(cplx w, long long k) {
    const cplx d = w - static_cast<double>(k);
    if (std::abs(d) < 0.1) {
        const cplx d2 = d * d;
        const double p2 = kPi * kPi;
        return -d * p2 * (1.0 / 3.0 + d2 * p2 * (1.0 / 45.0 + d2 * p2 * (2.0 / 945.0)));
    }
    return kPi / std::tan(kPi * w) - 1.0 / d;
}

// pi^2/sin^2(pi w) - 1/(w-k)^2, stable near w = k.
// Series: pi^2 csc^2(pi d) = 1/d^2 + pi^2/3 + pi^4 d^2/15 + 2 pi^6 d^4/189 + ...
cplx csc2_minus_pole(cplx w, long long k) {
    const cplx d = w - static_cast<double>(k);
    if (std::abs(d) < 0.1) {
        const cplx d2 = d * d;
        const double p2 = kPi * kPi;
        return p2 * (1.0 / 3.0 + d2 * p2 * (1.0 / 15.0 + d2 * p2 * (2.0 / 189.0)));
    }
    const cplx s = std::sin(kPi * w);
    return kPi * kPi / (s * s) - 1.0 / (d * d);
}

// Multiplicity of the 1/(Tz - k) pole of S' at integer k:
//   +1 per particle at k, +1 if k in {-(T-1)..-1} (the i-sum), -1 from the
//   cotangent (all integers).  Zero means removable.
int pole_coefficient(const WalkModel& m, long long k) {
    int c = -1;
    if (m.a.contains(k)) c += 1;
    if (k <= -1 && k >= -(m.T - 1)) c += 1;
    return c;
}

constexpr double kPoleTol = 1e-12;

}  // namespace

bool near_singularity(const WalkModel& model, double x, double eps) {
    const double w = x * static_cast<double>(model.T);
    const long long k = std::llround(w);
    if (std::abs(w - static_cast<double>(k)) > eps) return false;
    return pole_coefficient(model, k) != 0;
}

cplx s_prime(const WalkModel& model, cplx z) {
    model.validate();
    const double T = static_cast<double>(model.T);
    const cplx w = T * z;
    const long long k0 = std::llround(w.real());
    const bool near_int = std::abs(w - static_cast<double>(k0)) < 0.1;

    cplx s = 0.0;
    // Particle sum, skipping a possible particle at k0 (folded into the pole term).
    for (long long ar : model.a) {
        if (near_int && ar == k0) continue;
        s += 1.0 / (w - static_cast<double>(ar));
    }
    // Lattice gap sum i = 1..T-1, skipping i = -k0 when folded.
    for (long long i = 1; i < model.T; ++i) {
        if (near_int && -i == k0) continue;
        s += 1.0 / (w + static_cast<double>(i));
    }
    if (near_int) {
        s -= cot_minus_pole(w, k0);
        const int c = pole_coefficient(model, k0);
        if (c != 0) {
            const cplx d = w - static_cast<double>(k0);
            if (std::abs(d) < kPoleTol)
                throw pole_error("s_prime: evaluation at a non-removable singularity");
            s += static_cast<double>(c) / d;
        }
    } else {
        s -= kPi / std::tan(kPi * w);
    }
    s -= std::log(1.0 / model.beta - 1.0);
    return s;
}

cplx s_second(const WalkModel& model, cplx z) {
    model.validate();
    const double T = static_cast<double>(model.T);
    const cplx w = T * z;
    const long long k0 = std::llround(w.real());
    const bool near_int = std::abs(w - static_cast<double>(k0)) < 0.1;

    cplx s = 0.0;
    for (long long ar : model.a) {
        if (near_int && ar == k0) continue;
        const cplx d = w - static_cast<double>(ar);
        s -= 1.0 / (d * d);
    }
    for (long long i = 1; i < model.T; ++i) {
        if (near_int && -i == k0) continue;
        const cplx d = w + static_cast<double>(i);
        s -= 1.0 / (d * d);
    }
    if (near_int) {
        s += csc2_minus_pole(w, k0);
        const int c = pole_coefficient(model, k0);
        if (c != 0) {
            const cplx d = w - static_cast<double>(k0);
            if (std::abs(d) < kPoleTol)
                throw pole_error("s_second: evaluation at a non-removable singularity");
            // particle/gap contributions are -1/d^2 each, cotangent gives +1/d^2
            s -= static_cast<double>(c) / (d * d);
        }
    } else {
        const cplx si = std::sin(kPi * w);
        s += kPi * kPi / (si * si);
    }
    return s * T;
}

cplx s_value(const WalkModel& model, cplx z) {
    model.validate();
    if (z.imag() < 0.0) throw domain_error("s_value: defined on the closed upper half plane");
    if (z.imag() == 0.0 && near_singularity(model, z.real()))
        throw pole_error("s_value: singular point on the real line");

    const double T = static_cast<double>(model.T);
    const cplx w = T * z;
    auto log_h = [](cplx v) {
        // branch with the cut along the negative imaginary axis
        return std::log(v * cplx(0.0, -1.0)) + cplx(0.0, kPi / 2.0);
    };

    cplx s = 0.0;
    for (long long ar : model.a) s += log_h(z - static_cast<double>(ar) / T);
    for (long long i = 1; i < model.T; ++i) s += log_h(z + static_cast<double>(i) / T);

    // log_H(sin(pi T z)) = canonical upper-half-plane log of sin shifted into
    // the arg range (-pi/2, 3*pi/2].
    cplx ls = log_sin_pi(w);
    const double target_lo = -kPi / 2.0;
    double im = ls.imag();
    const double shift = 2.0 * kPi * std::floor((im - target_lo) / (2.0 * kPi));
    ls -= cplx(0.0, shift);
    // arg now in (-pi/2, 3*pi/2]

    s -= ls;
    s += cplx(0.0, 2.0 * kPi) * std::floor(0.5 * w.real() + 0.5);
    s /= T;
    s -= z * std::log(1.0 / model.beta - 1.0);
    return s;
}

double im_s_on_real_line(const WalkModel& model, double x) {
    model.validate();
    if (near_singularity(model, x))
        throw pole_error("im_s_on_real_line: singular point");
    const double T = static_cast<double>(model.T);
    const double w = T * x;

    double im = 0.0;
    for (long long ar : model.a)
        if (x < static_cast<double>(ar) / T) im += kPi;
    for (long long i = 1; i < model.T; ++i)
        if (x < -static_cast<double>(i) / T) im += kPi;

    // Im log_H(sin(pi w)) for real w is pi*1_{sin<0}; near integers use the
    // sign of the nearest-zero factorization to avoid cancellation noise.
    const double sw = std::sin(kPi * w);
    if (sw == 0.0) throw pole_error("im_s_on_real_line: lattice zero of sin");
    if (sw < 0.0) im -= kPi;

    im += 2.0 * kPi * std::floor(0.5 * w + 0.5);
    return im / T;
}

namespace {

bool newton_to_root(const WalkModel& model, cplx z0, cplx& out) {
    cplx z = z0;
    for (int it = 0; it < 80; ++it) {
        if (z.imag() <= 1e-8) return false;
        cplx f, fp;
        try {
            f = s_prime(model, z);
            fp = s_second(model, z);
        } catch (const pole_error&) {
            return false;
        }
        if (std::abs(fp) == 0.0) return false;
        cplx step = f / fp;
        // damped if the step is huge
        if (std::abs(step) > 2.0) step *= 2.0 / std::abs(step);
        z -= step;
        if (std::abs(step) < 1e-13 && std::abs(f) < 1e-10) {
            out = z;
            return z.imag() > 0.0;
        }
    }
    try {
        if (z.imag() > 0.0 && std::abs(s_prime(model, z)) < 1e-10) {
            out = z;
            return true;
        }
    } catch (const pole_error&) {
    }
    return false;
}

}  // namespace

CriticalPoint find_critical_point(const WalkModel& model, std::optional<cplx> initial_guess,
                                  const DensityProfile* profile, const CriticalSearchBox& box) {
    model.validate();

    std::vector<cplx> starts;
    if (initial_guess) starts.push_back(*initial_guess);
    if (profile) {
        try {
            const ComplexSlope u = solve_limit_slope(*profile, model.beta);
            starts.push_back(u.u / (1.0 - u.u));
        } catch (const error&) {
            // fall through to the grid
        }
    }
    // Coarse grid, geometric in Im z.
    for (double y = box.im_lo; y <= box.im_hi; y *= 2.3)
        for (double x = box.re_lo; x <= box.re_hi; x += (box.re_hi - box.re_lo) / 24.0)
            starts.emplace_back(x, y);

    // Order grid starts by |S'|.
    std::stable_sort(starts.begin(), starts.end(), [&](cplx a, cplx b) {
        auto score = [&](cplx z) {
            try {
                return std::abs(s_prime(model, z));
            } catch (const pole_error&) {
                return 1e300;
            }
        };
        return score(a) < score(b);
    });

    cplx root;
    bool found = false;
    for (const cplx& z0 : starts) {
        if (newton_to_root(model, z0, root)) {
            found = true;
            break;
        }
    }
    if (!found)
        throw convergence_error("find_critical_point: no upper-half-plane root found "
                                "(assumptions violated?)");

    // Certify uniqueness: argument-principle zero count of S' over the box.
    const int count = zero_count_rectangle(
        [&](cplx z) { return s_prime(model, z); }, box.re_lo, box.re_hi, box.im_lo,
        box.im_hi);
    if (count == 0)
        throw convergence_error("find_critical_point: zero count 0 over the search box");
    if (count > 1)
        throw convergence_error("find_critical_point: multiple roots counted (numerical failure)");

    CriticalPoint cp;
    cp.z_c = root;
    cp.residual = std::abs(s_prime(model, root));
    cp.s2 = s_second(model, root);
    if (cp.residual >= 1e-10)
        throw convergence_error("find_critical_point: residual did not reach 1e-10");
    return cp;
}

LevelCurves level_curves(const WalkModel& model, const CriticalPoint& cp, double re_lo,
                         double re_hi, double im_hi, double step) {
    model.validate();
    if (!(step > 0)) throw domain_error("level_curves: step must be > 0");
    LevelCurves out;
    const double target = s_value(model, cp.z_c).imag();
    const double theta0 = -0.5 * std::arg(cp.s2);

    for (int k = 0; k < 4; ++k) {
        const double theta = theta0 + k * kPi / 2.0;
        std::vector<cplx> curve;
        curve.push_back(cp.z_c);
        cplx z = cp.z_c + step * std::polar(1.0, theta);
        // direction of Re S growth at the first step decides the label
        bool up = (s_value(model, z) - s_value(model, cp.z_c)).real() > 0.0;
        out.re_monotone_up[k] = up;

        double prev_re = s_value(model, cp.z_c).real();
        bool ok = true;
        for (int n = 0; n < 4000 && ok; ++n) {
            // corrector: Newton back onto Im S = target along the normal i*t;
            // with t = conj(S')/|S'| we have d(Im S)/ds along i*t equal to |S'|.
            for (int c = 0; c < 5; ++c) {
                cplx sp;
                try {
                    sp = s_prime(model, z);
                } catch (const pole_error&) {
                    ok = false;
                    break;
                }
                if (std::abs(sp) < 1e-14) break;
                const cplx ndir = cplx(0.0, 1.0) * std::conj(sp) / std::abs(sp);
                double val;
                try {
                    val = s_value(model, z).imag() - target;
                } catch (const error&) {
                    ok = false;
                    break;
                }
                z -= ndir * (val / std::abs(sp));
                if (z.imag() < 0.5 * step) break;
            }
            if (!ok) break;
            if (z.imag() < step || z.real() < re_lo || z.real() > re_hi || z.imag() > im_hi)
                break;
            curve.push_back(z);
            double re_here;
            try {
                re_here = s_value(model, z).real();
            } catch (const error&) {
                break;
            }
            if (curve.size() > 2 && ((re_here - prev_re > 1e-12) != up) &&
                std::abs(re_here - prev_re) > 1e-9)
                throw consistency_error("level_curves: Re S not monotone along a traced curve");
            prev_re = re_here;
            // predictor
            cplx sp;
            try {
                sp = s_prime(model, z);
            } catch (const pole_error&) {
                break;
            }
            if (std::abs(sp) == 0.0) break;
            cplx tdir = std::conj(sp) / std::abs(sp);
            if (!up) tdir = -tdir;
            // keep heading away from the previous point
            if (curve.size() >= 2) {
                const cplx last_dir = curve.back() - curve[curve.size() - 2];
                if ((tdir * std::conj(last_dir)).real() < 0.0) tdir = -tdir;
            }
            z += step * tdir;
        }
        out.curves.push_back(std::move(curve));
    }
    return out;
}

}  // namespace ncrw
