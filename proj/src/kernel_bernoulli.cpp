#include "ncrw/kernel_bernoulli.hpp"

#include <cmath>
#include <cstring>

#include "ncrw/kernel_sine.hpp"
#include "ncrw/quadrature.hpp"
#include "ncrw/special.hpp"

namespace ncrw {

namespace {

std::uint64_t hash_double(double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof(u));
    return u * 0x9e3779b97f4a7c15ULL;
}

// Kahan-compensated complex accumulator for the long log sums.
struct CompensatedSum {
    cplx s{0.0, 0.0}, c{0.0, 0.0};
    void add(cplx v) {
        const cplx y = v - c;
        const cplx t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

}  // namespace

BernoulliKernel::BernoulliKernel(WalkModel model, QuadratureSettings settings)
    : model_(std::move(model)), settings_(settings) {
    model_.validate();
    settings_.validate();
}

cplx BernoulliKernel::z_log_sum(cplx z) const {
    const std::uint64_t key = hash_double(z.real()) ^ (hash_double(z.imag()) >> 1);
    {
        std::lock_guard<std::mutex> lock(mtx_);
        auto it = z_cache_.find(key);
        if (it != z_cache_.end() && it->second.first == z) return it->second.second;
    }
    CompensatedSum acc;
    for (long long ar : model_.a.positions) acc.add(std::log(z - static_cast<double>(ar)));
    {
        std::lock_guard<std::mutex> lock(mtx_);
        z_cache_[key] = {z, acc.s};
    }
    return acc.s;
}

cplx BernoulliKernel::m_log_sum(long long m) const {
    {
        std::lock_guard<std::mutex> lock(mtx_);
        auto it = m_cache_.find(m);
        if (it != m_cache_.end()) return it->second;
    }
    // sum over a_r != m of log(m - a_r): real log of |m - a_r| plus i*pi per
    // negative factor (branch immaterial; the total is exponentiated).
    double re = 0.0;
    long long negs = 0;
    for (long long ar : model_.a.positions) {
        if (ar == m) continue;
        const long long d = m - ar;
        re += std::log(std::abs(static_cast<double>(d)));
        if (d < 0) ++negs;
    }
    const cplx out(re, kPi * static_cast<double>(negs));
    {
        std::lock_guard<std::mutex> lock(mtx_);
        m_cache_[m] = out;
    }
    return out;
}

BernoulliKernelResult BernoulliKernel::eval_line(const KernelQuery& q, double line_re) const {
    const long long t1 = q.p1.t, x1 = q.p1.x, t2 = q.p2.t, x2 = q.p2.x;
    if (t1 < 1 || t2 < 1) throw domain_error("k_bernoulli: requires t1, t2 >= 1");

    BernoulliKernelResult res;
    res.z_line_abscissa = line_re;

    // Indicator term.
    cplx value = 0.0;
    if (x1 >= x2 && t1 > t2) {
        const long long dx = x1 - x2;
        const double sign = (dx % 2 == 0) ? -1.0 : 1.0;  // (-1)^{dx+1}
        value += sign * binomial(t1 - t2, dx);
    }

    // w poles: {x1-t1..x1} cap a.
    std::vector<long long> poles;
    for (long long m = x1 - t1; m <= x1; ++m)
        if (model_.a.contains(m)) poles.push_back(m);
    res.w_pole_list = poles;

    if (!poles.empty()) {
        const double log_beta_ratio = std::log((1.0 - model_.beta) / model_.beta);
        const double pre = log_factorial(t1) - log_factorial(t2 - 1) + std::log(kPi);
        const double sign_x1 = (x1 % 2 == 0) ? 1.0 : -1.0;  // (-1)^{x1}

        // m-dependent log parts (independent of z).
        std::vector<cplx> m_part(poles.size());
        for (std::size_t i = 0; i < poles.size(); ++i) {
            const long long m = poles[i];
            m_part[i] = static_cast<double>(m) * log_beta_ratio -
                        log_factorial(x1 - m) - log_factorial(t1 - x1 + m) - m_log_sum(m);
        }

        auto integrand = [&](cplx z) -> cplx {
            // z-dependent log parts.
            cplx lz = pre;
            lz += log_gamma_complex(z - static_cast<double>(x2) + static_cast<double>(t2));
            lz -= log_gamma_complex(z - static_cast<double>(x2) + 1.0);
            lz += z_log_sum(z);
            lz -= z * log_beta_ratio;
            lz -= log_sin_pi(z);
            // exp-sum over poles with a running max shift
            std::vector<cplx> logs(poles.size());
            double lmax = -1e300;
            for (std::size_t i = 0; i < poles.size(); ++i) {
                logs[i] = lz + m_part[i] - std::log(static_cast<double>(poles[i]) - z);
                lmax = std::max(lmax, logs[i].real());
            }
            cplx s = 0.0;
            for (std::size_t i = 0; i < poles.size(); ++i)
                s += std::exp(logs[i] - lmax);
            return s * std::exp(cplx(lmax, 0.0));
        };

        // Line integration: panels outward from the real axis, measured-decay
        // truncation backed by the envelope (1+|y|)^{N+t2} e^{-pi |y|}.
        const cplx line_int = [&]() {
            const auto& gl = gauss_legendre(settings_.panel_order);
            const double h = 2.0;
            auto panel = [&](double y0, double y1) {
                cplx s = 0.0;
                const double mid = 0.5 * (y0 + y1), half = 0.5 * (y1 - y0);
                for (int i = 0; i < settings_.panel_order; ++i)
                    s += gl.weights[i] * integrand(cplx(line_re, mid + gl.nodes[i] * half));
                return s * half;
            };
            cplx total = 0.0;
            for (int side = 0; side < 2; ++side) {
                int quiet = 0;
                double y = 0.0;
                for (int k = 0;; ++k) {
                    const double lo = (side == 0) ? y : -(y + h);
                    const double hi = (side == 0) ? y + h : -y;
                    const cplx p = panel(lo, hi);
                    total += p;
                    y += h;
                    if (k >= 2 && std::abs(p) < settings_.abs_tol / 20.0) {
                        if (++quiet >= 3) break;
                    } else {
                        quiet = 0;
                    }
                    if (k > settings_.max_panels)
                        throw convergence_error("k_bernoulli: line quadrature did not decay");
                }
            }
            return total * cplx(0.0, 1.0);
        }();

        value += sign_x1 * line_int / cplx(0.0, 2.0 * kPi);
    }

    res.value = value.real();
    res.im_leak = std::abs(value.imag());
    if (res.im_leak >= 1e-8 * (1.0 + std::abs(res.value)))
        throw consistency_error("k_bernoulli: imaginary leak " + std::to_string(res.im_leak));
    return res;
}

BernoulliKernelResult BernoulliKernel::eval(const KernelQuery& q) const {
    return eval_line(q, static_cast<double>(q.p2.x - q.p2.t) + 0.5);
}

BernoulliKernelResult BernoulliKernel::eval_shifted_contour(const KernelQuery& q) const {
    // Remark contour: Re z = x2 - 1/2; the residues of poles crossed sum to
    // zero, so the residue bookkeeping is identical.
    return eval_line(q, static_cast<double>(q.p2.x) - 0.5);
}

BernoulliKernelResult k_bernoulli(const WalkModel& model, const KernelQuery& q,
                                  const QuadratureSettings& settings) {
    return BernoulliKernel(model, settings).eval(q);
}

BernoulliKernelResult k_bernoulli_shifted_contour(const WalkModel& model,
                                                  const KernelQuery& q,
                                                  const QuadratureSettings& settings) {
    return BernoulliKernel(model, settings).eval_shifted_contour(q);
}

double universality_gap(const WalkModel& model, int dt_range, int dx_range,
                        const CriticalPoint* cp_hint) {
    CriticalPoint cp;
    if (cp_hint) {
        cp = *cp_hint;
    } else {
        cp = find_critical_point(model);
    }
    const cplx u = cp.z_c / (cp.z_c + 1.0);

    BernoulliKernel kernel(model);
    double gap = 0.0;
    for (int d1 = -dt_range; d1 <= dt_range; ++d1)
        for (int d2 = -dt_range; d2 <= dt_range; ++d2)
            for (int x1 = -dx_range; x1 <= dx_range; ++x1) {
                KernelQuery q;
                q.p1 = {model.T + d1, x1};
                q.p2 = {model.T + d2, 0};
                const double finite = kernel.eval(q).value;
                const double sine =
                    collapse_real(extended_sine(u, SineQuery{d1, x1, d2, 0}), 1e-7);
                gap = std::max(gap, std::abs(finite - sine));
            }
    return gap;
}

}  // namespace ncrw
