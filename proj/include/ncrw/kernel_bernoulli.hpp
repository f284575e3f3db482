#pragma once

#include <map>
#include <mutex>
#include <unordered_map>

#include "ncrw/action.hpp"
#include "ncrw/types.hpp"

namespace ncrw {

struct BernoulliKernelResult {
    double value = 0.0;
    double im_leak = 0.0;          // discarded imaginary magnitude
    double z_line_abscissa = 0.0;  // Re of the z integration line
    std::vector<long long> w_pole_list;
};

// Evaluator for the finite-N correlation kernel of the noncolliding Bernoulli
// random walk.  The w-integral is a finite sum of simple-pole residues at
// m in {x1-t1,...,x1} cap {a_r}; the z-integral runs over a vertical line and
// is assembled in log space per (z, m) pair so that configurations with
// thousands of particles stay inside double range.
//
// The evaluator caches per-line z sums and per-pole m sums; it is safe to use
// from several threads.
class BernoulliKernel {
public:
    explicit BernoulliKernel(WalkModel model, QuadratureSettings settings = {});

    const WalkModel& model() const { return model_; }

    // Contract: t1, t2 >= 1.  Line at Re z = x2 - t2 + 1/2.
    BernoulliKernelResult eval(const KernelQuery& q) const;

    // Same value with the z-line shifted to Re z = x2 - 1/2.
    BernoulliKernelResult eval_shifted_contour(const KernelQuery& q) const;

    double operator()(const KernelQuery& q) const { return eval(q).value; }

private:
    BernoulliKernelResult eval_line(const KernelQuery& q, double line_re) const;
    cplx z_log_sum(cplx z) const;      // sum_r log(z - a_r), cached
    cplx m_log_sum(long long m) const; // sum_{a_r != m} log(m - a_r), cached

    WalkModel model_;
    QuadratureSettings settings_;

    mutable std::mutex mtx_;
    mutable std::unordered_map<std::uint64_t, std::pair<cplx, cplx>> z_cache_;
    mutable std::map<long long, cplx> m_cache_;
};

// One-shot helpers.
BernoulliKernelResult k_bernoulli(const WalkModel& model, const KernelQuery& q,
                                  const QuadratureSettings& settings = {});
BernoulliKernelResult k_bernoulli_shifted_contour(const WalkModel& model,
                                                  const KernelQuery& q,
                                                  const QuadratureSettings& settings = {});

// Max over t_i = T + delta_i, delta_i in [-dt_range, dt_range], x1 in
// [-dx_range, dx_range], x2 = 0, of |K^Bernoulli - K_{z_c/(z_c+1)}|.
double universality_gap(const WalkModel& model, int dt_range, int dx_range,
                        const CriticalPoint* cp_hint = nullptr);

}  // namespace ncrw
