#include "ncrw/kernel_tilings.hpp"

#include <cmath>
#include <gmpxx.h>

#include "ncrw/special.hpp"

namespace ncrw {

void TilingSpec::validate() const {
    if (N < 1 || L < 1) throw domain_error("TilingSpec: N, L must be >= 1");
    if (static_cast<long long>(y.size()) != L)
        throw domain_error("TilingSpec: y must have length L");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i > 0 && y[i - 1] >= y[i])
            throw domain_error("TilingSpec: y must be strictly increasing");
        if (y[i] > 0 || y[i] < -(N + L - 1))
            throw domain_error("TilingSpec: y must lie in {0,-1,...,-N-L+1}");
    }
}

ParticleConfig TilingSpec::path_starts() const {
    validate();
    std::vector<long long> a;
    std::size_t j = 0;
    for (long long s = -(N + L - 1); s <= 0; ++s) {
        while (j < y.size() && y[j] < s) ++j;
        if (j < y.size() && y[j] == s) continue;
        a.push_back(s);
    }
    return ParticleConfig(std::move(a));
}

std::string tiling_count(const TilingSpec& spec) {
    spec.validate();
    mpq_class z(1);
    for (std::size_t i = 0; i < spec.y.size(); ++i)
        for (std::size_t j = i + 1; j < spec.y.size(); ++j) {
            z *= mpq_class(spec.y[j] - spec.y[i]);
            z /= mpq_class(static_cast<long long>(j - i));
        }
    z.canonicalize();
    if (z.get_den() != 1) throw consistency_error("tiling_count: non-integer result");
    return z.get_num().get_str();
}

double tiling_count_double(const TilingSpec& spec) {
    return mpq_class(tiling_count(spec)).get_d();
}

namespace {

// Signed log-magnitude accumulator for products of (nonzero) reals.
struct SignLog {
    double sign = 1.0;
    double logmag = 0.0;
    bool zero = false;
    void mul_int(long long v) {
        if (v == 0) {
            zero = true;
            return;
        }
        if (v < 0) sign = -sign;
        logmag += std::log(std::abs(static_cast<double>(v)));
    }
    void div(const SignLog& o) {
        sign *= o.sign;
        logmag -= o.logmag;
    }
    void mul(const SignLog& o) {
        zero = zero || o.zero;
        sign *= o.sign;
        logmag += o.logmag;
    }
};

// Pochhammer (n)_{k} = n (n+1) ... (n+k-1) over consecutive integers.
SignLog pochhammer_int(long long n, long long k) {
    SignLog p;
    for (long long j = 0; j < k; ++j) {
        p.mul_int(n + j);
        if (p.zero) return p;
    }
    return p;
}

// Max-shifted signed exp sum.
double signed_exp_sum(const std::vector<SignLog>& terms, double extra_log) {
    double lmax = -1e300;
    for (const auto& t : terms)
        if (!t.zero) lmax = std::max(lmax, t.logmag);
    if (lmax == -1e300) return 0.0;
    double s = 0.0;
    for (const auto& t : terms)
        if (!t.zero) s += t.sign * std::exp(t.logmag - lmax);
    return s * std::exp(lmax + extra_log);
}

}  // namespace

double k_tilings(const TilingSpec& spec, const KernelQuery& q) {
    spec.validate();
    const long long t1 = q.p1.t, x1 = q.p1.x, t2 = q.p2.t, x2 = q.p2.x;
    if (t1 < 0 || t1 > spec.L - 1 || t2 < 1 || t2 > spec.L - 1)
        throw domain_error("k_tilings: requires 0 <= t1 <= L-1, 1 <= t2 <= L-1");

    const auto& y = spec.y;
    const long long yL = y.back();
    const long long z_lo = x2 - t2 + 1;  // z contour encircles z_lo .. y_L

    double value = 0.0;
    if (t1 < t2 && x2 <= x1) {
        // -(x1-x2+1)_{t2-t1-1} / (t2-t1-1)!
        const SignLog p = pochhammer_int(x1 - x2 + 1, t2 - t1 - 1);
        if (!p.zero)
            value -= p.sign * std::exp(p.logmag - log_factorial(t2 - t1 - 1));
    }

    // Prefactor t1!/(t2-1)!.
    const double log_pre = log_factorial(t1) - log_factorial(t2 - 1);

    // Per-m data for m in {x1-t1..x1} \ y.
    struct MData {
        long long m;
        SignLog prod_m_y;   // prod_r (m - y_r)
        SignLog q_m;        // (-1)^{x1-m} (x1-m)! (t1-x1+m)!
    };
    std::vector<MData> ms;
    for (long long m = x1 - t1; m <= x1; ++m) {
        if (std::binary_search(y.begin(), y.end(), m)) continue;
        MData d;
        d.m = m;
        for (long long yr : y) d.prod_m_y.mul_int(m - yr);
        d.q_m.sign = ((x1 - m) % 2 == 0) ? 1.0 : -1.0;
        d.q_m.logmag = log_factorial(x1 - m) + log_factorial(t1 - x1 + m);
        ms.push_back(d);
    }

    std::vector<SignLog> terms;

    // Residues at z = y_rho, rho over cut points inside the contour, for each m:
    //   (y_rho - x2 + 1)_{t2-1} * prod(m - y) / (Q_m (m - y_rho) prod_{r != rho}(y_rho - y_r))
    for (std::size_t rho = 0; rho < y.size(); ++rho) {
        const long long yr = y[rho];
        if (yr < z_lo) continue;
        const SignLog poch = pochhammer_int(yr - x2 + 1, t2 - 1);
        if (poch.zero) continue;
        SignLog denom_y;  // prod_{r != rho} (y_rho - y_r)
        for (std::size_t r = 0; r < y.size(); ++r)
            if (r != rho) denom_y.mul_int(yr - y[r]);
        for (const auto& d : ms) {
            SignLog t = poch;
            t.mul(d.prod_m_y);
            t.div(d.q_m);
            SignLog dm;
            dm.mul_int(d.m - yr);
            t.div(dm);
            t.div(denom_y);
            terms.push_back(t);
        }
    }

    // Residues of the w = z term at p in {x1-t1..x1} cap y inside the contour:
    //   (p - x2 + 1)_{t2-1} / Q_p.
    // (For p not in y, these cancel exactly against the z = m residues above.)
    for (long long p = std::max(x1 - t1, z_lo); p <= std::min(x1, yL); ++p) {
        if (!std::binary_search(y.begin(), y.end(), p)) continue;
        SignLog t = pochhammer_int(p - x2 + 1, t2 - 1);
        if (t.zero) continue;
        SignLog qp;
        qp.sign = ((x1 - p) % 2 == 0) ? 1.0 : -1.0;
        qp.logmag = log_factorial(x1 - p) + log_factorial(t1 - x1 + p);
        t.div(qp);
        terms.push_back(t);
    }

    value += signed_exp_sum(terms, log_pre);
    return value;
}

double k_paths(const TilingSpec& spec, const KernelQuery& q) {
    const double delta = (q.p1.t == q.p2.t && q.p1.x == q.p2.x) ? 1.0 : 0.0;
    return delta - k_tilings(spec, q);
}

double k_paths_scaled(const ParticleConfig& a, double beta, long long L,
                      const KernelQuery& q) {
    a.validate();
    if (!(beta > 0 && beta < 1)) throw domain_error("k_paths_scaled: beta in (0,1)");
    const long long N = static_cast<long long>(a.size());
    const long long shift = static_cast<long long>(std::floor(beta * static_cast<double>(L)));

    TilingSpec spec;
    spec.N = N;
    spec.L = L;
    std::size_t j = 0;
    std::vector<long long> shifted;
    for (long long ai : a) shifted.push_back(ai - shift);
    for (long long ai : shifted)
        if (!(-N - L + 1 < ai && ai < 0))
            throw domain_error("k_paths_scaled: L too small for the shifted configuration");
    for (long long s = -(N + L - 1); s <= 0; ++s) {
        while (j < shifted.size() && shifted[j] < s) ++j;
        if (j < shifted.size() && shifted[j] == s) continue;
        spec.y.push_back(s);
    }

    KernelQuery qs = q;
    qs.p1.x -= shift;
    qs.p2.x -= shift;
    return k_paths(spec, qs);
}

}  // namespace ncrw
