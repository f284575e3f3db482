#include "ncrw/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace ncrw {

namespace {

GaussLegendre compute_gauss_legendre(int n) {
    // Newton iteration on Legendre polynomials, nodes from the Chebyshev guess.
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[n - 1 - i] = x;
        gl.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
    return it->second;
}

namespace {

cplx segment_gl(const std::function<cplx(cplx)>& f, cplx a, cplx b, int order) {
    const auto& gl = gauss_legendre(order);
    const cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx s = 0.0;
    for (int i = 0; i < order; ++i) s += gl.weights[i] * f(mid + gl.nodes[i] * half);
    return s * half;
}

cplx segment_adaptive(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                      const QuadratureSettings& st, double tol, int depth) {
    cplx whole = segment_gl(f, a, b, st.panel_order);
    cplx mid = 0.5 * (a + b);
    cplx two = segment_gl(f, a, mid, st.panel_order) + segment_gl(f, mid, b, st.panel_order);
    if (std::abs(whole - two) < tol || depth <= 0) return two;
    return segment_adaptive(f, a, mid, st, 0.5 * tol, depth - 1) +
           segment_adaptive(f, mid, b, st, 0.5 * tol, depth - 1);
}

}  // namespace

cplx segment_integral(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                      const QuadratureSettings& settings) {
    settings.validate();
    return segment_adaptive(f, a, b, settings, settings.abs_tol, 30);
}

cplx vertical_line_integral(const std::function<cplx(cplx)>& f, double c,
                            double decay_rate, const QuadratureSettings& settings,
                            int poly_degree) {
    settings.validate();
    if (!(decay_rate > 0)) throw domain_error("vertical_line_integral: decay_rate must be > 0");

    double envelope_M = 0.0;  // running estimate of the envelope constant

    auto panel = [&](double y0, double y1, int order) {
        const auto& gl = gauss_legendre(order);
        cplx s = 0.0;
        const double mid = 0.5 * (y0 + y1), half = 0.5 * (y1 - y0);
        for (int i = 0; i < order; ++i) {
            const double y = mid + gl.nodes[i] * half;
            const cplx v = f(cplx(c, y));
            const double ay = std::abs(y);
            const double m = std::abs(v) * std::exp(decay_rate * ay - poly_degree * std::log1p(ay));
            if (std::isfinite(m) && m > envelope_M) envelope_M = m;
            s += gl.weights[i] * v;
        }
        return s * half;
    };

    // Tail bound beyond Y, valid once decay_rate*(1+Y) >= 2*poly_degree:
    //   int_Y^inf M (1+y)^p e^{-r y} dy <= M (1+Y)^p e^{-r Y} * 2/r.
    auto tail_ok = [&](double Y) {
        if (decay_rate * (1.0 + Y) < 2.0 * poly_degree) return false;
        const double log_tail = std::log(envelope_M + 1e-300) +
                                poly_degree * std::log1p(Y) - decay_rate * Y +
                                std::log(2.0 / decay_rate);
        return log_tail < std::log(settings.abs_tol / 10.0);
    };

    double h = 1.0;  // panel width in y; halved if the order check disagrees
    for (int refine = 0; refine < 4; ++refine, h *= 0.5) {
        cplx total = 0.0, total_hi = 0.0;
        int used = 0;
        bool panels_exhausted = false;
        for (int side = 0; side < 2 && !panels_exhausted; ++side) {
            double y = 0.0;
            while (true) {
                const double lo = (side == 0) ? y : -(y + h);
                const double hi = (side == 0) ? y + h : -y;
                total += panel(lo, hi, settings.panel_order);
                total_hi += panel(lo, hi, settings.panel_order + 8);
                y += h;
                if (++used > settings.max_panels) {
                    panels_exhausted = true;
                    break;
                }
                if (tail_ok(y)) break;
            }
        }
        if (panels_exhausted)
            throw convergence_error(
                "vertical_line_integral: max_panels reached before tail bound met");
        if (std::abs(total - total_hi) <= settings.abs_tol)
            return cplx(0.0, 1.0) * total_hi;
    }
    throw convergence_error("vertical_line_integral: panel refinement did not converge");
}

cplx circle_quadrature(const std::function<cplx(cplx)>& f, cplx center, double radius,
                       const QuadratureSettings& settings) {
    settings.validate();
    if (!(radius > 0)) throw domain_error("circle_quadrature: radius must be > 0");

    auto eval = [&](int n) {
        cplx s = 0.0;
        for (int k = 0; k < n; ++k) {
            const double th = 2.0 * kPi * k / n;
            const cplx e = std::polar(1.0, th);
            s += f(center + radius * e) * e;
        }
        return s * (radius / static_cast<double>(n));
    };

    int n = 16;
    cplx prev = eval(n);
    for (int it = 0; it < 14; ++it) {
        n *= 2;
        const cplx cur = eval(n);
        if (std::abs(cur - prev) < settings.abs_tol) return cur;
        prev = cur;
    }
    throw convergence_error("circle_quadrature: did not converge");
}

namespace {

// Winding accumulation along the segment [a,b]; refines until each phase step
// is < pi/2 and the magnitude does not swing by more than 4x (guards against
// a full 2*pi turn hiding between samples).  fa/fb are f(a), f(b).
double winding_segment(const std::function<cplx(cplx)>& f, cplx a, cplx b, cplx fa,
                       cplx fb, int depth) {
    if (std::abs(fa) == 0.0 || std::abs(fb) == 0.0)
        throw convergence_error("zero_count_rectangle: zero on the contour");
    const double d = std::arg(fb / fa);
    const double ratio = std::abs(fb) / std::abs(fa);
    const bool tame = std::abs(d) < kPi / 2.0 && ratio > 0.25 && ratio < 4.0;
    if (tame && depth >= 4) return d;
    if (depth > 60) {
        if (std::abs(d) < kPi / 2.0) return d;
        throw convergence_error("zero_count_rectangle: refinement depth exceeded");
    }
    const cplx m = 0.5 * (a + b);
    const cplx fm = f(m);
    return winding_segment(f, a, m, fa, fm, depth + 1) +
           winding_segment(f, m, b, fm, fb, depth + 1);
}

}  // namespace

int zero_count_rectangle(const std::function<cplx(cplx)>& f, double re_lo, double re_hi,
                         double im_lo, double im_hi, int /*max_depth*/) {
    const cplx corners[5] = {cplx(re_lo, im_lo), cplx(re_hi, im_lo), cplx(re_hi, im_hi),
                             cplx(re_lo, im_hi), cplx(re_lo, im_lo)};
    double total = 0.0;
    cplx fprev = f(corners[0]);
    for (int s = 0; s < 4; ++s) {
        const cplx fnext = f(corners[s + 1]);
        total += winding_segment(f, corners[s], corners[s + 1], fprev, fnext, 0);
        fprev = fnext;
    }
    const double count = total / (2.0 * kPi);
    const long long rounded = std::llround(count);
    if (std::abs(count - rounded) > 1e-3)
        throw convergence_error("zero_count_rectangle: winding number not close to an integer");
    return static_cast<int>(rounded);
}

}  // namespace ncrw
