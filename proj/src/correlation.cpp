#include "ncrw/correlation.hpp"

#include <cmath>
#include <set>

namespace ncrw {

cplx det_complex(std::vector<cplx> m, std::size_t n) {
    cplx det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r * n + col]) > std::abs(m[piv * n + col])) piv = r;
        if (std::abs(m[piv * n + col]) == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m[piv * n + c], m[col * n + c]);
            det = -det;
        }
        det *= m[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx factor = m[r * n + col] / m[col * n + col];
            for (std::size_t c = col; c < n; ++c) m[r * n + c] -= factor * m[col * n + c];
        }
    }
    return det;
}

namespace {

void check_distinct(const std::vector<SpaceTimePoint>& points) {
    std::set<SpaceTimePoint> seen(points.begin(), points.end());
    if (seen.size() != points.size())
        throw domain_error("correlation_probability: duplicate space-time points");
}

}  // namespace

double correlation_probability(const std::function<double(const KernelQuery&)>& kernel,
                               const std::vector<SpaceTimePoint>& points) {
    check_distinct(points);
    const std::size_t n = points.size();
    if (n == 0) return 1.0;
    std::vector<cplx> m(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            m[a * n + b] = kernel(KernelQuery{points[a], points[b]});
    return det_complex(std::move(m), n).real();
}

double correlation_probability_complex(
    const std::function<cplx(const KernelQuery&)>& kernel,
    const std::vector<SpaceTimePoint>& points, double im_tol) {
    check_distinct(points);
    const std::size_t n = points.size();
    if (n == 0) return 1.0;
    std::vector<cplx> m(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            m[a * n + b] = kernel(KernelQuery{points[a], points[b]});
    return collapse_real(det_complex(std::move(m), n), im_tol);
}

}  // namespace ncrw
