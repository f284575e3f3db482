#pragma once

#include <functional>

#include "ncrw/types.hpp"

namespace ncrw {

// Gauss-Legendre nodes/weights on [-1,1], cached per order.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

// Integral of f over the straight segment [a, b] in C (includes dz factor),
// fixed-order Gauss-Legendre with bisection refinement until two levels agree
// within abs_tol.
cplx segment_integral(const std::function<cplx(cplx)>& f, cplx a, cplx b,
                      const QuadratureSettings& settings = {});

// Integral over the vertical line Re z = c traversed upwards:
//   returns  int_{-inf}^{inf} f(c + i y) i dy.
// The caller guarantees |f(c+iy)| <= M (1+|y|)^poly_degree e^{-decay_rate |y|};
// the truncation point is chosen from this envelope (M estimated from samples)
// so that the discarded tail is below abs_tol/10.
cplx vertical_line_integral(const std::function<cplx(cplx)>& f, double c,
                            double decay_rate, const QuadratureSettings& settings = {},
                            int poly_degree = 0);

// (1/2pi i) * contour integral of f over the positively oriented circle
// |w - center| = radius, trapezoidal rule in the angle, node count doubled
// until two successive counts agree within abs_tol.
cplx circle_quadrature(const std::function<cplx(cplx)>& f, cplx center, double radius,
                       const QuadratureSettings& settings = {});

// Number of zeros of f inside the rectangle [re_lo,re_hi] x [im_lo,im_hi],
// by the argument principle: total winding of f along the boundary.
// Adaptive refinement keeps each phase increment below pi/2.
int zero_count_rectangle(const std::function<cplx(cplx)>& f, double re_lo, double re_hi,
                         double im_lo, double im_hi, int max_depth = 48);

}  // namespace ncrw
