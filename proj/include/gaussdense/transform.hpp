#ifndef GAUSSDENSE_TRANSFORM_HPP
#define GAUSSDENSE_TRANSFORM_HPP

#include "gaussdense/grid.hpp"

namespace gaussdense {

/// Quadrature of  x^(w) = \int x(t) e^{-2 pi i w t} dt  onto the dual grid.
///
/// On a centered grid the trapezoid sum h * sum_k x(t_k) e^{-2 pi i w_m t_k} factors into a
/// length-N DFT with alternating-sign pre/post modulation and a constant phase, so the result
/// approximates the continuous integral rather than the index-based DFT.
Spectrum forward_ft(const Signal& x);

/// Quadrature of  y_check(t) = \int y(w) e^{2 pi i t w} dw  back onto the time grid.
Signal inverse_ft(const Spectrum& y);

/// | ||x||^2 - ||x^||^2 | / ||x||^2.
double parseval_gap(const Signal& x);

}  // namespace gaussdense

#endif  // GAUSSDENSE_TRANSFORM_HPP
