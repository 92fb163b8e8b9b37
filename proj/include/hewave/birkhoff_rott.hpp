#pragma once
#include "hewave/curve.hpp"

namespace hew {

// Smooth remainder of the periodic Birkhoff-Rott integral after the flat
// Hilbert part is split off, evaluated by the alternating trapezoid rule
// (sum over nodes of opposite parity, weight 2 * dalpha).  Throws
// quadrature_error when the curve's chord-arc ratio is below chord_arc_floor.
cvec remainder_kernel(const CurveSample& cs, const rvec& gamma,
                      double chord_arc_floor = 1e-6);

// conjugate interface velocity W* = (1/2i) H(gamma / z_alpha) + remainder
cvec birkhoff_rott(const CurveSample& cs, const rvec& gamma,
                   double chord_arc_floor = 1e-6);

} // namespace hew
