#pragma once
#include <complex>
#include <vector>
#include "hewave/spectral.hpp"

namespace hew {

// One period of the interface reconstructed from the tangent angle.
// x(0) = 0 and y has zero mean over the nodes; y0 below is read at alpha = 0.
struct CurveSample {
    cvec z;        // nodal positions x + i y
    cvec z_alpha;  // sigma * exp(i theta)
    cvec tangent;  // exp(i theta)
    cvec normal;   // i * exp(i theta)
    double sigma = 0.0;
    double period = 0.0;
};

// arclength density sigma = M / (2 pi <cos theta>); throws geometry_error
// when <cos theta> collapses (curve length blowing up)
double sigma_of_theta(const rvec& theta, double M, double eps_cos = 1e-8);

CurveSample renormalized_curve(const rvec& theta, double M, double eps_cos = 1e-8);

// min over node pairs (periodic images included) of |z_j - z_j'| / dist(alpha_j, alpha_j')
double chord_arc_min(const CurveSample& cs);

bool self_intersects(const CurveSample& cs, double tol = 1e-2);

struct DisplacementStats {
    double h;   // crest-to-trough height max y - min y
    double y0;  // y at the alpha = 0 node
};
DisplacementStats displacement_stats(const CurveSample& cs);

} // namespace hew
