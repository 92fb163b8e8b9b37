#pragma once
#include <vector>
#include "hewave/grid.hpp"
#include "hewave/params.hpp"
#include "hewave/spectral.hpp"

namespace hew {

// growth symbol of wavenumber k at speed c; zero exactly at the bifurcation speeds
double lambda_k(int k, double c, const PhysParams& p);

// numerator of the radicand in the bifurcation speed formula (sign decides
// whether the speed pair is real)
double c_pm_radicand(int k, const PhysParams& p);

struct WaveSpeed {
    double c = 0.0;
    bool complex_pair = false; // true when the radicand is negative
};
WaveSpeed c_pm(int k, int sign, const PhysParams& p);

// unique real root l(k) of the resonance cubic in l
double real_root_l(int k, const PhysParams& p);

// k admits a one-dimensional bifurcation kernel: real speed pair (strictly)
// and l(k) not a positive integer other than k
bool in_K(int k, const PhysParams& p, double integer_tol = 1e-8);

// exact expansion of lambda_k about the bifurcation speed (quadratic in eps)
double lambda_perturb(int k, int sign, double eps, const PhysParams& p);

// null direction at the bifurcation point, normalized to unit max amplitude
// in the tangent angle; a_dir/b_dir are sine/cosine coefficient vectors
struct LinearMode {
    int k = 1;
    int sign = +1;
    double c = 0.0;
    rvec a_dir, b_dir; // length grid.n_modes
};
LinearMode eigen_direction(int k, int sign, const PhysParams& p, const GridSpec& grid);

} // namespace hew
