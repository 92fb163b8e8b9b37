#pragma once
#include "hewave/curve.hpp"
#include "hewave/grid.hpp"
#include "hewave/params.hpp"

namespace hew {

// Unknowns of the discrete traveling-wave system: odd tangent angle
// theta = sum a_k sin(k alpha), even strength perturbation
// gamma1 = sum b_k cos(k alpha), and wave speed c.
struct WaveState {
    rvec a;    // length n_modes
    rvec b;    // length n_modes
    double c = 0.0;
};

enum class ConstraintKind { displacement_y0, fourier_mode };

struct ConstraintSpec {
    ConstraintKind kind = ConstraintKind::displacement_y0;
    int mode_index = 1;    // constrained sine coefficient when kind == fourier_mode
    double target = 0.0;
};

struct ResidualVector {
    rvec r_theta;        // sine projections 1..N of the tangential equation
    rvec r_gamma;        // sine projections 1..N of the normal equation
    double r_constraint = 0.0;
    double inf_norm() const;
};

ResidualVector eval_residual(const WaveState& w, const ConstraintSpec& con,
                             const PhysParams& p, const GridSpec& grid);

// nodal tangent angle / strength synthesis
rvec nodal_theta(const WaveState& w, const GridSpec& grid);
rvec nodal_gamma(const WaveState& w, const PhysParams& p, const GridSpec& grid);

// flat packing used by the quasi-Newton solver: x = [a, b, c]
std::vector<double> pack_state(const WaveState& w);
WaveState unpack_state(const std::vector<double>& x, int n_modes);
std::vector<double> pack_residual(const ResidualVector& r);

} // namespace hew
