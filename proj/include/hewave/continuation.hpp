#pragma once
#include <string>
#include <vector>
#include "hewave/broyden.hpp"
#include "hewave/linear_theory.hpp"
#include "hewave/residual.hpp"

namespace hew {

struct ContinuationConfig {
    double amp0 = 1e-3;            // seed amplitude along the null direction
    double step0 = 5e-3;           // initial displacement step
    double fourier_step0 = 2e-3;   // initial step once a sine coefficient is constrained
    double step_floor = 1e-6;      // below this the active phase is abandoned
    double c_trivial_tol = 1e-4;
    double h_trivial_tol = 1e-4;
    double tail_tol = 1e-7;        // mean magnitude of the top decile of theta modes
    double self_intersect_tol = 1e-2;
    int max_points = 2000;
    SolveOptions solver;
};

enum class Termination {
    self_intersection,
    return_to_trivial,
    unresolved_growth,
    max_steps,
    step_underflow,
};
std::string to_string(Termination t);

struct BranchPoint {
    WaveState state;
    double y0 = 0.0;
    double h = 0.0;
    double sigma = 0.0;
    double residual = 0.0;
};

struct Branch {
    std::vector<BranchPoint> points;
    Termination termination = Termination::step_underflow;
    PhysParams params;
    GridSpec grid;
    int seed_k = 1;
    int seed_sign = +1;
};

// initial guess amp0 along the null direction at the bifurcation speed
WaveState seed_state(const LinearMode& mode, double amp0);

Branch continue_branch(const PhysParams& p, const GridSpec& grid, int seed_k,
                       int seed_sign, const ContinuationConfig& cfg);

// one branch per Atilde value; jobs > 1 runs them on worker threads
std::vector<Branch> sweep_surface(const PhysParams& base, const GridSpec& grid,
                                  int seed_k, int seed_sign,
                                  const std::vector<double>& atilde_values,
                                  const ContinuationConfig& cfg, int jobs = 1);

} // namespace hew
