#pragma once
#include <functional>
#include <vector>

namespace hew {

struct SolveOptions {
    double tol = 1e-9;          // inf-norm convergence threshold
    int max_iter = 200;
    double fd_step = 1e-7;      // forward-difference scale for the initial Jacobian
    int refresh_after = 5;      // consecutive residual increases before one FD rebuild
};

enum class SolveStatus { converged, max_iter, singular_update, evaluation_error };

struct SolveReport {
    SolveStatus status = SolveStatus::max_iter;
    int iterations = 0;
    int evals = 0;
    double final_norm = 0.0;
    bool ok() const { return status == SolveStatus::converged; }
};

using ResidualFn = std::function<std::vector<double>(const std::vector<double>&)>;

// Broyden quasi-Newton with forward-difference initial Jacobian and rank-one
// updates; x is overwritten with the final iterate.  The residual callback may
// throw; that surfaces as SolveStatus::evaluation_error.
SolveReport broyden_solve(const ResidualFn& F, std::vector<double>& x,
                          const SolveOptions& opt = {});

} // namespace hew
