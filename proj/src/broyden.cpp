#include "hewave/broyden.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace hew {

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// forward differences, column by column
bool fd_jacobian(const ResidualFn& F, const std::vector<double>& x,
                 const std::vector<double>& f0, double fd_step, Eigen::MatrixXd& J,
                 int& evals) {
    const int n = static_cast<int>(x.size());
    std::vector<double> xp(x);
    for (int i = 0; i < n; ++i) {
        const double h = fd_step * std::max(1.0, std::abs(x[i]));
        xp[i] = x[i] + h;
        const std::vector<double> fp = F(xp);
        ++evals;
        if (!all_finite(fp)) return false;
        for (int r = 0; r < n; ++r) J(r, i) = (fp[r] - f0[r]) / h;
        xp[i] = x[i];
    }
    return true;
}

bool solve_lu(const Eigen::MatrixXd& J, const Eigen::VectorXd& rhs,
              Eigen::VectorXd& s) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
    const auto& U = lu.matrixLU();
    double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
    for (int i = 0; i < U.rows(); ++i) {
        const double d = std::abs(U(i, i));
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    if (!(dmax > 0.0) || dmin <= 1e-14 * dmax) return false;
    s = lu.solve(rhs);
    return s.allFinite();
}

} // namespace

SolveReport broyden_solve(const ResidualFn& F, std::vector<double>& x,
                          const SolveOptions& opt) {
    SolveReport rep;
    const int n = static_cast<int>(x.size());

    std::vector<double> f;
    try {
        f = F(x);
        ++rep.evals;
    } catch (...) {
        rep.status = SolveStatus::evaluation_error;
        return rep;
    }
    if (!all_finite(f)) {
        rep.status = SolveStatus::evaluation_error;
        return rep;
    }

    Eigen::MatrixXd J(n, n);
    try {
        if (!fd_jacobian(F, x, f, opt.fd_step, J, rep.evals)) {
            rep.status = SolveStatus::evaluation_error;
            return rep;
        }
    } catch (...) {
        rep.status = SolveStatus::evaluation_error;
        return rep;
    }

    double norm = inf_norm(f);
    bool refreshed = false;
    int increases = 0;

    for (rep.iterations = 0; rep.iterations < opt.max_iter; ++rep.iterations) {
        if (norm <= opt.tol) {
            rep.status = SolveStatus::converged;
            rep.final_norm = norm;
            return rep;
        }

        Eigen::VectorXd rhs(n), s(n);
        for (int i = 0; i < n; ++i) rhs[i] = -f[i];
        if (!solve_lu(J, rhs, s)) {
            rep.status = SolveStatus::singular_update;
            rep.final_norm = norm;
            return rep;
        }

        std::vector<double> xn(n);
        for (int i = 0; i < n; ++i) xn[i] = x[i] + s[i];

        std::vector<double> fn;
        try {
            fn = F(xn);
            ++rep.evals;
        } catch (...) {
            rep.status = SolveStatus::evaluation_error;
            rep.final_norm = norm;
            return rep;
        }
        if (!all_finite(fn)) {
            rep.status = SolveStatus::evaluation_error;
            rep.final_norm = norm;
            return rep;
        }

        const double norm_n = inf_norm(fn);
        if (norm_n > norm) {
            ++increases;
            if (increases >= opt.refresh_after && !refreshed) {
                // one fresh finite-difference Jacobian per solve
                x = xn;
                f = fn;
                norm = norm_n;
                try {
                    if (!fd_jacobian(F, x, f, opt.fd_step, J, rep.evals)) {
                        rep.status = SolveStatus::evaluation_error;
                        rep.final_norm = norm;
                        return rep;
                    }
                } catch (...) {
                    rep.status = SolveStatus::evaluation_error;
                    rep.final_norm = norm;
                    return rep;
                }
                refreshed = true;
                increases = 0;
                continue;
            }
        } else {
            increases = 0;
        }

        // rank-one update J += (y - J s) s^T / (s^T s)
        const double ss = s.squaredNorm();
        if (ss > 0.0 && std::isfinite(ss)) {
            Eigen::VectorXd y(n);
            for (int i = 0; i < n; ++i) y[i] = fn[i] - f[i];
            const Eigen::VectorXd u = (y - J * s) / ss;
            if (u.allFinite()) J.noalias() += u * s.transpose();
        }

        x = xn;
        f = std::move(fn);
        norm = norm_n;
    }

    rep.status = norm <= opt.tol ? SolveStatus::converged : SolveStatus::max_iter;
    rep.final_norm = norm;
    return rep;
}

} // namespace hew
