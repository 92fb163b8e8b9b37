#include "hewave/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include "hewave/errors.hpp"

namespace hew {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double sigma_of_theta(const rvec& theta, double M, double eps_cos) {
    double mc = 0.0;
    for (double t : theta) mc += std::cos(t);
    mc /= static_cast<double>(theta.size());
    if (std::abs(mc) <= eps_cos)
        throw geometry_error("curve length blow-up: <cos theta> ~ 0");
    return M / (two_pi * mc);
}

CurveSample renormalized_curve(const rvec& theta, double M, double eps_cos) {
    const int n = static_cast<int>(theta.size());
    CurveSample cs;
    cs.period = M;
    cs.sigma = sigma_of_theta(theta, M, eps_cos);

    rvec ct(n), st(n);
    for (int j = 0; j < n; ++j) {
        ct[j] = std::cos(theta[j]);
        st[j] = std::sin(theta[j]);
    }
    const double mean_cos = mean(ct);

    // antiderivative of exp(i theta): secular part (mean) + periodic part
    rvec Fx = antideriv_zero_mean(ct);
    rvec Fy = antideriv_zero_mean(st);
    const double Fx0 = Fx[0], Fy0 = Fy[0];

    cs.z.resize(n);
    cs.z_alpha.resize(n);
    cs.tangent.resize(n);
    cs.normal.resize(n);
    double ysum = 0.0;
    for (int j = 0; j < n; ++j) {
        const double alpha = two_pi * j / n;
        const double x = cs.sigma * (mean_cos * alpha + Fx[j] - Fx0);
        // the secular alpha*<sin theta> part of the integral cancels against the
        // renormalization term, so y is the periodic part alone
        const double y = cs.sigma * (Fy[j] - Fy0);
        cs.z[j] = {x, y};
        ysum += y;
        const std::complex<double> t(ct[j], st[j]);
        cs.tangent[j] = t;
        cs.normal[j] = std::complex<double>(0.0, 1.0) * t;
        cs.z_alpha[j] = cs.sigma * t;
    }
    // vertical datum: zero-mean elevation over the nodes
    const double ybar = ysum / n;
    for (auto& zj : cs.z) zj -= std::complex<double>(0.0, ybar);
    return cs;
}

double chord_arc_min(const CurveSample& cs) {
    const int n = static_cast<int>(cs.z.size());
    const double M = cs.period;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        const double aj = two_pi * j / n;
        for (int jp = 0; jp < n; ++jp) {
            const double ap = two_pi * jp / n;
            for (int m = -1; m <= 1; ++m) {
                if (m == 0 && jp == j) continue;
                const double da = std::abs(aj - ap - m * two_pi);
                const std::complex<double> dz = cs.z[j] - cs.z[jp] - double(m) * M;
                const double r = std::abs(dz) / da;
                best = std::min(best, r);
            }
        }
    }
    return best;
}

bool self_intersects(const CurveSample& cs, double tol) {
    return chord_arc_min(cs) < tol;
}

DisplacementStats displacement_stats(const CurveSample& cs) {
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -ymin;
    for (const auto& zj : cs.z) {
        ymin = std::min(ymin, zj.imag());
        ymax = std::max(ymax, zj.imag());
    }
    return {ymax - ymin, cs.z[0].imag()};
}

} // namespace hew
