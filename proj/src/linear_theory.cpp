#include "hewave/linear_theory.hpp"

#include <cmath>
#include <numbers>
#include "hewave/errors.hpp"

namespace hew {

namespace {
constexpr double pi = std::numbers::pi;
}

double lambda_k(int k, double c, const PhysParams& p) {
    const double M = p.M, S = p.S, t1 = p.tau1, A = p.A, gb = p.gamma_bar;
    const double kd = k;
    const double k2 = kd * kd, k3 = k2 * kd, k4 = k3 * kd;
    return 1.0 + (M * M * t1 / (4.0 * pi * pi)) / k2 +
           ((-c * c * M * M * M + 2.0 * A * c * gb * M * M * pi -
             gb * gb * M * pi * pi) /
            (4.0 * pi * pi * pi * S)) /
               k3 +
           (A * M * M * M * M / (8.0 * pi * pi * pi * pi * S)) / k4;
}

double c_pm_radicand(int k, const PhysParams& p) {
    // the four terms nearly cancel when the speed pair sits close to
    // coalescence, and the speeds then amplify any radicand error by
    // 1/sqrt; extended precision keeps the cancellation harmless
    const long double M = p.M, S = p.S, t1 = p.tau1, A = p.A, gb = p.gamma_bar;
    const long double kd = k;
    const long double pl = std::numbers::pi_v<long double>;
    const long double pi2 = pl * pl, pi3 = pi2 * pl, pi4 = pi2 * pi2;
    const long double v =
        A * M * M * M * M +
        (-2.0L * gb * gb * M * pi3 + 2.0L * A * A * gb * gb * M * pi3) * kd +
        2.0L * M * M * pi2 * S * t1 * kd * kd +
        8.0L * pi4 * S * kd * kd * kd * kd;
    return static_cast<double>(v);
}

WaveSpeed c_pm(int k, int sign, const PhysParams& p) {
    const double rad = c_pm_radicand(k, p) / (2.0 * k * p.M * p.M * p.M * pi);
    WaveSpeed w;
    if (rad < 0.0) {
        w.complex_pair = true;
        w.c = p.A * p.gamma_bar * pi / p.M; // real part of the pair
        return w;
    }
    w.c = p.A * p.gamma_bar * pi / p.M + sign * std::sqrt(rad);
    return w;
}

namespace {

// resonance cubic p(l; k); leading coefficient 8 k pi^4 S > 0
double resonance_poly(double l, int k, const PhysParams& p) {
    const double M = p.M, S = p.S, t1 = p.tau1, A = p.A;
    const double kd = k;
    const double pi2 = pi * pi;
    return -A * M * M * M * M +
           2.0 * kd * l * pi2 * S * (4.0 * (kd * kd + kd * l + l * l) * pi2 + M * M * t1);
}

} // namespace

double real_root_l(int k, const PhysParams& p) {
    if (p.S <= 0.0) throw config_error("real_root_l: requires S > 0");
    // bracket the sign change, then bisect to machine precision
    double lo = -1.0, hi = 1.0;
    int guard = 0;
    while (resonance_poly(lo, k, p) > 0.0) {
        lo *= 2.0;
        if (++guard > 600) throw config_error("real_root_l: no lower bracket");
    }
    guard = 0;
    while (resonance_poly(hi, k, p) < 0.0) {
        hi *= 2.0;
        if (++guard > 600) throw config_error("real_root_l: no upper bracket");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (resonance_poly(mid, k, p) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

bool in_K(int k, const PhysParams& p, double integer_tol) {
    if (c_pm_radicand(k, p) <= 0.0) return false; // strict positivity required
    const double l = real_root_l(k, p);
    const double nearest = std::round(l);
    if (nearest >= 1.0 && std::abs(l - nearest) <= integer_tol &&
        static_cast<int>(nearest) != k)
        return false; // resonant second kernel direction
    return true;
}

double lambda_perturb(int k, int sign, double eps, const PhysParams& p) {
    const double M = p.M, S = p.S;
    const double k3 = double(k) * k * k;
    const double M3 = M * M * M;
    const double pi3 = pi * pi * pi;
    const double root = std::sqrt(c_pm_radicand(k, p) / (2.0 * k * M3 * pi));
    return -sign * (M3 / (2.0 * k3 * pi3 * S)) * root * eps -
           (M3 / (4.0 * k3 * pi3 * S)) * eps * eps;
}

LinearMode eigen_direction(int k, int sign, const PhysParams& p, const GridSpec& grid) {
    grid.validate();
    if (k < 1 || k > grid.n_modes)
        throw config_error("eigen_direction: k outside retained modes");
    const WaveSpeed w = c_pm(k, sign, p);
    if (w.complex_pair)
        throw config_error("eigen_direction: speed pair is complex at this k");
    if (w.c == 0.0)
        throw config_error("eigen_direction: bifurcation speed is zero");
    LinearMode m;
    m.k = k;
    m.sign = sign;
    m.c = w.c;
    m.a_dir.assign(grid.n_modes, 0.0);
    m.b_dir.assign(grid.n_modes, 0.0);
    // unit amplitude in theta, overall sign fixed independently of the root:
    // the two speed roots then seed with the same profile and opposite strength
    m.a_dir[k - 1] = -1.0;
    m.b_dir[k - 1] = w.c * p.M / pi; // keeps b/a = -c M / pi
    return m;
}

} // namespace hew
