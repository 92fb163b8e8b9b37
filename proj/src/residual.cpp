#include "hewave/residual.hpp"

#include <algorithm>
#include <cmath>
#include "hewave/birkhoff_rott.hpp"
#include "hewave/errors.hpp"

namespace hew {

double ResidualVector::inf_norm() const {
    double m = std::abs(r_constraint);
    for (double v : r_theta) m = std::max(m, std::abs(v));
    for (double v : r_gamma) m = std::max(m, std::abs(v));
    return m;
}

rvec nodal_theta(const WaveState& w, const GridSpec& grid) {
    return synth_sine(w.a, grid.n_nodes);
}

rvec nodal_gamma(const WaveState& w, const PhysParams& p, const GridSpec& grid) {
    rvec g = synth_cosine(w.b, grid.n_nodes);
    for (double& v : g) v += p.gamma_bar;
    return g;
}

ResidualVector eval_residual(const WaveState& w, const ConstraintSpec& con,
                             const PhysParams& p, const GridSpec& grid) {
    grid.validate();
    const int n = grid.n_nodes;
    const int N = grid.n_modes;
    if (static_cast<int>(w.a.size()) != N || static_cast<int>(w.b.size()) != N)
        throw config_error("eval_residual: state size != n_modes");

    const rvec theta = nodal_theta(w, grid);
    const rvec gamma = nodal_gamma(w, p, grid);
    const CurveSample cs = renormalized_curve(theta, p.M);
    const double sg = cs.sigma;
    const cvec W = birkhoff_rott(cs, gamma);

    rvec cos_t(n), sin_t(n);
    for (int j = 0; j < n; ++j) {
        cos_t[j] = cs.tangent[j].real();
        sin_t[j] = cs.tangent[j].imag();
    }

    // V = c cos(theta) - Re(W* T), the tangential frame speed mismatch
    rvec V(n), VG(n), V2(n), G2(n);
    for (int j = 0; j < n; ++j) {
        const double wt = (W[j] * cs.tangent[j]).real();
        V[j] = w.c * cos_t[j] - wt;
        VG[j] = V[j] * gamma[j];
        V2[j] = V[j] * V[j];
        G2[j] = gamma[j] * gamma[j];
    }

    const rvec th1 = deriv(theta, 1);
    const rvec th2 = deriv(theta, 2);
    const rvec th4 = deriv(theta, 4);
    const rvec dcos = deriv(cos_t, 1);
    const rvec dVG = deriv(VG, 1);
    const rvec dV2 = deriv(V2, 1);
    const rvec dG2 = deriv(G2, 1);

    rvec R1(n), R2(n);
    const double s2 = sg * sg;
    const double s3 = s2 * sg;
    for (int j = 0; j < n; ++j) {
        R1[j] = -(p.S / s3) * (th4[j] + 1.5 * th1[j] * th1[j] * th2[j] -
                               p.tau1 * s2 * th2[j]) -
                2.0 * p.Atilde * dcos[j] + dVG[j] / sg -
                p.A * (dG2[j] / (4.0 * s2) + 2.0 * sg * sin_t[j] + dV2[j]);
        R2[j] = (W[j] * cs.normal[j]).real() + w.c * sin_t[j];
    }

    ResidualVector r;
    r.r_theta = sine_coeffs(R1, N);
    r.r_gamma = sine_coeffs(R2, N);
    switch (con.kind) {
    case ConstraintKind::displacement_y0:
        r.r_constraint = displacement_stats(cs).y0 - con.target;
        break;
    case ConstraintKind::fourier_mode:
        if (con.mode_index < 1 || con.mode_index > N)
            throw config_error("eval_residual: constraint mode_index out of range");
        r.r_constraint = w.a[con.mode_index - 1] - con.target;
        break;
    }
    return r;
}

std::vector<double> pack_state(const WaveState& w) {
    std::vector<double> x;
    x.reserve(w.a.size() + w.b.size() + 1);
    x.insert(x.end(), w.a.begin(), w.a.end());
    x.insert(x.end(), w.b.begin(), w.b.end());
    x.push_back(w.c);
    return x;
}

WaveState unpack_state(const std::vector<double>& x, int n_modes) {
    WaveState w;
    w.a.assign(x.begin(), x.begin() + n_modes);
    w.b.assign(x.begin() + n_modes, x.begin() + 2 * n_modes);
    w.c = x[2 * n_modes];
    return w;
}

std::vector<double> pack_residual(const ResidualVector& r) {
    std::vector<double> f;
    f.reserve(r.r_theta.size() + r.r_gamma.size() + 1);
    f.insert(f.end(), r.r_theta.begin(), r.r_theta.end());
    f.insert(f.end(), r.r_gamma.begin(), r.r_gamma.end());
    f.push_back(r.r_constraint);
    return f;
}

} // namespace hew
