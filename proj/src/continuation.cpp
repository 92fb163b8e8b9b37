#include "hewave/continuation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include "hewave/errors.hpp"

namespace hew {

std::string to_string(Termination t) {
    switch (t) {
    case Termination::self_intersection: return "self_intersection";
    case Termination::return_to_trivial: return "return_to_trivial";
    case Termination::unresolved_growth: return "unresolved_growth";
    case Termination::max_steps: return "max_steps";
    case Termination::step_underflow: return "step_underflow";
    }
    return "unknown";
}

WaveState seed_state(const LinearMode& mode, double amp0) {
    WaveState w;
    w.a.resize(mode.a_dir.size());
    w.b.resize(mode.b_dir.size());
    for (size_t i = 0; i < w.a.size(); ++i) w.a[i] = amp0 * mode.a_dir[i];
    for (size_t i = 0; i < w.b.size(); ++i) w.b[i] = amp0 * mode.b_dir[i];
    w.c = mode.c;
    return w;
}

namespace {

struct PointInfo {
    double y0, h, sigma, chord_arc, tail;
};

PointInfo inspect(const WaveState& w, const PhysParams& p, const GridSpec& grid) {
    const rvec theta = nodal_theta(w, grid);
    const CurveSample cs = renormalized_curve(theta, p.M);
    const DisplacementStats ds = displacement_stats(cs);
    PointInfo info;
    info.y0 = ds.y0;
    info.h = ds.h;
    info.sigma = cs.sigma;
    info.chord_arc = chord_arc_min(cs);
    const int N = static_cast<int>(w.a.size());
    const int tail_len = std::max(1, N / 10);
    double acc = 0.0;
    for (int i = N - tail_len; i < N; ++i) acc += std::abs(w.a[i]);
    info.tail = acc / tail_len;
    return info;
}

SolveReport solve_state(WaveState& w, const ConstraintSpec& con, const PhysParams& p,
                        const GridSpec& grid, const SolveOptions& opt) {
    const int N = grid.n_modes;
    auto F = [&](const std::vector<double>& x) {
        const WaveState trial = unpack_state(x, N);
        return pack_residual(eval_residual(trial, con, p, grid));
    };
    std::vector<double> x = pack_state(w);
    const SolveReport rep = broyden_solve(F, x, opt);
    if (rep.ok()) w = unpack_state(x, N);
    return rep;
}

} // namespace

Branch continue_branch(const PhysParams& p, const GridSpec& grid, int seed_k,
                       int seed_sign, const ContinuationConfig& cfg) {
    grid.validate();
    if (!in_K(seed_k, p))
        throw config_error("continue_branch: seed wavenumber is not a simple "
                           "one-dimensional bifurcation for these parameters");

    Branch br;
    br.params = p;
    br.grid = grid;
    br.seed_k = seed_k;
    br.seed_sign = seed_sign;

    const LinearMode mode = eigen_direction(seed_k, seed_sign, p, grid);
    WaveState w = seed_state(mode, cfg.amp0);

    ConstraintSpec con;
    con.kind = ConstraintKind::displacement_y0;
    con.target = inspect(w, p, grid).y0;

    SolveReport rep = solve_state(w, con, p, grid, cfg.solver);
    if (!rep.ok())
        throw config_error("continue_branch: seed solve failed");

    bool h_was_large = false;
    const auto record = [&](const SolveReport& r) -> bool {
        // returns true when the branch is finished
        const PointInfo info = inspect(w, p, grid);
        br.points.push_back({w, info.y0, info.h, info.sigma, r.final_norm});
        if (info.chord_arc < cfg.self_intersect_tol) {
            br.termination = Termination::self_intersection;
            return true;
        }
        if (info.h > 10.0 * cfg.h_trivial_tol) h_was_large = true;
        if (std::abs(w.c) <= cfg.c_trivial_tol ||
            (h_was_large && info.h <= cfg.h_trivial_tol)) {
            br.termination = Termination::return_to_trivial;
            return true;
        }
        if (info.tail > cfg.tail_tol) {
            br.termination = Termination::unresolved_growth;
            return true;
        }
        if (static_cast<int>(br.points.size()) >= cfg.max_points) {
            br.termination = Termination::max_steps;
            return true;
        }
        return false;
    };

    if (record(rep)) return br;

    // displacement phase first; on step underflow constrain sine coefficients,
    // climbing to higher modes if those stall too
    int fourier_mode = 0; // 0 = displacement
    double value = con.target;
    double step = cfg.step0 * (value >= 0.0 ? 1.0 : -1.0);
    double step_cap = cfg.step0;
    int streak = 0;

    const auto switch_phase = [&]() -> bool {
        // returns false when no phase is left
        ++fourier_mode;
        if (fourier_mode > grid.n_modes) return false;
        value = w.a[fourier_mode - 1];
        double trend = 0.0;
        const size_t np = br.points.size();
        if (np >= 2)
            trend = br.points[np - 1].state.a[fourier_mode - 1] -
                    br.points[np - 2].state.a[fourier_mode - 1];
        double dir;
        if (trend != 0.0)
            dir = trend > 0.0 ? 1.0 : -1.0;
        else if (value != 0.0)
            dir = value > 0.0 ? 1.0 : -1.0;
        else
            dir = 1.0;
        step = cfg.fourier_step0 * dir;
        step_cap = cfg.fourier_step0;
        streak = 0;
        con.kind = ConstraintKind::fourier_mode;
        con.mode_index = fourier_mode;
        return true;
    };

    while (true) {
        WaveState trial = w;
        con.target = value + step;
        bool ok = false;
        try {
            rep = solve_state(trial, con, p, grid, cfg.solver);
            ok = rep.ok();
        } catch (const quadrature_error&) {
            ok = false; // trial walked into a pinching curve; back off
        }
        if (ok) {
            w = trial;
            value = con.target;
            if (record(rep)) return br;
            // a halved step earns its size back after sustained success
            if (++streak >= 5 && std::abs(step) < step_cap) {
                step = std::clamp(2.0 * step, -step_cap, step_cap);
                streak = 0;
            }
            continue;
        }
        streak = 0;
        step *= 0.5;
        if (std::abs(step) >= cfg.step_floor) continue;
        if (!switch_phase()) {
            br.termination = Termination::step_underflow;
            return br;
        }
    }
}

std::vector<Branch> sweep_surface(const PhysParams& base, const GridSpec& grid,
                                  int seed_k, int seed_sign,
                                  const std::vector<double>& atilde_values,
                                  const ContinuationConfig& cfg, int jobs) {
    const int nb = static_cast<int>(atilde_values.size());
    std::vector<Branch> out(nb);
    std::vector<std::exception_ptr> errs(nb);
    std::atomic<int> next{0};
    const int workers = std::clamp(jobs, 1, std::max(1, nb));

    auto run = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= nb) return;
            PhysParams p = base;
            p.Atilde = atilde_values[i];
            try {
                out[i] = continue_branch(p, grid, seed_k, seed_sign, cfg);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };

    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace hew
