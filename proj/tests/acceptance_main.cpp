// Release gate: every check prints one [PASS]/[FAIL] line with its measured
// numbers; the process exits nonzero when any check fails.
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hewave/birkhoff_rott.hpp"
#include "hewave/broyden.hpp"
#include "hewave/continuation.hpp"
#include "hewave/io.hpp"
#include "oracles.hpp"

using namespace hew;
namespace fs = std::filesystem;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double max_abs_diff(const rvec& x, const rvec& y) {
    double m = 0.0;
    for (size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

std::string num(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << std::scientific << v;
    return ss.str();
}

// ---- 1: closed-form speeds and growth symbol against independent numerics --

Outcome check_linear_theory() {
    double worst_speed = 0.0, worst_sym = 0.0;
    int speed_cases = 0, sym_cases = 0, reality_mismatch = 0;
    for (double S : {0.1, 0.25, 1.0})
        for (double t1 : {1.0, 2.0})
            for (double A : {-1.0, 0.0, 1.0})
                for (double gb : {0.0, 0.5}) {
                    PhysParams p;
                    p.S = S;
                    p.tau1 = t1;
                    p.A = A;
                    p.gamma_bar = gb;
                    p.M = two_pi;
                    for (int k = 1; k <= 10; ++k) {
                        double cm = 0.0, cp = 0.0;
                        const bool oracle_real =
                            oracle::speed_roots_bisect(k, p, cm, cp);
                        const WaveSpeed wp = c_pm(k, +1, p);
                        const WaveSpeed wm = c_pm(k, -1, p);
                        if (oracle_real != !wp.complex_pair) {
                            ++reality_mismatch;
                            continue;
                        }
                        std::vector<double> c_samples{0.37, -1.25};
                        if (oracle_real) {
                            worst_speed =
                                std::max({worst_speed, std::abs(wp.c - cp),
                                          std::abs(wm.c - cm)});
                            ++speed_cases;
                            c_samples.push_back(wp.c);
                            c_samples.push_back(wm.c);
                        }
                        for (double c : c_samples) {
                            const auto ev =
                                oracle::symbol_matrix_eigenvalues(k, c, p);
                            const double lk = lambda_k(k, c, p);
                            const double d1 =
                                std::abs(ev[0] - 1.0) + std::abs(ev[1] - lk);
                            const double d2 =
                                std::abs(ev[1] - 1.0) + std::abs(ev[0] - lk);
                            worst_sym = std::max(worst_sym, std::min(d1, d2));
                            ++sym_cases;
                        }
                    }
                }
    Outcome out;
    out.pass = worst_speed <= 1e-10 && worst_sym <= 1e-10 && reality_mismatch == 0 &&
               speed_cases > 0;
    out.detail = "speed dev " + num(worst_speed) + " over " +
                 std::to_string(speed_cases) + " cases, symbol dev " +
                 num(worst_sym) + " over " + std::to_string(sym_cases) +
                 ", reality mismatches " + std::to_string(reality_mismatch);
    return out;
}

// ---- 2: operator identities at n = 128 ------------------------------------

Outcome check_operator_identities() {
    const int n = 128;
    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_rt = 0.0, worst_h = 0.0, worst_d4 = 0.0, worst_d4f = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        rvec f(n);
        for (double& v : f) v = u(gen);
        // full-band round trip
        const rvec back = to_nodes(to_modes(f));
        worst_rt = std::max(worst_rt, max_abs_diff(back, f));
        // H^2 = -P on the resolved band (the unpaired top bin carries no
        // consistent sign of k, so draws avoid it)
        rvec a(n / 2 - 1), b(n / 2 - 1);
        for (double& v : a) v = u(gen);
        for (double& v : b) v = u(gen);
        rvec g = synth_sine(a, n);
        const rvec gc = synth_cosine(b, n);
        for (int j = 0; j < n; ++j) g[j] += gc[j] + 0.37;
        const rvec hh = hilbert(hilbert(g));
        const rvec pg = project_zero_mean(g);
        for (int j = 0; j < n; ++j)
            worst_h = std::max(worst_h, std::abs(hh[j] + pg[j]));
        // derivative against its inverse on a low-band field; composed the
        // other way the second transform's rounding reenters scaled by
        // (n/2)^4 ~ 2e7, flooring near 1e-9, so that order gets a floor bound
        rvec al(n / 2 - 1, 0.0), bl(n / 2 - 1, 0.0);
        for (int k = 0; k < 5; ++k) {
            al[k] = u(gen);
            bl[k] = u(gen);
        }
        rvec fl = synth_sine(al, n);
        const rvec gl = synth_cosine(bl, n);
        for (int j = 0; j < n; ++j) fl[j] += gl[j] + 0.37;
        const rvec pfl = project_zero_mean(fl);
        worst_d4 = std::max(worst_d4,
                            max_abs_diff(inv_deriv4(deriv(fl, 4)), pfl));
        worst_d4f = std::max(worst_d4f,
                             max_abs_diff(deriv(inv_deriv4(fl), 4), pfl));
    }
    Outcome out;
    out.pass = worst_rt <= 1e-12 && worst_h <= 1e-12 && worst_d4 <= 1e-12 &&
               worst_d4f <= 1e-8;
    out.detail = "round trip " + num(worst_rt) + ", H^2+P " + num(worst_h) +
                 ", inv o d4 " + num(worst_d4) + ", d4 o inv " + num(worst_d4f) +
                 " (floor bound 1e-8)";
    return out;
}

// ---- 3: the flat state is an exact solution -------------------------------

Outcome check_flat_residual() {
    const GridSpec grid{128, 63};
    std::mt19937 gen(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        PhysParams p;
        p.S = 0.05 + 1.95 * u(gen);
        p.tau1 = 0.5 + 2.5 * u(gen);
        p.A = -1.0 + 2.0 * u(gen);
        p.Atilde = u(gen);
        p.gamma_bar = -1.0 + 2.0 * u(gen);
        p.M = 2.0 + 8.0 * u(gen);
        WaveState w;
        w.a.assign(grid.n_modes, 0.0);
        w.b.assign(grid.n_modes, 0.0);
        w.c = -3.0 + 6.0 * u(gen);
        ConstraintSpec con; // displacement target 0
        worst = std::max(worst, eval_residual(w, con, p, grid).inf_norm());
    }
    Outcome out;
    out.pass = worst <= 1e-13;
    out.detail = "worst inf-norm " + num(worst) + " over 20 draws";
    return out;
}

// ---- 4: quadratic departure along the null direction ----------------------

Outcome check_linearization_scaling() {
    PhysParams p;
    p.S = 0.25;
    p.tau1 = 2.0;
    p.A = 1.0;
    p.Atilde = 0.2;
    p.gamma_bar = 0.0;
    p.M = two_pi;
    const GridSpec grid{128, 63};
    const LinearMode mode = eigen_direction(1, +1, p, grid);
    auto norm_at = [&](double eps) {
        const WaveState w = seed_state(mode, eps);
        ConstraintSpec con;
        con.kind = ConstraintKind::fourier_mode;
        con.mode_index = 1;
        con.target = w.a[0];
        return eval_residual(w, con, p, grid).inf_norm();
    };
    const double r1 = norm_at(1e-4);
    const double r2 = norm_at(5e-5);
    const double ratio = r1 / r2;
    Outcome out;
    out.pass = ratio >= 3.5 && ratio <= 4.5;
    out.detail = "halving ratio " + num(ratio) + " (r(1e-4) = " + num(r1) + ")";
    return out;
}

// ---- 5: singular quadrature against refined principal value ---------------

Outcome check_quadrature() {
    const int n = 64;
    const CurveSample flat = renormalized_curve(rvec(n, 0.0), two_pi);
    rvec g(n);
    for (int j = 0; j < n; ++j) g[j] = std::cos(two_pi * j / n);
    const cvec W = birkhoff_rott(flat, g);
    const cvec Wq = oracle::wstar_quadrature([](double) { return 0.0; },
                                             [](double a) { return std::cos(a); },
                                             two_pi, n, 8);
    double flat_dev = 0.0;
    for (int j = 0; j < n; ++j)
        flat_dev = std::max(flat_dev, std::abs(W[j] - Wq[j]));

    auto wstar_at = [](int nn) {
        rvec th(nn), gg(nn);
        for (int j = 0; j < nn; ++j) {
            const double a = two_pi * j / nn;
            th[j] = 0.2 * std::sin(a);
            gg[j] = 1.0 + 0.3 * std::cos(a);
        }
        return birkhoff_rott(renormalized_curve(th, two_pi), gg);
    };
    const cvec Wref = wstar_at(256);
    auto err_at = [&](int nn) {
        const cvec Wc = wstar_at(nn);
        const int stride = 256 / nn;
        double m = 0.0;
        for (int j = 0; j < nn; ++j)
            m = std::max(m, std::abs(Wc[j] - Wref[j * stride]));
        return m;
    };
    // entire data converges so fast the rule hits rounding within one or two
    // doublings; demand the tenfold gain until the error sits on that floor
    const double errs[4] = {err_at(8), err_at(16), err_at(32), err_at(64)};
    constexpr double floor_lvl = 1e-12;
    bool doubling_ok = true;
    bool genuine_gain = false;
    for (int i = 0; i + 1 < 4; ++i) {
        const double gain = errs[i] / errs[i + 1];
        if (gain >= 10.0) genuine_gain = true;
        else if (errs[i + 1] > floor_lvl) doubling_ok = false;
    }
    Outcome out;
    out.pass = flat_dev <= 1e-10 && doubling_ok && genuine_gain;
    out.detail = "flat dev " + num(flat_dev) + ", self-errors " + num(errs[0]) +
                 " " + num(errs[1]) + " " + num(errs[2]) + " " + num(errs[3]) +
                 " (floor 1e-12)";
    return out;
}

// ---- 6: the reference branch walks to self-intersection -------------------

Outcome check_reference_branch(const RunConfig& cfg, Branch& branch_out) {
    const auto t0 = std::chrono::steady_clock::now();
    branch_out = continue_branch(cfg.params, cfg.grid, cfg.seed_k, cfg.seed_sign,
                                 cfg.continuation);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const Branch& br = branch_out;

    double worst_res = 0.0;
    bool c_monotone = true;
    for (size_t i = 0; i < br.points.size(); ++i) {
        worst_res = std::max(worst_res, br.points[i].residual);
        if (i > 0 &&
            br.points[i].state.c > br.points[i - 1].state.c + 1e-12)
            c_monotone = false;
    }
    // the fold shows up as the branch turning vertical in the displacement
    // parameter: the march has to halve its step, and the speed drop per unit
    // displacement blows up by orders of magnitude over the last step
    const size_t np = br.points.size();
    bool step_halved = false;
    double slope_ratio = 0.0;
    if (np >= 12) {
        const double dy_first = br.points[1].y0 - br.points[0].y0;
        double dy_min = dy_first;
        for (size_t i = 2; i < np; ++i)
            dy_min = std::min(dy_min, br.points[i].y0 - br.points[i - 1].y0);
        step_halved = dy_min < 0.6 * dy_first;
        const double early = std::abs(br.points[10].state.c - br.points[0].state.c) /
                             (br.points[10].y0 - br.points[0].y0);
        const double late =
            std::abs(br.points[np - 1].state.c - br.points[np - 2].state.c) /
            (br.points[np - 1].y0 - br.points[np - 2].y0);
        slope_ratio = late / std::max(early, 1e-300);
    }
    const bool folded = step_halved && slope_ratio >= 100.0;

    Outcome out;
    out.pass = br.termination == Termination::self_intersection &&
               worst_res <= 1e-9 && c_monotone && folded && secs <= 600.0;
    out.detail = std::to_string(np) + " points, termination " +
                 to_string(br.termination) + ", worst residual " +
                 num(worst_res) + ", speed monotone " +
                 (c_monotone ? "yes" : "no") + ", fold: step halved " +
                 (step_halved ? "yes" : "no") + ", end slope ratio " +
                 num(slope_ratio) + ", " + num(secs) + " s";
    return out;
}

// ---- 7: final quarter reproduced at doubled resolution --------------------

Outcome check_resolution_study(const RunConfig& cfg, const Branch& br) {
    if (br.points.empty())
        return {false, "reference branch unavailable"};
    const auto t0 = std::chrono::steady_clock::now();
    const GridSpec fine = GridSpec::with_nodes(2 * cfg.grid.n_nodes);
    const int np = static_cast<int>(br.points.size());
    const int first = (3 * np) / 4;
    // the last points sit on the verge of touching; once the chord-arc ratio
    // collapses the coarse quadrature itself is only good to ~1e-5, so the
    // comparison covers the part of the quarter both grids resolve
    std::vector<int> eligible;
    int skipped_pinch = 0;
    for (int idx = first; idx < np; ++idx) {
        const CurveSample cs = renormalized_curve(
            nodal_theta(br.points[idx].state, cfg.grid), cfg.params.M);
        if (chord_arc_min(cs) >= 0.2)
            eligible.push_back(idx);
        else
            ++skipped_pinch;
    }
    if (eligible.empty()) return {false, "no resolvable points in final quarter"};
    const int ne = static_cast<int>(eligible.size());
    std::vector<int> picks;
    for (int s = 0; s < 6; ++s) {
        const int idx = eligible[((ne - 1) * s) / 5];
        if (picks.empty() || picks.back() != idx) picks.push_back(idx);
    }
    double worst = 0.0;
    int solved = 0;
    for (int idx : picks) {
        const BranchPoint& bp = br.points[idx];
        WaveState w;
        w.a.assign(fine.n_modes, 0.0);
        w.b.assign(fine.n_modes, 0.0);
        std::copy(bp.state.a.begin(), bp.state.a.end(), w.a.begin());
        std::copy(bp.state.b.begin(), bp.state.b.end(), w.b.begin());
        w.c = bp.state.c;
        ConstraintSpec con;
        con.kind = ConstraintKind::fourier_mode;
        con.mode_index = 1;
        con.target = bp.state.a[0];
        auto F = [&](const std::vector<double>& x) {
            return pack_residual(
                eval_residual(unpack_state(x, fine.n_modes), con, cfg.params, fine));
        };
        std::vector<double> x = pack_state(w);
        const SolveReport rep = broyden_solve(F, x, cfg.continuation.solver);
        if (!rep.ok())
            return {false, "refined solve failed at branch point " +
                               std::to_string(idx)};
        ++solved;
        w = unpack_state(x, fine.n_modes);

        const CurveSample coarse =
            renormalized_curve(nodal_theta(bp.state, cfg.grid), cfg.params.M);
        const CurveSample fine_cs =
            renormalized_curve(nodal_theta(w, fine), cfg.params.M);
        for (int j = 0; j < cfg.grid.n_nodes; ++j) {
            worst = std::max(worst,
                             std::abs(fine_cs.z[2 * j] - coarse.z[j]));
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    Outcome out;
    out.pass = worst <= 1e-6 && solved == static_cast<int>(picks.size()) &&
               secs <= 1200.0;
    out.detail = "profile dev " + num(worst) + " over " +
                 std::to_string(solved) + " re-solved points, " +
                 std::to_string(skipped_pinch) + " near-pinch points excluded, " +
                 num(secs) + " s";
    return out;
}

// ---- 10: byte-identical outputs for identical configs ---------------------

Outcome check_determinism(const RunConfig& base, const fs::path& workdir) {
    RunConfig cfg = base;
    cfg.continuation.max_points = 20;
    auto run_to = [&](const char* sub) {
        RunConfig c = cfg;
        c.output_path = (workdir / sub).string();
        std::ostringstream log;
        if (cmd_branch(c, log) != 0) return std::string();
        return c.output_path + "/branch.json";
    };
    const std::string f1 = run_to("det_a");
    const std::string f2 = run_to("det_b");
    if (f1.empty() || f2.empty()) return {false, "branch run failed"};
    std::ifstream a(f1, std::ios::binary), b(f2, std::ios::binary);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    const bool same = sa.str() == sb.str() && !sa.str().empty();
    Outcome out;
    out.pass = same;
    out.detail = same ? "branch files byte-identical (" +
                            std::to_string(sa.str().size()) + " bytes)"
                      : "branch files differ";
    return out;
}

} // namespace

int main(int argc, char** argv) {
    fs::path data_dir = "tests/data";
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--data-dir") == 0) data_dir = argv[i + 1];

    RunConfig ref;
    try {
        ref = load_config(data_dir / "reference_branch.json");
    } catch (const std::exception& e) {
        std::cout << "[FAIL] setup: cannot load reference config: " << e.what()
                  << "\n";
        return 1;
    }
    const fs::path workdir = fs::temp_directory_path() / "hewave_acceptance";
    fs::create_directories(workdir);

    int failures = 0;
    Branch reference_branch;
    const auto report = [&](int number, const char* name,
                            const std::function<Outcome()>& fn) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << number
                  << ": " << name << " (" << o.detail << ")\n"
                  << std::flush;
        if (!o.pass) ++failures;
    };

    report(1, "linear theory exactness", check_linear_theory);
    report(2, "operator identities", check_operator_identities);
    report(3, "flat-state residual", check_flat_residual);
    report(4, "linearization consistency", check_linearization_scaling);
    report(5, "singular quadrature oracle", check_quadrature);
    report(6, "reference branch reproduction",
           [&] { return check_reference_branch(ref, reference_branch); });
    report(7, "doubled-resolution study",
           [&] { return check_resolution_study(ref, reference_branch); });
    report(10, "run-to-run determinism",
           [&] { return check_determinism(ref, workdir); });

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                                : std::to_string(failures) + " CRITERIA FAILED")
              << " (criteria 8 and 9 run in the extended binary)\n";
    return failures == 0 ? 0 : 1;
}
