#include "hewave/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include "hewave/errors.hpp"

namespace hew {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

void check_keys(const json& obj, const char* where,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) { ok = true; break; }
        if (!ok)
            throw config_error(std::string("config: unknown key '") + key +
                               "' in " + where);
    }
}

template <typename T>
void get_if(const json& obj, const char* key, T& dst) {
    if (obj.contains(key)) dst = obj.at(key).get<T>();
}

Termination termination_from(const std::string& s) {
    for (Termination t : {Termination::self_intersection, Termination::return_to_trivial,
                          Termination::unresolved_growth, Termination::max_steps,
                          Termination::step_underflow})
        if (to_string(t) == s) return t;
    throw config_error("branch file: unknown termination label '" + s + "'");
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw config_error(std::string("config: parse failure: ") + e.what());
    }
    RunConfig cfg;
    check_keys(j, "top level",
               {"params", "grid", "seed", "continuation", "atilde_list", "jobs",
                "output_path"});
    if (j.contains("params")) {
        const auto& p = j["params"];
        check_keys(p, "params", {"S", "tau1", "A", "Atilde", "gamma_bar", "M"});
        get_if(p, "S", cfg.params.S);
        get_if(p, "tau1", cfg.params.tau1);
        get_if(p, "A", cfg.params.A);
        get_if(p, "Atilde", cfg.params.Atilde);
        get_if(p, "gamma_bar", cfg.params.gamma_bar);
        get_if(p, "M", cfg.params.M);
    }
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        check_keys(g, "grid", {"n_nodes", "n_modes"});
        bool have_modes = g.contains("n_modes");
        get_if(g, "n_nodes", cfg.grid.n_nodes);
        if (have_modes)
            cfg.grid.n_modes = g.at("n_modes").get<int>();
        else
            cfg.grid.n_modes = cfg.grid.n_nodes / 2 - 1;
        cfg.grid.validate();
    }
    if (j.contains("seed")) {
        const auto& s = j["seed"];
        check_keys(s, "seed", {"k", "sign", "amp0"});
        get_if(s, "k", cfg.seed_k);
        get_if(s, "sign", cfg.seed_sign);
        get_if(s, "amp0", cfg.continuation.amp0);
        if (cfg.seed_sign != 1 && cfg.seed_sign != -1)
            throw config_error("config: seed.sign must be +1 or -1");
        if (cfg.seed_k < 1) throw config_error("config: seed.k must be >= 1");
    }
    if (j.contains("continuation")) {
        const auto& c = j["continuation"];
        check_keys(c, "continuation",
                   {"amp0", "step0", "fourier_step0", "step_floor", "c_trivial_tol",
                    "h_trivial_tol", "tail_tol", "self_intersect_tol", "max_points",
                    "tol", "max_iter", "fd_step", "refresh_after"});
        auto& cc = cfg.continuation;
        get_if(c, "amp0", cc.amp0);
        get_if(c, "step0", cc.step0);
        get_if(c, "fourier_step0", cc.fourier_step0);
        get_if(c, "step_floor", cc.step_floor);
        get_if(c, "c_trivial_tol", cc.c_trivial_tol);
        get_if(c, "h_trivial_tol", cc.h_trivial_tol);
        get_if(c, "tail_tol", cc.tail_tol);
        get_if(c, "self_intersect_tol", cc.self_intersect_tol);
        get_if(c, "max_points", cc.max_points);
        get_if(c, "tol", cc.solver.tol);
        get_if(c, "max_iter", cc.solver.max_iter);
        get_if(c, "fd_step", cc.solver.fd_step);
        get_if(c, "refresh_after", cc.solver.refresh_after);
    }
    if (j.contains("atilde_list"))
        cfg.atilde_list = j.at("atilde_list").get<std::vector<double>>();
    get_if(j, "jobs", cfg.jobs);
    if (cfg.jobs < 1) throw config_error("config: jobs must be >= 1");
    get_if(j, "output_path", cfg.output_path);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw config_error("config: cannot open " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_config_text(text);
}

void write_branch_file(const Branch& br, const std::filesystem::path& file) {
    json j;
    j["format"] = "hewave-branch";
    j["version"] = kCodeVersion;
    j["termination"] = to_string(br.termination);
    j["seed"] = {{"k", br.seed_k}, {"sign", br.seed_sign}};
    j["params"] = {{"S", br.params.S},         {"tau1", br.params.tau1},
                   {"A", br.params.A},         {"Atilde", br.params.Atilde},
                   {"gamma_bar", br.params.gamma_bar}, {"M", br.params.M}};
    j["grid"] = {{"n_nodes", br.grid.n_nodes}, {"n_modes", br.grid.n_modes}};
    json pts = json::array();
    for (const BranchPoint& bp : br.points) {
        json q;
        q["c"] = bp.state.c;
        q["h"] = bp.h;
        q["y0"] = bp.y0;
        q["sigma"] = bp.sigma;
        q["residual"] = bp.residual;
        q["a"] = bp.state.a;
        q["b"] = bp.state.b;
        pts.push_back(std::move(q));
    }
    j["points"] = std::move(pts);
    std::ofstream out(file, std::ios::binary);
    if (!out) throw config_error("cannot open for write: " + file.string());
    out << j.dump(1) << "\n";
}

Branch read_branch_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw config_error("cannot open branch file: " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        throw config_error(std::string("branch file: parse failure: ") + e.what());
    }
    if (!j.contains("format") || j["format"] != "hewave-branch")
        throw config_error("branch file: missing or wrong format tag");
    Branch br;
    br.termination = termination_from(j.at("termination").get<std::string>());
    br.seed_k = j.at("seed").at("k").get<int>();
    br.seed_sign = j.at("seed").at("sign").get<int>();
    const auto& p = j.at("params");
    br.params.S = p.at("S").get<double>();
    br.params.tau1 = p.at("tau1").get<double>();
    br.params.A = p.at("A").get<double>();
    br.params.Atilde = p.at("Atilde").get<double>();
    br.params.gamma_bar = p.at("gamma_bar").get<double>();
    br.params.M = p.at("M").get<double>();
    br.grid.n_nodes = j.at("grid").at("n_nodes").get<int>();
    br.grid.n_modes = j.at("grid").at("n_modes").get<int>();
    br.grid.validate();
    for (const auto& q : j.at("points")) {
        BranchPoint bp;
        bp.state.c = q.at("c").get<double>();
        bp.h = q.at("h").get<double>();
        bp.y0 = q.at("y0").get<double>();
        bp.sigma = q.at("sigma").get<double>();
        bp.residual = q.at("residual").get<double>();
        bp.state.a = q.at("a").get<std::vector<double>>();
        bp.state.b = q.at("b").get<std::vector<double>>();
        if (static_cast<int>(bp.state.a.size()) != br.grid.n_modes ||
            static_cast<int>(bp.state.b.size()) != br.grid.n_modes)
            throw config_error("branch file: point coefficient length mismatch");
        br.points.push_back(std::move(bp));
    }
    return br;
}

void write_speed_amplitude_csv(const Branch& br, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw config_error("cannot open for write: " + file.string());
    out << "index,c,h,y0,sigma,residual\n";
    int i = 0;
    for (const BranchPoint& bp : br.points) {
        out << i++ << ',' << fmt(bp.state.c) << ',' << fmt(bp.h) << ','
            << fmt(bp.y0) << ',' << fmt(bp.sigma) << ',' << fmt(bp.residual)
            << '\n';
    }
}

void write_profile_csvs(const Branch& br, const std::filesystem::path& dir,
                        int max_profiles) {
    if (br.points.empty()) return;
    const int np = static_cast<int>(br.points.size());
    const int nprof = std::min(max_profiles, np);
    for (int s = 0; s < nprof; ++s) {
        const int idx = (nprof == 1) ? np - 1 : (s * (np - 1)) / (nprof - 1);
        const BranchPoint& bp = br.points[idx];
        const rvec theta = nodal_theta(bp.state, br.grid);
        const CurveSample cs = renormalized_curve(theta, br.params.M);
        char name[32];
        std::snprintf(name, sizeof(name), "profile_%03d.csv", idx);
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw config_error("cannot open for write: " + (dir / name).string());
        out << "alpha,x,y\n";
        const auto alpha = br.grid.nodes();
        for (int jj = 0; jj < br.grid.n_nodes; ++jj)
            out << fmt(alpha[jj]) << ',' << fmt(cs.z[jj].real()) << ','
                << fmt(cs.z[jj].imag()) << '\n';
    }
}

int cmd_linear(const RunConfig& cfg, int kmax, std::ostream& out) {
    if (kmax < 1) throw config_error("linear: kmax must be >= 1");
    out << "k,in_K,reason,radicand,c_plus,c_minus,l_k\n";
    for (int k = 1; k <= kmax; ++k) {
        const double rad = c_pm_radicand(k, cfg.params);
        const WaveSpeed cp = c_pm(k, +1, cfg.params);
        const WaveSpeed cm = c_pm(k, -1, cfg.params);
        const double l = real_root_l(k, cfg.params);
        const bool member = in_K(k, cfg.params);
        const char* reason = "ok";
        if (!member) {
            if (rad <= 0.0)
                reason = "nonpositive_radicand";
            else
                reason = "integer_resonance";
        }
        out << k << ',' << (member ? 1 : 0) << ',' << reason << ',' << fmt(rad)
            << ',';
        if (cp.complex_pair)
            out << "complex,complex,";
        else
            out << fmt(cp.c) << ',' << fmt(cm.c) << ',';
        out << fmt(l) << '\n';
    }
    return 0;
}

int cmd_branch(const RunConfig& cfg, std::ostream& log) {
    std::filesystem::create_directories(cfg.output_path);
    Branch br;
    try {
        br = continue_branch(cfg.params, cfg.grid, cfg.seed_k, cfg.seed_sign,
                             cfg.continuation);
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        log << "branch failed: " << e.what() << "\n";
        return 2;
    }
    const std::filesystem::path outdir = cfg.output_path;
    write_branch_file(br, outdir / "branch.json");
    write_speed_amplitude_csv(br, outdir / "speed_amplitude.csv");
    write_profile_csvs(br, outdir);
    log << "points: " << br.points.size()
        << "  termination: " << to_string(br.termination);
    if (!br.points.empty()) {
        const BranchPoint& last = br.points.back();
        log << "  last c: " << last.state.c << "  last h: " << last.h;
    }
    log << "\n";
    return 0;
}

int cmd_surface(const RunConfig& cfg, std::ostream& log) {
    if (cfg.atilde_list.empty())
        throw config_error("surface: atilde_list is empty");
    std::filesystem::create_directories(cfg.output_path);
    std::vector<Branch> branches;
    try {
        branches = sweep_surface(cfg.params, cfg.grid, cfg.seed_k, cfg.seed_sign,
                                 cfg.atilde_list, cfg.continuation, cfg.jobs);
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        log << "surface sweep failed: " << e.what() << "\n";
        return 2;
    }
    const std::filesystem::path outdir = cfg.output_path;
    std::ofstream summary(outdir / "summary.csv", std::ios::binary);
    summary << "index,Atilde,points,termination,last_c,last_h,max_h\n";
    for (size_t i = 0; i < branches.size(); ++i) {
        const Branch& br = branches[i];
        char sub[32];
        std::snprintf(sub, sizeof(sub), "atilde_%03zu", i);
        std::filesystem::create_directories(outdir / sub);
        write_branch_file(br, outdir / sub / "branch.json");
        write_speed_amplitude_csv(br, outdir / sub / "speed_amplitude.csv");
        double max_h = 0.0, last_c = 0.0, last_h = 0.0;
        for (const auto& bp : br.points) max_h = std::max(max_h, bp.h);
        if (!br.points.empty()) {
            last_c = br.points.back().state.c;
            last_h = br.points.back().h;
        }
        summary << i << ',' << fmt(cfg.atilde_list[i]) << ',' << br.points.size()
                << ',' << to_string(br.termination) << ',' << fmt(last_c) << ','
                << fmt(last_h) << ',' << fmt(max_h) << '\n';
        log << "Atilde=" << cfg.atilde_list[i] << " points=" << br.points.size()
            << " termination=" << to_string(br.termination) << "\n";
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::filesystem::path& branch_file,
               std::ostream& out) {
    const Branch br = read_branch_file(branch_file);
    const double flag_tol = 10.0 * cfg.continuation.solver.tol;
    double worst = 0.0, worst_fine = 0.0;
    int flagged = 0;
    GridSpec fine{2 * br.grid.n_nodes, br.grid.n_modes};
    for (size_t i = 0; i < br.points.size(); ++i) {
        const BranchPoint& bp = br.points[i];
        ConstraintSpec con;
        con.kind = ConstraintKind::displacement_y0;
        con.target = bp.y0;
        const double r =
            eval_residual(bp.state, con, br.params, br.grid).inf_norm();
        // same coefficients on a grid with twice the nodes: quadrature and
        // aliasing content changes, so this measures resolution honesty
        WaveState wf = bp.state;
        const double rf = eval_residual(wf, con, br.params, fine).inf_norm();
        worst = std::max(worst, r);
        worst_fine = std::max(worst_fine, rf);
        if (r > flag_tol) {
            ++flagged;
            out << "point " << i << ": residual " << fmt(r) << " exceeds "
                << fmt(flag_tol) << "\n";
        }
    }
    out << "points: " << br.points.size() << "\n";
    out << "max residual at stored resolution: " << fmt(worst) << "\n";
    out << "max residual at doubled nodes:     " << fmt(worst_fine) << "\n";
    out << "flagged: " << flagged << "\n";
    return flagged == 0 ? 0 : 2;
}

} // namespace hew
