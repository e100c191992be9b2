// canal: canal-surface toolkit CLI.
//
// Subcommands: check, surface, flow, return-map, cycles, sweep, folds,
// constants. All artifacts are deterministic: floats at 17 significant
// digits, no timestamps, and every file carries its resolved configuration.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "canal/family.hpp"
#include "canal/mesh.hpp"
#include "canal/quadrature.hpp"
#include "canal/spec_io.hpp"

namespace fs = std::filesystem;
using canal::fmt17;
using nlohmann::ordered_json;

namespace {

struct SurfaceInput {
    std::string spec_path;
    std::vector<double> torus;   // R, r
    std::vector<double> family;  // eps, rho, mu

    ordered_json resolve() const {
        const int given = (!spec_path.empty()) + (!torus.empty()) +
                          (!family.empty());
        if (given != 1)
            throw canal::InputError(
                "exactly one of --spec, --torus, --family is required");
        if (!torus.empty()) return canal::torus_spec(torus[0], torus[1]);
        if (!family.empty())
            return canal::family_spec(family[0], family[1], family[2]);
        std::ifstream in(spec_path);
        if (!in)
            throw canal::InputError("cannot open spec file '" + spec_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        ordered_json j;
        try {
            j = ordered_json::parse(ss.str());
        } catch (const nlohmann::json::parse_error& e) {
            throw canal::InputError(std::string("spec: JSON parse error: ") +
                                    e.what());
        }
        return j;
    }
};

void add_surface_options(CLI::App* cmd, SurfaceInput& input) {
    cmd->add_option("--spec", input.spec_path, "surface spec JSON file");
    cmd->add_option("--torus", input.torus,
                    "builtin torus: center-circle radius R and tube radius r")
        ->expected(2);
    cmd->add_option(
           "--family", input.family,
           "builtin three-parameter family surface: eps rho mu")
        ->expected(3);
}

struct Tolerances {
    double ode_tol = 1e-10;
    int grid_n = 2048;
    double fold_tol = 1e-9;
    double class_delta = 1e-6;
};

void add_tolerance_options(CLI::App* cmd, Tolerances& tol,
                           std::string& out_dir) {
    cmd->add_option("--out", out_dir,
                    "output directory (default: $CANAL_OUT_DIR or .)")
        ->capture_default_str();
    cmd->add_option("--ode-tol", tol.ode_tol,
                    "ODE rel/abs tolerance, range [1e-13, 1e-6]")
        ->default_val(1e-10)
        ->check(CLI::Range(1e-13, 1e-6));
    cmd->add_option("--grid-n", tol.grid_n, "check-grid density, >= 64")
        ->default_val(2048)
        ->check(CLI::Range(64, 1 << 22));
    cmd->add_option("--fold-tol", tol.fold_tol,
                    "fold residual target on |trace|-2, range [1e-12, 1e-6]")
        ->default_val(1e-9)
        ->check(CLI::Range(1e-12, 1e-6));
    cmd->add_option("--class-delta", tol.class_delta,
                    "trace band half-width for parabolic classification, "
                    "range [1e-12, 1e-3]")
        ->default_val(1e-6)
        ->check(CLI::Range(1e-12, 1e-3));
}

std::string default_out_dir() {
    const char* env = std::getenv("CANAL_OUT_DIR");
    return env ? env : ".";
}

void write_file(const fs::path& path, const std::string& content) {
    if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw canal::Error("cannot open output file " + path.string());
    out << content;
    if (!out) throw canal::Error("write failed for " + path.string());
}

ordered_json base_config(const std::string& subcommand, const Tolerances& tol) {
    ordered_json cfg;
    cfg["subcommand"] = subcommand;
    cfg["ode_tol"] = tol.ode_tol;
    cfg["grid_n"] = tol.grid_n;
    cfg["fold_tol"] = tol.fold_tol;
    cfg["class_delta"] = tol.class_delta;
    return cfg;
}

std::vector<std::string> config_header_lines(const ordered_json& cfg) {
    return {"config: " + cfg.dump()};
}

std::string csv_header(const ordered_json& cfg) {
    return "# config: " + cfg.dump() + "\n";
}

// ---------------------------------------------------------------------------
// SVG rendering (plot-ready convenience output, no plotting dependencies)

std::string svg_open(double w, double h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt17(w) +
           "\" height=\"" + fmt17(h) + "\" viewBox=\"0 0 " + fmt17(w) + " " +
           fmt17(h) + "\">\n";
}

std::string trajectories_svg(const std::vector<canal::Trajectory>& trajs) {
    const double W = 640, H = 420, m = 40;
    double t_max = 1, p_min = 0, p_max = 1;
    bool first = true;
    for (const auto& tr : trajs)
        for (std::size_t i = 0; i < tr.t.size(); ++i) {
            if (first) {
                t_max = tr.t.back();
                p_min = p_max = tr.phi[i];
                first = false;
            }
            t_max = std::max(t_max, tr.t[i]);
            p_min = std::min(p_min, tr.phi[i]);
            p_max = std::max(p_max, tr.phi[i]);
        }
    if (p_max - p_min < 1e-9) p_max = p_min + 1e-9;
    std::string svg = svg_open(W, H);
    svg += "<rect x=\"" + fmt17(m) + "\" y=\"" + fmt17(m) + "\" width=\"" +
           fmt17(W - 2 * m) + "\" height=\"" + fmt17(H - 2 * m) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                            "#9467bd", "#ff7f0e", "#8c564b"};
    int ci = 0;
    for (const auto& tr : trajs) {
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += colors[ci++ % 6];
        svg += "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < tr.t.size(); ++i) {
            const double x = m + (W - 2 * m) * tr.t[i] / t_max;
            const double y =
                H - m - (H - 2 * m) * (tr.phi[i] - p_min) / (p_max - p_min);
            svg += fmt17(x) + "," + fmt17(y) + " ";
        }
        svg += "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::string sweep_svg(const canal::SweepGrid& grid) {
    const double cell = 24, m = 40;
    const double W = m * 2 + cell * static_cast<double>(grid.eps_values.size());
    const double H = m * 2 + cell * static_cast<double>(grid.mu_values.size());
    std::string svg = svg_open(W, H);
    for (std::size_t j = 0; j < grid.mu_values.size(); ++j) {
        for (std::size_t i = 0; i < grid.eps_values.size(); ++i) {
            const canal::SweepCell& c =
                grid.cell(static_cast<int>(i), static_cast<int>(j));
            const char* fill = "#000000";
            if (c.ok) {
                switch (c.classification) {
                    case canal::MapClass::identity: fill = "#bbbbbb"; break;
                    case canal::MapClass::elliptic: fill = "#4878cf"; break;
                    case canal::MapClass::hyperbolic: fill = "#d65f5f"; break;
                    case canal::MapClass::parabolic: fill = "#eecc55"; break;
                }
            }
            const double x = m + cell * static_cast<double>(i);
            const double y = H - m - cell * static_cast<double>(j + 1);
            svg += "<rect x=\"" + fmt17(x) + "\" y=\"" + fmt17(y) +
                   "\" width=\"" + fmt17(cell) + "\" height=\"" + fmt17(cell) +
                   "\" fill=\"" + fill + "\" stroke=\"white\"/>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

// ---------------------------------------------------------------------------

int run_check(const SurfaceInput& input, const Tolerances& tol,
              const std::string& out_dir) {
    const ordered_json spec = input.resolve();
    const canal::CanalSurface surface = canal::parse_surface_spec(spec);
    ordered_json cfg = base_config("check", tol);
    cfg["surface"] = spec;

    const double bireg = canal::biregularity_margin(surface.curve(), tol.grid_n);
    const canal::MarginReport imm = canal::immersion_margin(surface, tol.grid_n);
    const canal::MarginReport umb =
        canal::umbilic_free_margin(surface, tol.grid_n);

    // Equality cases (margin 0 up to roundoff) are reports, not failures.
    const double fail_band = -1e-12;
    const bool ok =
        bireg > fail_band && imm.margin > fail_band && umb.margin > fail_band;

    ordered_json j;
    j["config"] = cfg;
    j["margins"] = {{"biregular", bireg},
                    {"immersion", imm.margin},
                    {"umbilic_free", umb.margin}};
    j["argmin_t"] = {{"immersion", imm.argmin_t},
                     {"umbilic_free", umb.argmin_t}};
    j["status"] = ok ? "ok" : "fail";
    const std::string text = canal::dump_json17(j);
    write_file(fs::path(out_dir) / "check.json", text);
    std::cout << text;
    return ok ? 0 : 1;
}

int run_surface(const SurfaceInput& input, const Tolerances& tol,
                const std::string& out_dir, int nt, int nphi) {
    const ordered_json spec = input.resolve();
    const canal::CanalSurface surface = canal::parse_surface_spec(spec);
    ordered_json cfg = base_config("surface", tol);
    cfg["surface"] = spec;
    cfg["nt"] = nt;
    cfg["nphi"] = nphi;

    const fs::path path = fs::path(out_dir) / "surface.obj";
    if (!path.parent_path().empty())
        fs::create_directories(path.parent_path());
    const canal::MeshStats stats = canal::export_mesh(
        surface, nt, nphi, path.string(), config_header_lines(cfg));
    if (stats.normal_flip_warning)
        std::cerr << "warning: some face normals flip against the analytic "
                     "normal (degenerate surface?)\n";
    ordered_json j;
    j["config"] = cfg;
    j["obj"] = path.string();
    j["vertices"] = stats.vertex_count;
    j["faces"] = stats.face_count;
    std::cout << canal::dump_json17(j);
    return 0;
}

int run_flow(const SurfaceInput& input, const Tolerances& tol,
             const std::string& out_dir, std::vector<double> phi0_list,
             double t1, bool svg) {
    const ordered_json spec = input.resolve();
    const canal::CanalSurface surface = canal::parse_surface_spec(spec);
    const canal::FlowField flow(surface);
    if (phi0_list.empty()) phi0_list = {0.0};
    if (t1 <= 0.0) t1 = surface.period();

    ordered_json cfg = base_config("flow", tol);
    cfg["surface"] = spec;
    cfg["phi0"] = phi0_list;
    cfg["t1"] = t1;

    std::vector<canal::Trajectory> trajectories;
    for (std::size_t k = 0; k < phi0_list.size(); ++k) {
        canal::Trajectory traj = canal::integrate_principal_line(
            flow, 0.0, phi0_list[k], t1, tol.ode_tol);

        std::string csv = csv_header(cfg);
        csv += "t,phi_lifted\n";
        for (std::size_t i = 0; i < traj.t.size(); ++i)
            csv += fmt17(traj.t[i]) + "," + fmt17(traj.phi[i]) + "\n";
        write_file(fs::path(out_dir) / ("flow_" + std::to_string(k) + ".csv"),
                   csv);

        // The same principal line as a 3D polyline through the immersion.
        ordered_json poly;
        poly["config"] = cfg;
        poly["phi0"] = phi0_list[k];
        ordered_json pts = ordered_json::array();
        for (std::size_t i = 0; i < traj.t.size(); ++i) {
            const canal::Vec3 p =
                canal::canal_point(surface, traj.t[i], traj.phi[i]);
            pts.push_back({p.x(), p.y(), p.z()});
        }
        poly["points"] = pts;
        write_file(
            fs::path(out_dir) / ("flow_" + std::to_string(k) + "_polyline.json"),
            canal::dump_json17(poly));
        trajectories.push_back(std::move(traj));
    }
    if (svg)
        write_file(fs::path(out_dir) / "flow.svg",
                   trajectories_svg(trajectories));
    std::cout << "wrote " << phi0_list.size() << " trajectories to " << out_dir
              << "\n";
    return 0;
}

int run_return_map(const SurfaceInput& input, const Tolerances& tol,
                   const std::string& out_dir, bool verify_cycles,
                   const char* artifact) {
    const ordered_json spec = input.resolve();
    const canal::CanalSurface surface = canal::parse_surface_spec(spec);
    const canal::FlowField flow(surface);
    ordered_json cfg = base_config(verify_cycles ? "cycles" : "return-map", tol);
    cfg["surface"] = spec;

    canal::ReturnMapReport rep;
    if (verify_cycles) {
        rep = canal::find_principal_cycles(flow, tol.ode_tol);
    } else {
        const canal::MoebiusFit fit = canal::fit_moebius(flow, tol.ode_tol);
        rep = canal::classify_return_map(fit.map, fit.lift_delta0,
                                         tol.class_delta);
        rep.fit_residual = fit.residual;
    }
    ordered_json j;
    j["config"] = cfg;
    j["report"] = canal::report_to_json(rep);
    if (verify_cycles) j["verified_by_integration"] = true;
    const std::string text = canal::dump_json17(j);
    write_file(fs::path(out_dir) / artifact, text);
    std::cout << text;
    return 0;
}

int run_sweep(const Tolerances& tol, const std::string& out_dir, double rho,
              double eps_min, double eps_max, int n_eps, double mu_min,
              double mu_max, int n_mu, bool svg) {
    ordered_json cfg = base_config("sweep", tol);
    cfg["rho"] = rho;
    cfg["eps_range"] = {eps_min, eps_max};
    cfg["mu_range"] = {mu_min, mu_max};
    cfg["n_eps"] = n_eps;
    cfg["n_mu"] = n_mu;

    const canal::SweepGrid grid =
        canal::tongue_sweep(rho, {eps_min, eps_max}, {mu_min, mu_max}, n_eps,
                            n_mu, tol.ode_tol);
    std::string csv = csv_header(cfg);
    csv += "eps,mu,classification,rotation_number,abs_trace,n_fixed_points\n";
    for (const canal::SweepCell& c : grid.cells) {
        csv += fmt17(c.eps) + "," + fmt17(c.mu) + ",";
        csv += c.ok ? to_string(c.classification) : "error:" + c.error;
        csv += ",";
        csv += c.rotation_number ? fmt17(*c.rotation_number) : "";
        csv += "," + fmt17(c.abs_trace) + "," + std::to_string(c.n_fixed_points);
        csv += "\n";
    }
    write_file(fs::path(out_dir) / "sweep.csv", csv);
    if (svg) write_file(fs::path(out_dir) / "sweep.svg", sweep_svg(grid));
    std::cout << "wrote sweep.csv (" << grid.cells.size() << " cells) to "
              << out_dir << "\n";
    return 0;
}

int run_folds(const Tolerances& tol, const std::string& out_dir, double rho,
              std::vector<double> mu_list, bool ode_tol_given) {
    if (mu_list.empty()) mu_list = {0.02, 0.01, 0.005};
    // Resolving |trace| - 2 to fold_tol needs a tighter ODE tolerance than
    // the flow default; keep the module default unless the user overrides.
    const double ode_tol = ode_tol_given ? tol.ode_tol : 1e-12;
    ordered_json cfg = base_config("folds", tol);
    cfg["ode_tol"] = ode_tol;
    cfg["rho"] = rho;
    cfg["mu"] = mu_list;

    const canal::FoldCurves curves =
        canal::trace_fold_curves(rho, mu_list, ode_tol, tol.fold_tol);
    std::string csv = csv_header(cfg);
    csv += "mu,eps1,eps2,phi_star_1,phi_star_2,residual_1,residual_2\n";
    for (std::size_t i = 0; i < mu_list.size(); ++i) {
        const canal::FoldPoint& lo = curves.lower[i];
        const canal::FoldPoint& hi = curves.upper[i];
        csv += fmt17(lo.mu) + "," + fmt17(lo.eps) + "," + fmt17(hi.eps) + "," +
               fmt17(lo.phi_star) + "," + fmt17(hi.phi_star) + "," +
               fmt17(lo.residual) + "," + fmt17(hi.residual) + "\n";
    }
    write_file(fs::path(out_dir) / "folds.csv", csv);
    std::cout << "wrote folds.csv (" << mu_list.size() << " mu values) to "
              << out_dir << "\n";
    return 0;
}

int run_constants(const Tolerances& tol, const std::string& out_dir) {
    ordered_json cfg = base_config("constants", tol);
    const double C = canal::coupling_constant();
    const double kint = canal::curvature_coupling_integral();
    const double c_closed = canal::torsion_coupling_integral();
    const double c_fd = canal::torsion_coupling_integral_fd();
    ordered_json j;
    j["config"] = cfg;
    j["kint"] = kint;
    j["kint_reference"] = -C;
    j["kint_deviation"] = kint + C;
    j["C"] = c_closed;
    j["C_reference"] = C;
    j["C_deviation"] = c_closed - C;
    j["C_fd"] = c_fd;
    j["C_fd_rel_deviation"] = (c_fd - C) / C;
    const std::string text = canal::dump_json17(j);
    write_file(fs::path(out_dir) / "constants.json", text);
    std::cout << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canal surfaces: envelopes of sphere families, principal "
                 "curvature lines, and their return-map dynamics"};
    app.require_subcommand(1);

    std::string out_dir = default_out_dir();
    SurfaceInput input;
    Tolerances tol;

    auto* c_check = app.add_subcommand(
        "check", "bi-regularity, immersion, and umbilic-freedom margins");
    add_surface_options(c_check, input);
    add_tolerance_options(c_check, tol, out_dir);

    auto* c_surface =
        app.add_subcommand("surface", "export the surface as a Wavefront OBJ");
    add_surface_options(c_surface, input);
    add_tolerance_options(c_surface, tol, out_dir);
    int nt = 64, nphi = 32;
    c_surface->add_option("--nt", nt, "grid points along the curve, >= 3")
        ->default_val(64)
        ->check(CLI::Range(3, 1 << 16));
    c_surface->add_option("--nphi", nphi, "grid points around the tube, >= 3")
        ->default_val(32)
        ->check(CLI::Range(3, 1 << 16));

    auto* c_flow = app.add_subcommand(
        "flow", "integrate minimal-principal lines; CSV + 3D polyline JSON");
    add_surface_options(c_flow, input);
    add_tolerance_options(c_flow, tol, out_dir);
    std::vector<double> phi0_list;
    double t1 = 0.0;
    bool svg = false;
    c_flow->add_option("--phi0", phi0_list, "initial angles (default: 0)");
    c_flow->add_option("--t1", t1, "integration end (default: one period)");
    c_flow->add_flag("--svg", svg, "also render a (t, phi) SVG phase portrait");

    auto* c_rmap = app.add_subcommand(
        "return-map", "fit and classify the Moebius return map");
    add_surface_options(c_rmap, input);
    add_tolerance_options(c_rmap, tol, out_dir);

    auto* c_cycles = app.add_subcommand(
        "cycles", "principal cycles with integration-verified fixed points");
    add_surface_options(c_cycles, input);
    add_tolerance_options(c_cycles, tol, out_dir);

    auto* c_sweep = app.add_subcommand(
        "sweep", "classify the return map over an (eps, mu) grid");
    add_tolerance_options(c_sweep, tol, out_dir);
    double rho = 0.1, eps_min = -0.03, eps_max = 0.03, mu_min = 0.0,
           mu_max = 0.02;
    int n_eps = 13, n_mu = 5;
    c_sweep->add_option("--rho", rho, "base radius")->default_val(0.1);
    c_sweep->add_option("--eps-min", eps_min)->default_val(-0.03);
    c_sweep->add_option("--eps-max", eps_max)->default_val(0.03);
    c_sweep->add_option("--n-eps", n_eps, ">= 2")
        ->default_val(13)
        ->check(CLI::Range(2, 4096));
    c_sweep->add_option("--mu-min", mu_min)->default_val(0.0);
    c_sweep->add_option("--mu-max", mu_max)->default_val(0.02);
    c_sweep->add_option("--n-mu", n_mu, ">= 2")
        ->default_val(5)
        ->check(CLI::Range(2, 4096));
    c_sweep->add_flag("--svg", svg, "also render a classification heatmap SVG");

    auto* c_folds = app.add_subcommand(
        "folds", "trace the double-cycle curves eps1(mu), eps2(mu)");
    add_tolerance_options(c_folds, tol, out_dir);
    std::vector<double> mu_list;
    c_folds->add_option("--rho", rho, "base radius")->default_val(0.1);
    c_folds->add_option("--mu", mu_list, "mu values (default: 0.02 0.01 0.005)");

    auto* c_constants = app.add_subcommand(
        "constants", "variational coupling integrals and their deviations");
    add_tolerance_options(c_constants, tol, out_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_check->parsed()) return run_check(input, tol, out_dir);
        if (c_surface->parsed())
            return run_surface(input, tol, out_dir, nt, nphi);
        if (c_flow->parsed())
            return run_flow(input, tol, out_dir, phi0_list, t1, svg);
        if (c_rmap->parsed())
            return run_return_map(input, tol, out_dir, false, "return_map.json");
        if (c_cycles->parsed())
            return run_return_map(input, tol, out_dir, true, "cycles.json");
        if (c_sweep->parsed())
            return run_sweep(tol, out_dir, rho, eps_min, eps_max, n_eps, mu_min,
                             mu_max, n_mu, svg);
        if (c_folds->parsed())
            return run_folds(tol, out_dir, rho, mu_list,
                             c_folds->count("--ode-tol") > 0);
        if (c_constants->parsed()) return run_constants(tol, out_dir);
    } catch (const canal::InputError& e) {
        ordered_json err{{"error", "InputError"}, {"message", e.what()}};
        std::cout << err.dump() << "\n";
        return 2;
    } catch (const canal::Error& e) {
        std::string kind = "Error";
        if (dynamic_cast<const canal::BracketFailure*>(&e))
            kind = "BracketFailure";
        else if (dynamic_cast<const canal::ConstructionError*>(&e))
            kind = "ConstructionError";
        else if (dynamic_cast<const canal::FitFailure*>(&e))
            kind = "FitFailure";
        else if (dynamic_cast<const canal::StepSizeUnderflow*>(&e))
            kind = "StepSizeUnderflow";
        ordered_json err{{"error", kind}, {"message", e.what()}};
        std::cout << err.dump() << "\n";
        return 1;
    }
    return 2;
}
