#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "ncvem/config.hpp"
#include "ncvem/mesh_families.hpp"
#include "ncvem/mesh_io.hpp"
#include "ncvem/postproc.hpp"

using json = nlohmann::json;
using namespace ncvem;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitMesh = 2;
constexpr int kExitSolver = 3;

json diagnostics_json(const SolveResult& r) {
    json diag;
    diag["residual"] = r.solution.residual;
    diag["rhs_norm"] = r.solution.rhs_norm;
    diag["dofs"] = r.solution.matrix_size;
    diag["free_dofs"] = r.solution.free_size;
    diag["h"] = r.mesh->mesh_size();
    diag["cells"] = r.mesh->cells.size();
    diag["edges"] = r.mesh->edges.size();
    json warnings = json::array();
    for (const auto& w : r.mesh->warnings) warnings.push_back(w);
    if (r.dominance.warn) warnings.push_back(r.dominance.message);
    diag["dominance"] = {{"h", r.dominance.h},
                         {"div_beta_inf", r.dominance.div_beta_inf},
                         {"product", r.dominance.product},
                         {"warn", r.dominance.warn}};
    double alpha = coercivity_diagnostic(r.system);
    diag["coercivity_min_eig"] = alpha;
    if (alpha <= 0.0)
        warnings.push_back("coercivity diagnostic nonpositive: the discrete operator is not "
                           "coercive on this mesh (convection-dominated configuration?)");
    diag["warnings"] = warnings;
    return diag;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

int cmd_solve(const std::string& config_path, const std::string& mesh_override,
              const std::string& out_dir) {
    ProblemConfig cfg;
    try {
        cfg = ProblemConfig::from_json_file(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    std::shared_ptr<PolygonalMesh> mesh;
    try {
        if (!mesh_override.empty())
            mesh = std::make_shared<PolygonalMesh>(read_poly2_file(mesh_override));
        else
            mesh = std::make_shared<PolygonalMesh>(cfg.load_mesh());
    } catch (const std::exception& e) {
        std::cerr << "mesh error: " << e.what() << "\n";
        return kExitMesh;
    }
    Problem problem;
    try {
        problem = cfg.to_problem(*mesh);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        SolveResult r = solve_problem(mesh, problem);
        json out;
        out["dofs"] = std::vector<double>(r.solution.dofs.begin(), r.solution.dofs.end());
        out["residual"] = r.solution.residual;
        out["diagnostics"] = diagnostics_json(r);
        if (problem.exact_u) {
            ErrorReport err = broken_error(*r.mesh, *r.dofs, r.projectors, r.solution.dofs,
                                           problem.exact_u, problem.exact_ux, problem.exact_uy,
                                           problem.effective_data_degree());
            out["errors"] = {{"err_h1", err.err_h1},
                             {"err_l2", err.err_l2},
                             {"err_full", err.err_full}};
        }
        std::filesystem::create_directories(out_dir);
        write_text(std::filesystem::path(out_dir) / "solution.json", out.dump(2) + "\n");
        std::cout << "wrote " << (std::filesystem::path(out_dir) / "solution.json").string()
                  << "\n";
        for (const auto& w : out["diagnostics"]["warnings"])
            std::cout << "warning: " << w.get<std::string>() << "\n";
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
}

int cmd_convergence(const std::string& config_path, int levels, const std::string& family,
                    const std::string& out_dir) {
    ProblemConfig cfg;
    try {
        cfg = ProblemConfig::from_json_file(config_path);
        if (!family.empty()) cfg.family = family;
        if (!cfg.u) throw ConfigError("convergence study requires a manufactured block");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        auto base_mesh = cfg.load_mesh();
        Problem problem = cfg.to_problem(base_mesh);
        auto make_mesh = [&cfg](int level) {
            return make_builtin_mesh(cfg.family, cfg.resolution << level, cfg.seed);
        };
        ConvergenceTable table = convergence_study(problem, make_mesh, levels);

        std::filesystem::create_directories(out_dir);
        write_text(std::filesystem::path(out_dir) / "convergence.csv", table.csv());
        json jt;
        jt["slope_l2"] = table.slope_l2;
        jt["slope_h1"] = table.slope_h1;
        jt["rows"] = json::array();
        for (const auto& r : table.rows) {
            json row = {{"h", r.h},       {"ndof", r.ndof},       {"err_l2", r.err_l2},
                        {"err_h1", r.err_h1}, {"exact", r.exact}};
            if (!std::isnan(r.rate_l2)) row["rate_l2"] = r.rate_l2;
            if (!std::isnan(r.rate_h1)) row["rate_h1"] = r.rate_h1;
            jt["rows"].push_back(row);
        }
        write_text(std::filesystem::path(out_dir) / "convergence.json", jt.dump(2) + "\n");
        std::cout << table.csv();
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "mesh error: " << e.what() << "\n";
        return kExitMesh;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
}

int cmd_validate_mesh(const std::string& path, double rho) {
    PolygonalMesh mesh;
    try {
        mesh = read_poly2_file(path);
    } catch (const std::exception& e) {
        std::cerr << "mesh error: " << e.what() << "\n";
        return kExitMesh;
    }
    MeshReport rep = validate_mesh(mesh, rho);
    printf("mesh: %zu vertices, %zu cells, %zu edges, h = %.6g\n", mesh.vertices.size(),
           mesh.cells.size(), mesh.edges.size(), rep.h);
    printf("rho = %.6g\n", rho);
    printf("A1 (edge/diameter margin): min %.6g  -> %s\n", rep.min_a1_margin,
           rep.pass_a1 ? "pass" : "FAIL");
    printf("A2 (kernel inradius ratio): min %.6g -> %s\n", rep.min_a2_ratio,
           rep.pass_a2 ? "pass" : "FAIL");
    for (size_t c = 0; c < rep.cells.size(); ++c) {
        const auto& e = rep.cells[c];
        if (e.a1_margin < rho || e.a2_ratio < rho)
            printf("  cell %zu: a1 %.6g a2 %.6g\n", c, e.a1_margin, e.a2_ratio);
    }
    for (const auto& w : mesh.warnings) printf("warning: %s\n", w.c_str());
    return 0;
}

int cmd_project(const std::string& config_path, int cell) {
    ProblemConfig cfg;
    try {
        cfg = ProblemConfig::from_json_file(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        PolygonalMesh mesh = cfg.load_mesh();
        if (cell < 0 || cell >= static_cast<int>(mesh.cells.size())) {
            std::cerr << "mesh error: cell index out of range\n";
            return kExitMesh;
        }
        ElementProjectors proj(mesh, cell, cfg.order);
        auto dump = [](const Eigen::MatrixXd& m) {
            json rows = json::array();
            for (int i = 0; i < m.rows(); ++i) {
                json row = json::array();
                for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
                rows.push_back(row);
            }
            return rows;
        };
        json out;
        out["cell"] = cell;
        out["order"] = cfg.order;
        out["D"] = dump(proj.D());
        out["G"] = dump(proj.G());
        out["E"] = dump(proj.E());
        out["F"] = dump(proj.F());
        out["max_condition"] = proj.max_condition();
        std::cout << out.dump(2) << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "mesh error: " << e.what() << "\n";
        return kExitMesh;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonconforming virtual element solver for convection-diffusion-reaction"};
    app.require_subcommand(1);

    std::string config_path, mesh_path, out_dir = ".", family;
    int levels = 4, cell = 0;
    double rho = 0.1;

    auto* solve_cmd = app.add_subcommand("solve", "solve one problem instance");
    solve_cmd->add_option("--config", config_path, "problem config JSON")->required();
    solve_cmd->add_option("--mesh", mesh_path, "override mesh file (.poly2)");
    solve_cmd->add_option("--out", out_dir, "output directory");

    auto* conv_cmd = app.add_subcommand("convergence", "run a refinement study");
    conv_cmd->add_option("--config", config_path, "problem config JSON")->required();
    conv_cmd->add_option("--levels", levels, "number of refinement levels")
        ->check(CLI::Range(1, 12));
    conv_cmd->add_option("--family", family, "override mesh family");
    conv_cmd->add_option("--out", out_dir, "output directory");

    auto* val_cmd = app.add_subcommand("validate-mesh", "check the mesh assumptions");
    val_cmd->add_option("mesh", mesh_path, "mesh file (.poly2)")->required();
    val_cmd->add_option("--rho", rho, "shape-regularity parameter");

    auto* proj_cmd = app.add_subcommand("project", "dump projector matrices of one cell");
    proj_cmd->add_option("--config", config_path, "problem config JSON")->required();
    proj_cmd->add_option("--cell", cell, "cell index");

    CLI11_PARSE(app, argc, argv);

    if (solve_cmd->parsed()) return cmd_solve(config_path, mesh_path, out_dir);
    if (conv_cmd->parsed()) return cmd_convergence(config_path, levels, family, out_dir);
    if (val_cmd->parsed()) return cmd_validate_mesh(mesh_path, rho);
    if (proj_cmd->parsed()) return cmd_project(config_path, cell);
    return 0;
}
