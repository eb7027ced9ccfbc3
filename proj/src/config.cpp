#include "ncvem/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>

#include "ncvem/mesh_families.hpp"
#include "ncvem/mesh_io.hpp"
#include "ncvem/quadrature.hpp"

namespace ncvem {

using json = nlohmann::json;

namespace {

Poly2 parse_coefficient(const std::string& text, const std::string& slot) {
    std::unique_ptr<Expr> e;
    try {
        e = parse_expression(text);
    } catch (const ParseError& pe) {
        throw ConfigError("coefficient " + slot + ": " + pe.what());
    }
    std::string why;
    auto p = e->to_polynomial(&why);
    if (!p) throw ConfigError("coefficient " + slot + ": " + why);
    return *p;
}

} // namespace

ScalarField field_from_expression(const std::string& text, const std::string& slot) {
    std::shared_ptr<Expr> e;
    try {
        e = parse_expression(text);
    } catch (const ParseError& pe) {
        throw ConfigError("expression " + slot + ": " + pe.what());
    }
    return [e](const Point2& p) { return e->evaluate(p); };
}

ProblemConfig ProblemConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config JSON: ") + e.what());
    }
    ProblemConfig cfg;
    try {
        cfg.schema = j.value("schema", 1);
        if (cfg.schema != 1) throw ConfigError("unsupported config schema version");
        cfg.order = j.value("order", 1);
        if (cfg.order < 1) throw ConfigError("order must be >= 1");
        if (j.contains("coefficients")) {
            const json& co = j["coefficients"];
            cfg.K11 = co.value("K11", cfg.K11);
            cfg.K12 = co.value("K12", cfg.K12);
            cfg.K22 = co.value("K22", cfg.K22);
            if (co.contains("K21")) throw ConfigError("K21 is not a slot; K12 is single-sourced");
            cfg.beta1 = co.value("beta1", cfg.beta1);
            cfg.beta2 = co.value("beta2", cfg.beta2);
            cfg.c = co.value("c", cfg.c);
            cfg.c0 = co.value("c0", 0.0);
            if (co.contains("eta")) cfg.eta = co["eta"].get<double>();
            if (co.contains("xi")) cfg.xi = co["xi"].get<double>();
        }
        if (j.contains("data")) {
            cfg.f = j["data"].value("f", cfg.f);
            cfg.g = j["data"].value("g", cfg.g);
        }
        if (j.contains("manufactured")) {
            const json& m = j["manufactured"];
            if (!m.contains("u") || !m.contains("ux") || !m.contains("uy"))
                throw ConfigError("manufactured block needs u, ux, uy");
            cfg.u = m["u"].get<std::string>();
            cfg.ux = m["ux"].get<std::string>();
            cfg.uy = m["uy"].get<std::string>();
        }
        if (j.contains("mesh")) {
            const json& m = j["mesh"];
            if (m.contains("file")) cfg.mesh_file = m["file"].get<std::string>();
            cfg.family = m.value("family", cfg.family);
            cfg.resolution = m.value("n", cfg.resolution);
            cfg.seed = m.value("seed", 1u);
        }
        if (j.contains("quadrature"))
            cfg.data_quad_degree = j["quadrature"].value("data_degree", -1);
        cfg.rho = j.value("rho", 0.1);
        cfg.strict = j.value("strict", true);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config JSON: ") + e.what());
    }
    return cfg;
}

ProblemConfig ProblemConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

PolygonalMesh ProblemConfig::load_mesh() const {
    if (mesh_file) return read_poly2_file(*mesh_file);
    return make_builtin_mesh(family, resolution, seed);
}

Problem ProblemConfig::to_problem(const PolygonalMesh& mesh) const {
    Problem p;
    p.k = order;
    p.strict_checks = strict;
    p.data_quad_degree = data_quad_degree;

    CoefficientField& cf = p.coefficients;
    cf.K11 = parse_coefficient(K11, "K11");
    cf.K12 = parse_coefficient(K12, "K12");
    cf.K22 = parse_coefficient(K22, "K22");
    cf.beta1 = parse_coefficient(beta1, "beta1");
    cf.beta2 = parse_coefficient(beta2, "beta2");
    cf.c = parse_coefficient(c, "c");
    cf.c0 = c0;

    if (eta && xi) {
        cf.eta = *eta;
        cf.xi = *xi;
        if (cf.eta > cf.xi) throw ConfigError("eta must not exceed xi");
    } else {
        // Sample the eigenvalue range of K over the mesh.
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (size_t c_id = 0; c_id < mesh.cells.size(); ++c_id) {
            CellQuadrature quad =
                cell_quadrature(mesh, static_cast<int>(c_id), cf.form_quadrature_degree(order));
            for (const Point2& pt : quad.points) {
                double k11 = cf.K11.evaluate(pt), k12 = cf.K12.evaluate(pt),
                       k22 = cf.K22.evaluate(pt);
                double mid = 0.5 * (k11 + k22);
                double rad = std::sqrt(0.25 * (k11 - k22) * (k11 - k22) + k12 * k12);
                lo = std::min(lo, mid - rad);
                hi = std::max(hi, mid + rad);
            }
        }
        cf.eta = eta.value_or(lo);
        cf.xi = xi.value_or(hi);
    }

    p.f = field_from_expression(f, "f");
    p.g = field_from_expression(g, "g");
    if (u) {
        p.exact_u = field_from_expression(*u, "u");
        p.exact_ux = field_from_expression(*ux, "ux");
        p.exact_uy = field_from_expression(*uy, "uy");
    }
    return p;
}

} // namespace ncvem
