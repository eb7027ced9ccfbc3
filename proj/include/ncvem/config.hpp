#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "ncvem/driver.hpp"
#include "ncvem/expr.hpp"

namespace ncvem {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem configuration, read from a versioned JSON document. Coefficient
// slots must be polynomial expressions; data and manufactured slots may use
// the full expression language.
struct ProblemConfig {
    int schema = 1;
    int order = 1;

    std::string K11 = "1", K12 = "0", K22 = "1";
    std::string beta1 = "0", beta2 = "0";
    std::string c = "0";
    double c0 = 0.0;
    std::optional<double> eta, xi; // sampled from K when absent

    std::string f = "0", g = "0";
    std::optional<std::string> u, ux, uy; // manufactured solution

    // Mesh source: a file path or a built-in family.
    std::optional<std::string> mesh_file;
    std::string family = "quad";
    int resolution = 8;
    unsigned seed = 1;

    double rho = 0.1;
    int data_quad_degree = -1;
    bool strict = true;

    static ProblemConfig from_json_text(const std::string& text);
    static ProblemConfig from_json_file(const std::string& path);

    // Mesh from the configured source (file wins over family).
    PolygonalMesh load_mesh() const;

    // Problem with parsed expressions; missing eta/xi are filled by sampling
    // the eigenvalues of K at the assembly quadrature points of the mesh.
    Problem to_problem(const PolygonalMesh& mesh) const;
};

// Helper shared with the CLI: wrap a parsed expression as a ScalarField.
ScalarField field_from_expression(const std::string& text, const std::string& slot);

} // namespace ncvem
