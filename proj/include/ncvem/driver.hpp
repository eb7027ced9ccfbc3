#pragma once

#include <memory>

#include "ncvem/forms.hpp"
#include "ncvem/system.hpp"

namespace ncvem {

// One solvable problem instance: operator coefficients, data, order, and
// (for error studies) the manufactured solution.
struct Problem {
    int k = 1;
    CoefficientField coefficients;
    ScalarField f;
    ScalarField g;
    ScalarField exact_u;  // optional
    ScalarField exact_ux; // optional
    ScalarField exact_uy; // optional
    int data_quad_degree = -1; // elevated rule for non-polynomial data
    bool strict_checks = true; // hard error on coefficient-bound violations

    int effective_data_degree() const { return data_quad_degree < 0 ? 2 * k + 6 : data_quad_degree; }
};

struct SolveResult {
    std::shared_ptr<PolygonalMesh> mesh;
    std::unique_ptr<GlobalDofMap> dofs;
    std::vector<ElementProjectors> projectors;
    GlobalSystem system;
    Solution solution;
    DominanceReport dominance;
};

// Full pipeline: validate coefficients, build projectors, assemble, apply
// Dirichlet data, solve.
SolveResult solve_problem(std::shared_ptr<PolygonalMesh> mesh, const Problem& problem);

} // namespace ncvem
