#include "ncvem/driver.hpp"

#include <stdexcept>

namespace ncvem {

SolveResult solve_problem(std::shared_ptr<PolygonalMesh> mesh, const Problem& problem) {
    if (!mesh) throw std::invalid_argument("solve_problem: null mesh");
    if (problem.strict_checks) problem.coefficients.validate(*mesh, problem.k);

    SolveResult r;
    r.mesh = std::move(mesh);
    r.dofs = std::make_unique<GlobalDofMap>(*r.mesh, problem.k);
    r.projectors = build_projectors(*r.mesh, problem.k);
    r.dominance = diffusion_dominance_guard(*r.mesh, problem.coefficients);
    r.system = assemble(*r.mesh, *r.dofs, r.projectors, problem.coefficients, problem.f,
                        problem.effective_data_degree());
    ScalarField g = problem.g ? problem.g : [](const Point2&) { return 0.0; };
    apply_dirichlet(r.system, *r.mesh, *r.dofs, g, problem.effective_data_degree());
    r.solution = solve(r.system);
    return r;
}

} // namespace ncvem
