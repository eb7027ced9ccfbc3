#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ncvem/driver.hpp"

namespace ncvem {

// Broken-norm errors of a discrete solution against a manufactured exact
// solution. The discrete function enters only through its projections
// ("projected broken norm"): the gradient through the L^2 gradient
// projection, the value through the function projection.
struct ErrorReport {
    double err_h1 = 0.0;   // broken H^1 seminorm error
    double err_l2 = 0.0;   // broken L^2 error
    double err_full = 0.0; // sqrt(l2^2 + h1^2)
    std::vector<double> cell_h1; // squared per-cell contributions
    std::vector<double> cell_l2;
};

ErrorReport broken_error(const PolygonalMesh& mesh, const GlobalDofMap& dofs,
                         const std::vector<ElementProjectors>& projectors,
                         const Eigen::VectorXd& solution, const ScalarField& u,
                         const ScalarField& ux, const ScalarField& uy, int quad_degree);

// Projection-level nonconformity diagnostic: moments over interior edges of
// the jump between the two adjacent function projections, against the edge
// monomials up to degree k-1 (normalized by 1/h_e). The DOF-level jump is
// zero by shared storage; this measures the virtual-function surrogate.
struct JumpDiagnostic {
    double max = 0.0;
    double rms = 0.0;
    int interior_edges = 0;
};

JumpDiagnostic jump_diagnostic(const PolygonalMesh& mesh, const GlobalDofMap& dofs,
                               const std::vector<ElementProjectors>& projectors,
                               const Eigen::VectorXd& solution);

struct ConvergenceRow {
    double h = 0.0;
    int ndof = 0;
    double err_l2 = 0.0;
    double err_h1 = 0.0;
    double rate_l2 = 0.0; // vs previous row; NaN on the first row
    double rate_h1 = 0.0;
    bool exact = false; // errors at rounding level; rates reported as "exact"
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double slope_l2 = 0.0; // least-squares slope over the last three levels
    double slope_h1 = 0.0;

    void write_csv(std::ostream& os) const;
    std::string csv() const;
};

// Least-squares slope of log(err) against log(h) over the last `window`
// rows (all rows when window <= 0).
double fit_slope(const std::vector<double>& h, const std::vector<double>& err, int window = 0);

// Solve the problem on make_mesh(0..levels-1) and tabulate the broken-norm
// errors and observed rates. Requires a manufactured solution.
ConvergenceTable convergence_study(const Problem& problem,
                                   const std::function<PolygonalMesh(int)>& make_mesh,
                                   int levels);

} // namespace ncvem
