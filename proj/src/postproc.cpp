#include "ncvem/postproc.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ncvem/monomials.hpp"
#include "ncvem/parallel.hpp"
#include "ncvem/quadrature.hpp"

namespace ncvem {

ErrorReport broken_error(const PolygonalMesh& mesh, const GlobalDofMap& dofs,
                         const std::vector<ElementProjectors>& projectors,
                         const Eigen::VectorXd& solution, const ScalarField& u,
                         const ScalarField& ux, const ScalarField& uy, int quad_degree) {
    int nc = static_cast<int>(mesh.cells.size());
    ErrorReport rep;
    rep.cell_h1.assign(nc, 0.0);
    rep.cell_l2.assign(nc, 0.0);
    parallel_for(nc, [&](int c) {
        Eigen::VectorXd local = gather_local(dofs, c, solution);
        Eigen::VectorXd fcoef = projectors[c].F() * local;
        Eigen::VectorXd gcoef = projectors[c].G() * local;
        const CellMonomialBasis& bk = projectors[c].basis_k();
        const CellMonomialBasis& bkm1 = projectors[c].basis_km1();
        int nkm1 = bkm1.size();
        CellQuadrature quad = cell_quadrature(mesh, c, quad_degree);
        double l2 = 0.0, h1 = 0.0;
        for (size_t q = 0; q < quad.points.size(); ++q) {
            const Point2& p = quad.points[q];
            double dv = u(p) - bk.eval_combination(fcoef, p);
            double gx = ux(p), gy = uy(p);
            for (int a = 0; a < nkm1; ++a) {
                double v = bkm1.value(a, p);
                gx -= gcoef[a] * v;
                gy -= gcoef[nkm1 + a] * v;
            }
            l2 += quad.weights[q] * dv * dv;
            h1 += quad.weights[q] * (gx * gx + gy * gy);
        }
        rep.cell_l2[c] = l2;
        rep.cell_h1[c] = h1;
    });
    double l2 = 0.0, h1 = 0.0;
    for (int c = 0; c < nc; ++c) {
        l2 += rep.cell_l2[c];
        h1 += rep.cell_h1[c];
    }
    rep.err_l2 = std::sqrt(l2);
    rep.err_h1 = std::sqrt(h1);
    rep.err_full = std::sqrt(l2 + h1);
    return rep;
}

JumpDiagnostic jump_diagnostic(const PolygonalMesh& mesh, const GlobalDofMap& dofs,
                               const std::vector<ElementProjectors>& projectors,
                               const Eigen::VectorXd& solution) {
    int k = dofs.order();
    JumpDiagnostic diag;
    double sumsq = 0.0;
    for (size_t e = 0; e < mesh.edges.size(); ++e) {
        const Edge& edge = mesh.edges[e];
        if (edge.boundary) continue;
        ++diag.interior_edges;
        Eigen::VectorXd pl = projectors[edge.cell_left].F() *
                             gather_local(dofs, edge.cell_left, solution);
        Eigen::VectorXd pr = projectors[edge.cell_right].F() *
                             gather_local(dofs, edge.cell_right, solution);
        const CellMonomialBasis& bl = projectors[edge.cell_left].basis_k();
        const CellMonomialBasis& br = projectors[edge.cell_right].basis_k();
        EdgeMonomialBasis mu(mesh, static_cast<int>(e), k - 1);
        EdgeQuadrature quad = edge_quadrature(mesh, static_cast<int>(e), 2 * k);
        double worst = 0.0;
        for (int j = 0; j < k; ++j) {
            double m = 0.0;
            for (size_t q = 0; q < quad.points.size(); ++q) {
                double jump = bl.eval_combination(pl, quad.points[q]) -
                              br.eval_combination(pr, quad.points[q]);
                m += quad.weights[q] * jump * mu.value(j, quad.arclength[q]);
            }
            worst = std::max(worst, std::abs(m) / edge.length);
        }
        diag.max = std::max(diag.max, worst);
        sumsq += worst * worst;
    }
    if (diag.interior_edges > 0) diag.rms = std::sqrt(sumsq / diag.interior_edges);
    return diag;
}

double fit_slope(const std::vector<double>& h, const std::vector<double>& err, int window) {
    int n = static_cast<int>(h.size());
    int m = (window <= 0 || window > n) ? n : window;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = n - m; i < n; ++i) {
        double x = std::log(h[i]);
        double y = std::log(std::max(err[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = m * sxx - sx * sx;
    return denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
}

ConvergenceTable convergence_study(const Problem& problem,
                                   const std::function<PolygonalMesh(int)>& make_mesh,
                                   int levels) {
    if (levels < 1) throw std::invalid_argument("convergence study needs at least one level");
    if (!problem.exact_u || !problem.exact_ux || !problem.exact_uy)
        throw std::invalid_argument("convergence study requires a manufactured solution");
    ConvergenceTable table;
    std::vector<double> hs, el2, eh1;
    for (int level = 0; level < levels; ++level) {
        auto mesh = std::make_shared<PolygonalMesh>(make_mesh(level));
        SolveResult r = solve_problem(mesh, problem);
        ErrorReport err =
            broken_error(*r.mesh, *r.dofs, r.projectors, r.solution.dofs, problem.exact_u,
                         problem.exact_ux, problem.exact_uy, problem.effective_data_degree());
        ConvergenceRow row;
        row.h = r.mesh->mesh_size();
        row.ndof = r.dofs->size();
        row.err_l2 = err.err_l2;
        row.err_h1 = err.err_h1;
        row.exact = err.err_h1 <= 1e-12 && err.err_l2 <= 1e-12;
        row.rate_l2 = row.rate_h1 = std::nan("");
        if (!table.rows.empty()) {
            const ConvergenceRow& prev = table.rows.back();
            if (prev.h > row.h && row.err_l2 > 0.0 && prev.err_l2 > 0.0)
                row.rate_l2 = std::log(prev.err_l2 / row.err_l2) / std::log(prev.h / row.h);
            if (prev.h > row.h && row.err_h1 > 0.0 && prev.err_h1 > 0.0)
                row.rate_h1 = std::log(prev.err_h1 / row.err_h1) / std::log(prev.h / row.h);
        }
        if (!hs.empty() && row.h >= hs.back())
            throw std::logic_error("mesh family must refine: h not strictly decreasing");
        hs.push_back(row.h);
        el2.push_back(row.err_l2);
        eh1.push_back(row.err_h1);
        table.rows.push_back(row);
    }
    table.slope_l2 = fit_slope(hs, el2, 3);
    table.slope_h1 = fit_slope(hs, eh1, 3);
    return table;
}

void ConvergenceTable::write_csv(std::ostream& os) const {
    os << "h,ndof,err_l2,err_h1,rate_l2,rate_h1\n";
    char buf[256];
    for (const auto& r : rows) {
        snprintf(buf, sizeof buf, "%.12e,%d,%.12e,%.12e", r.h, r.ndof, r.err_l2, r.err_h1);
        os << buf;
        auto put_rate = [&](double rate) {
            if (r.exact)
                os << ",exact";
            else if (std::isnan(rate))
                os << ",";
            else {
                snprintf(buf, sizeof buf, ",%.6f", rate);
                os << buf;
            }
        };
        put_rate(r.rate_l2);
        put_rate(r.rate_h1);
        os << "\n";
    }
}

std::string ConvergenceTable::csv() const {
    std::ostringstream ss;
    write_csv(ss);
    return ss.str();
}

} // namespace ncvem
