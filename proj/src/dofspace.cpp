#include "ncvem/dofspace.hpp"

#include <stdexcept>

#include "ncvem/monomials.hpp"
#include "ncvem/quadrature.hpp"

namespace ncvem {

GlobalDofMap::GlobalDofMap(const PolygonalMesh& mesh, int k) : k_(k) {
    if (k < 1) throw std::invalid_argument("order k must be >= 1");
    int ne = static_cast<int>(mesh.edges.size());
    int nc = static_cast<int>(mesh.cells.size());
    int nint = interior_dofs_per_cell(k);
    n_edge_dofs_ = ne * k;
    descriptors_.resize(n_edge_dofs_ + nc * nint);
    for (int e = 0; e < ne; ++e)
        for (int j = 0; j < k; ++j)
            descriptors_[edge_dof(e, j)] = {DofDescriptor::Kind::EdgeMoment, e, j};
    for (int c = 0; c < nc; ++c)
        for (int s = 0; s < nint; ++s)
            descriptors_[interior_dof(c, s)] = {DofDescriptor::Kind::InteriorMoment, c, s};

    cell_dofs_.resize(nc);
    for (int c = 0; c < nc; ++c) {
        const Cell& cell = mesh.cells[c];
        auto& list = cell_dofs_[c];
        list.reserve(local_dof_count(static_cast<int>(cell.edges.size()), k));
        for (int e : cell.edges)
            for (int j = 0; j < k; ++j) list.push_back(edge_dof(e, j));
        for (int s = 0; s < nint; ++s) list.push_back(interior_dof(c, s));
    }

    dirichlet_mask_.assign(size(), false);
    for (int e = 0; e < ne; ++e)
        if (mesh.edges[e].boundary)
            for (int j = 0; j < k; ++j) {
                dirichlet_.push_back(edge_dof(e, j));
                dirichlet_mask_[edge_dof(e, j)] = true;
            }
}

double dof_evaluate(const PolygonalMesh& mesh, const DofDescriptor& dof, const ScalarField& f,
                    int quad_degree) {
    if (dof.kind == DofDescriptor::Kind::EdgeMoment) {
        const Edge& e = mesh.edges[dof.entity];
        EdgeMonomialBasis mu(mesh, dof.entity, dof.index);
        EdgeQuadrature quad = edge_quadrature(mesh, dof.entity, quad_degree);
        double acc = 0.0;
        for (size_t q = 0; q < quad.points.size(); ++q)
            acc += quad.weights[q] * f(quad.points[q]) * mu.value(dof.index, quad.arclength[q]);
        return acc / e.length;
    }
    const Cell& cell = mesh.cells[dof.entity];
    int deg = 0;
    while (poly_space_dim(deg) <= dof.index) ++deg; // smallest basis holding the index
    CellMonomialBasis m(mesh, dof.entity, deg);
    CellQuadrature quad = cell_quadrature(mesh, dof.entity, quad_degree);
    double acc = 0.0;
    for (size_t q = 0; q < quad.points.size(); ++q)
        acc += quad.weights[q] * f(quad.points[q]) * m.value(dof.index, quad.points[q]);
    return acc / cell.area;
}

Eigen::VectorXd interpolate(const PolygonalMesh& mesh, const GlobalDofMap& dofs,
                            const ScalarField& f, int quad_degree) {
    Eigen::VectorXd v(dofs.size());
    for (int i = 0; i < dofs.size(); ++i)
        v[i] = dof_evaluate(mesh, dofs.descriptors()[i], f, quad_degree);
    return v;
}

Eigen::VectorXd gather_local(const GlobalDofMap& dofs, int cell, const Eigen::VectorXd& global) {
    const auto& list = dofs.cell_dofs(cell);
    Eigen::VectorXd local(list.size());
    for (size_t i = 0; i < list.size(); ++i) local[i] = global[list[i]];
    return local;
}

} // namespace ncvem
