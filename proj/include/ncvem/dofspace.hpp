#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "ncvem/mesh.hpp"
#include "ncvem/poly.hpp"

namespace ncvem {

using ScalarField = std::function<double(const Point2&)>;

// One degree of freedom of the nonconforming space of order k:
//   EdgeMoment    (1/h_e) int_e v mu_j ds,    j = 0..k-1, canonical mu_j
//   InteriorMoment (1/|T|) int_T v m_s dT,    |s| <= k-2  (k >= 2 only)
struct DofDescriptor {
    enum class Kind { EdgeMoment, InteriorMoment };
    Kind kind;
    int entity = 0; // edge id or cell id
    int index = 0;  // j, or graded-lex position of s
};

// N_T = n k + k(k-1)/2 for a cell with n edges.
inline int local_dof_count(int n_edges, int k) { return n_edges * k + k * (k - 1) / 2; }

inline int interior_dofs_per_cell(int k) { return k * (k - 1) / 2; }

class GlobalDofMap {
  public:
    GlobalDofMap(const PolygonalMesh& mesh, int k);

    int order() const { return k_; }
    int size() const { return static_cast<int>(descriptors_.size()); }
    const std::vector<DofDescriptor>& descriptors() const { return descriptors_; }

    int edge_dof(int edge, int j) const { return edge * k_ + j; }
    int interior_dof(int cell, int local) const {
        return n_edge_dofs_ + cell * interior_dofs_per_cell(k_) + local;
    }

    // Local ordering: edge moments in cell loop order (j ascending per edge),
    // then interior moments in graded-lex order.
    const std::vector<int>& cell_dofs(int cell) const { return cell_dofs_[cell]; }

    // Boundary-edge moments (the Dirichlet set), ascending.
    const std::vector<int>& dirichlet_dofs() const { return dirichlet_; }
    bool is_dirichlet(int dof) const { return dirichlet_mask_[dof]; }

  private:
    int k_;
    int n_edge_dofs_;
    std::vector<DofDescriptor> descriptors_;
    std::vector<std::vector<int>> cell_dofs_;
    std::vector<int> dirichlet_;
    std::vector<bool> dirichlet_mask_;
};

// Value of one DOF functional applied to a smooth function, using quadrature
// of the given exactness.
double dof_evaluate(const PolygonalMesh& mesh, const DofDescriptor& dof, const ScalarField& f,
                    int quad_degree);

// DOF interpolant v_I of a smooth function: every DOF of the result equals
// the corresponding functional of f.
Eigen::VectorXd interpolate(const PolygonalMesh& mesh, const GlobalDofMap& dofs,
                            const ScalarField& f, int quad_degree);

// Extract the local DOF vector of a cell from a global vector.
Eigen::VectorXd gather_local(const GlobalDofMap& dofs, int cell, const Eigen::VectorXd& global);

} // namespace ncvem
