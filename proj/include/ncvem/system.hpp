#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "ncvem/dofspace.hpp"
#include "ncvem/forms.hpp"
#include "ncvem/mesh.hpp"
#include "ncvem/projectors.hpp"

namespace ncvem {

using SparseMat = Eigen::SparseMatrix<double>;

// Assembled global problem. After apply_dirichlet the constrained rows are
// identity rows and the constrained values sit in the right-hand side.
struct GlobalSystem {
    SparseMat matrix;
    Eigen::VectorXd rhs;
    std::vector<int> constrained; // Dirichlet DOFs, ascending
    Eigen::VectorXd constrained_values;
    bool dirichlet_applied = false;
};

struct Solution {
    Eigen::VectorXd dofs;
    double residual = 0.0;     // ||A x - b||_2
    double rhs_norm = 0.0;     // ||b||_2
    int matrix_size = 0;
    int free_size = 0;
};

// Projectors for every cell (parallel across cells).
std::vector<ElementProjectors> build_projectors(const PolygonalMesh& mesh, int k);

// Sum of scattered local forms; no orientation sign flips are needed because
// edge moments are canonical.
GlobalSystem assemble(const PolygonalMesh& mesh, const GlobalDofMap& dofs,
                      const std::vector<ElementProjectors>& projectors,
                      const CoefficientField& cf, const ScalarField& f, int data_quad_degree);

// Eliminate Dirichlet DOFs: rhs_f -= A_fc g_c, identity rows/cols on the
// constrained set.
void apply_dirichlet(GlobalSystem& system, const PolygonalMesh& mesh, const GlobalDofMap& dofs,
                     const ScalarField& g, int quad_degree);

// Direct sparse LU with a residual contract of 1e-10 ||b||; throws
// std::runtime_error on singular factorization.
Solution solve(const GlobalSystem& system);

// Smallest eigenvalue of the symmetric part of the free block (Euclidean
// metric): dense solve for small blocks, shifted power iteration otherwise.
double coercivity_diagnostic(const GlobalSystem& system);

// Generalized variant against an SPD Gram on the free DOFs: smallest lambda
// with sym(A_ff) x = lambda N_ff x, by inverse iteration. This is the
// broken-norm shadow of the coercivity constant.
double generalized_coercivity(const GlobalSystem& system, const SparseMat& gram_full);

// Discrete broken-H^1 Gram: the assembled forms with K = I, beta = 0, c = 1
// (stabilizers included), an SPD spectral equivalent of the broken norm.
SparseMat broken_h1_gram(const PolygonalMesh& mesh, const GlobalDofMap& dofs,
                         const std::vector<ElementProjectors>& projectors);

} // namespace ncvem
