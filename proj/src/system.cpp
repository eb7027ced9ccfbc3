#include "ncvem/system.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "ncvem/parallel.hpp"

namespace ncvem {

std::vector<ElementProjectors> build_projectors(const PolygonalMesh& mesh, int k) {
    int nc = static_cast<int>(mesh.cells.size());
    std::vector<std::unique_ptr<ElementProjectors>> slots(nc);
    parallel_for(nc, [&](int c) { slots[c] = std::make_unique<ElementProjectors>(mesh, c, k); });
    std::vector<ElementProjectors> out;
    out.reserve(nc);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

GlobalSystem assemble(const PolygonalMesh& mesh, const GlobalDofMap& dofs,
                      const std::vector<ElementProjectors>& projectors,
                      const CoefficientField& cf, const ScalarField& f, int data_quad_degree) {
    int nc = static_cast<int>(mesh.cells.size());
    int n = dofs.size();

    std::vector<LocalForms> local(nc);
    parallel_for(nc, [&](int c) {
        local[c] = build_local_forms(mesh, c, projectors[c], cf, f, data_quad_degree);
    });

    // Concatenate triplets in cell order so the accumulation is
    // deterministic for any thread count.
    std::vector<Eigen::Triplet<double>> triplets;
    GlobalSystem sys;
    sys.rhs = Eigen::VectorXd::Zero(n);
    for (int c = 0; c < nc; ++c) {
        const auto& map = dofs.cell_dofs(c);
        Eigen::MatrixXd A = local[c].total();
        int m = static_cast<int>(map.size());
        if (A.rows() != m) throw std::logic_error("local/global dof map size mismatch");
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j)
                if (A(i, j) != 0.0) triplets.emplace_back(map[i], map[j], A(i, j));
            sys.rhs[map[i]] += local[c].load[i];
        }
    }
    sys.matrix.resize(n, n);
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    sys.constrained = dofs.dirichlet_dofs();
    sys.constrained_values = Eigen::VectorXd::Zero(sys.constrained.size());
    return sys;
}

void apply_dirichlet(GlobalSystem& sys, const PolygonalMesh& mesh, const GlobalDofMap& dofs,
                     const ScalarField& g, int quad_degree) {
    int n = static_cast<int>(sys.matrix.rows());
    int k = dofs.order();
    std::vector<bool> is_c(n, false);
    Eigen::VectorXd gval = Eigen::VectorXd::Zero(n);
    for (size_t i = 0; i < sys.constrained.size(); ++i) is_c[sys.constrained[i]] = true;
    for (size_t e = 0; e < mesh.edges.size(); ++e) {
        if (!mesh.edges[e].boundary) continue;
        Eigen::VectorXd m = dirichlet_moments(mesh, static_cast<int>(e), g, k, quad_degree);
        for (int j = 0; j < k; ++j) gval[dofs.edge_dof(static_cast<int>(e), j)] = m[j];
    }
    for (size_t i = 0; i < sys.constrained.size(); ++i)
        sys.constrained_values[i] = gval[sys.constrained[i]];

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(sys.matrix.nonZeros() + sys.constrained.size());
    for (int col = 0; col < sys.matrix.outerSize(); ++col) {
        for (SparseMat::InnerIterator it(sys.matrix, col); it; ++it) {
            int i = static_cast<int>(it.row());
            int j = static_cast<int>(it.col());
            if (is_c[i]) continue;
            if (is_c[j]) {
                sys.rhs[i] -= it.value() * gval[j];
                continue;
            }
            triplets.emplace_back(i, j, it.value());
        }
    }
    for (int i : sys.constrained) {
        triplets.emplace_back(i, i, 1.0);
        sys.rhs[i] = gval[i];
    }
    SparseMat constrained(n, n);
    constrained.setFromTriplets(triplets.begin(), triplets.end());
    sys.matrix = std::move(constrained);
    sys.dirichlet_applied = true;
}

Solution solve(const GlobalSystem& sys) {
    Eigen::SparseLU<SparseMat> lu;
    SparseMat A = sys.matrix;
    A.makeCompressed();
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error(
            "sparse LU factorization failed (singular system; check the coercivity assumptions "
            "and the diffusion-dominance diagnostic)");
    Solution sol;
    sol.dofs = lu.solve(sys.rhs);
    sol.residual = (A * sol.dofs - sys.rhs).norm();
    sol.rhs_norm = sys.rhs.norm();
    sol.matrix_size = static_cast<int>(A.rows());
    sol.free_size = sol.matrix_size - static_cast<int>(sys.constrained.size());
    if (sol.rhs_norm > 0.0 && sol.residual > 1e-10 * sol.rhs_norm)
        throw std::runtime_error("solver residual exceeds contract: " +
                                 std::to_string(sol.residual / sol.rhs_norm));
    return sol;
}

namespace {

std::vector<int> free_indices(const GlobalSystem& sys) {
    int n = static_cast<int>(sys.matrix.rows());
    std::vector<bool> is_c(n, false);
    for (int i : sys.constrained) is_c[i] = true;
    std::vector<int> free;
    free.reserve(n - sys.constrained.size());
    for (int i = 0; i < n; ++i)
        if (!is_c[i]) free.push_back(i);
    return free;
}

SparseMat extract_block(const SparseMat& A, const std::vector<int>& idx) {
    int n = static_cast<int>(A.rows());
    std::vector<int> pos(n, -1);
    for (size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = static_cast<int>(i);
    std::vector<Eigen::Triplet<double>> trip;
    for (int col = 0; col < A.outerSize(); ++col)
        for (SparseMat::InnerIterator it(A, col); it; ++it) {
            int pi = pos[it.row()], pj = pos[it.col()];
            if (pi >= 0 && pj >= 0) trip.emplace_back(pi, pj, it.value());
        }
    SparseMat B(idx.size(), idx.size());
    B.setFromTriplets(trip.begin(), trip.end());
    return B;
}

// Deterministic start vector for the iterative eigensolvers.
Eigen::VectorXd seed_vector(int n) {
    Eigen::VectorXd v(n);
    double x = 0.5;
    for (int i = 0; i < n; ++i) {
        x = std::fmod(x * 997.0 + 0.123456789, 1.0);
        v[i] = x - 0.5;
    }
    return v;
}

} // namespace

double coercivity_diagnostic(const GlobalSystem& sys) {
    auto free = free_indices(sys);
    SparseMat Aff = extract_block(sys.matrix, free);
    SparseMat S = SparseMat(0.5 * (Aff + SparseMat(Aff.transpose())));
    int n = static_cast<int>(S.rows());
    if (n == 0) return 0.0;
    if (n <= 800) {
        Eigen::MatrixXd dense(S);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
        return es.eigenvalues().minCoeff();
    }
    // Leftmost eigenvalue via power iteration on mu I - S with mu an upper
    // bound of the spectral radius (Gershgorin).
    Eigen::VectorXd absrow = Eigen::VectorXd::Zero(n);
    for (int col = 0; col < S.outerSize(); ++col)
        for (SparseMat::InnerIterator it(S, col); it; ++it)
            absrow[it.row()] += std::abs(it.value());
    double mu = absrow.maxCoeff();
    Eigen::VectorXd v = seed_vector(n).normalized();
    double lambda = 0.0;
    for (int it = 0; it < 5000; ++it) {
        Eigen::VectorXd w = mu * v - S * v;
        double nw = w.norm();
        if (nw == 0.0) break;
        w /= nw;
        double next = nw; // Rayleigh quotient of the shifted operator
        if (it > 10 && std::abs(next - lambda) < 1e-9 * std::abs(mu)) {
            lambda = next;
            v = w;
            break;
        }
        lambda = next;
        v = w;
    }
    return mu - lambda;
}

double generalized_coercivity(const GlobalSystem& sys, const SparseMat& gram_full) {
    auto free = free_indices(sys);
    SparseMat Aff = extract_block(sys.matrix, free);
    SparseMat S = SparseMat(0.5 * (Aff + SparseMat(Aff.transpose())));
    SparseMat N = extract_block(gram_full, free);
    int n = static_cast<int>(S.rows());
    if (n == 0) return 0.0;

    Eigen::SparseLU<SparseMat> slu;
    S.makeCompressed();
    slu.compute(S);
    if (slu.info() != Eigen::Success)
        throw std::runtime_error("symmetric part is singular in generalized coercivity");

    // Inverse iteration on the pencil (S, N); converges to the smallest
    // generalized eigenvalue in magnitude.
    Eigen::VectorXd x = seed_vector(n);
    double nx = std::sqrt(x.dot(N * x));
    x /= nx;
    double rho = 0.0;
    for (int it = 0; it < 500; ++it) {
        Eigen::VectorXd y = slu.solve(N * x);
        double ny = std::sqrt(y.dot(N * y));
        if (!(ny > 0.0) || !std::isfinite(ny)) break;
        y /= ny;
        double next = y.dot(S * y); // since ||y||_N = 1
        if (it > 3 && std::abs(next - rho) < 1e-10 * std::max(1.0, std::abs(next))) {
            rho = next;
            break;
        }
        rho = next;
        x = y;
    }
    return rho;
}

SparseMat broken_h1_gram(const PolygonalMesh& mesh, const GlobalDofMap& dofs,
                         const std::vector<ElementProjectors>& projectors) {
    CoefficientField identity;
    identity.K11 = Poly2(1.0);
    identity.K12 = Poly2(0.0);
    identity.K22 = Poly2(1.0);
    identity.beta1 = Poly2(0.0);
    identity.beta2 = Poly2(0.0);
    identity.c = Poly2(1.0);
    identity.eta = identity.xi = 1.0;
    GlobalSystem sys = assemble(mesh, dofs, projectors, identity, nullptr, 2 * dofs.order());
    return sys.matrix;
}

} // namespace ncvem
