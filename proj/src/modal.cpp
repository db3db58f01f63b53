#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "archopt/modal.hpp"

namespace archopt {
namespace {

constexpr double kGauss = 0.5773502691896257;  // 1/sqrt(3)

Eigen::Matrix<double, 6, 6> elasticityMatrix(double E, double nu) {
    const double lambda = E * nu / ((1 + nu) * (1 - 2 * nu));
    const double mu = E / (2 * (1 + nu));
    Eigen::Matrix<double, 6, 6> D = Eigen::Matrix<double, 6, 6>::Zero();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
            D(i, j) = lambda;
        D(i, i) = lambda + 2 * mu;
        D(3 + i, 3 + i) = mu;
    }
    return D;
}

Eigen::Matrix<double, 8, 3> shapeGrad(double xi, double eta, double zeta) {
    static const double sx[8] = {-1, 1, 1, -1, -1, 1, 1, -1};
    static const double sy[8] = {-1, -1, 1, 1, -1, -1, 1, 1};
    static const double sz[8] = {-1, -1, -1, -1, 1, 1, 1, 1};
    Eigen::Matrix<double, 8, 3> g;
    for (int i = 0; i < 8; ++i) {
        g(i, 0) = 0.125 * sx[i] * (1 + sy[i] * eta) * (1 + sz[i] * zeta);
        g(i, 1) = 0.125 * sy[i] * (1 + sx[i] * xi) * (1 + sz[i] * zeta);
        g(i, 2) = 0.125 * sz[i] * (1 + sx[i] * xi) * (1 + sy[i] * eta);
    }
    return g;
}

Eigen::Matrix<double, 8, 1> shapeValues(double xi, double eta, double zeta) {
    static const double sx[8] = {-1, 1, 1, -1, -1, 1, 1, -1};
    static const double sy[8] = {-1, -1, 1, 1, -1, -1, 1, 1};
    static const double sz[8] = {-1, -1, -1, -1, 1, 1, 1, 1};
    Eigen::Matrix<double, 8, 1> n;
    for (int i = 0; i < 8; ++i)
        n(i) = 0.125 * (1 + sx[i] * xi) * (1 + sy[i] * eta) *
               (1 + sz[i] * zeta);
    return n;
}

// Strain interpolation columns for one gradient triple (dx, dy, dz).
template <typename B>
void fillStrainColumns(B& mat, int col, double dx, double dy, double dz) {
    mat(0, col) = dx;
    mat(1, col + 1) = dy;
    mat(2, col + 2) = dz;
    mat(3, col) = dy;
    mat(3, col + 1) = dx;
    mat(4, col + 1) = dz;
    mat(4, col + 2) = dy;
    mat(5, col) = dz;
    mat(5, col + 2) = dx;
}

}  // namespace

MaterialProps MaterialProps::damConcrete() {
    MaterialProps m;
    m.E = 27.579e9;
    m.nu = 0.2;
    m.rhoConcrete = 2483.0;
    m.rhoWater = 1000.0;
    return m;
}

void elementMatrices(const std::array<Eigen::Vector3d, 8>& corners,
                     const MaterialProps& mat, const AssemblyOptions& opts,
                     Eigen::Matrix<double, 24, 24>& stiffness,
                     Eigen::Matrix<double, 8, 1>& lumpedMass) {
    Eigen::Matrix<double, 8, 3> X;
    for (int i = 0; i < 8; ++i)
        X.row(i) = corners[i];

    const Eigen::Matrix<double, 6, 6> D = elasticityMatrix(mat.E, mat.nu);
    const Eigen::Matrix3d J0 = shapeGrad(0, 0, 0).transpose() * X;
    const double detJ0 = J0.determinant();
    if (!(detJ0 > 0.0))
        throw InfeasibleGeometry("element with nonpositive Jacobian");
    const Eigen::Matrix3d J0inv = J0.inverse();

    Eigen::Matrix<double, 24, 24> kuu = Eigen::Matrix<double, 24, 24>::Zero();
    Eigen::Matrix<double, 24, 9> kua = Eigen::Matrix<double, 24, 9>::Zero();
    Eigen::Matrix<double, 9, 9> kaa = Eigen::Matrix<double, 9, 9>::Zero();
    lumpedMass.setZero();

    for (int gx = 0; gx < 2; ++gx)
        for (int gy = 0; gy < 2; ++gy)
            for (int gz = 0; gz < 2; ++gz) {
                const double xi = gx ? kGauss : -kGauss;
                const double eta = gy ? kGauss : -kGauss;
                const double zeta = gz ? kGauss : -kGauss;
                const Eigen::Matrix<double, 8, 3> dN = shapeGrad(xi, eta, zeta);
                const Eigen::Matrix3d J = dN.transpose() * X;
                const double detJ = J.determinant();
                if (!(detJ > 0.0))
                    throw InfeasibleGeometry(
                        "element with nonpositive Jacobian");
                const Eigen::Matrix3d Jinv = J.inverse();

                Eigen::Matrix<double, 6, 24> B =
                    Eigen::Matrix<double, 6, 24>::Zero();
                for (int i = 0; i < 8; ++i) {
                    const Eigen::Vector3d g = Jinv * dN.row(i).transpose();
                    fillStrainColumns(B, 3 * i, g(0), g(1), g(2));
                }
                kuu.noalias() += B.transpose() * D * B * detJ;

                const Eigen::Matrix<double, 8, 1> N =
                    shapeValues(xi, eta, zeta);
                lumpedMass += mat.rhoConcrete * detJ * N;

                if (opts.incompatibleModes) {
                    // Incompatible bubble modes 1-xi^2, 1-eta^2, 1-zeta^2;
                    // centroid Jacobian and detJ0/detJ scaling keep the
                    // element exact on constant-strain patches.
                    Eigen::Matrix<double, 3, 3> dP;
                    dP << -2 * xi, 0, 0, 0, -2 * eta, 0, 0, 0, -2 * zeta;
                    Eigen::Matrix<double, 6, 9> G =
                        Eigen::Matrix<double, 6, 9>::Zero();
                    const double scale = detJ0 / detJ;
                    for (int m = 0; m < 3; ++m) {
                        const Eigen::Vector3d g =
                            scale * (J0inv * dP.row(m).transpose());
                        fillStrainColumns(G, 3 * m, g(0), g(1), g(2));
                    }
                    kua.noalias() += B.transpose() * D * G * detJ;
                    kaa.noalias() += G.transpose() * D * G * detJ;
                }
            }

    stiffness = kuu;
    if (opts.incompatibleModes)
        stiffness.noalias() -= kua * kaa.ldlt().solve(kua.transpose());
}

SystemMatrices assemble(const HexMesh& mesh, const MaterialProps& mat,
                        Reservoir reservoir, double reservoirDepth,
                        const AssemblyOptions& opts) {
    const int nNodes = mesh.nodeCount();
    std::vector<char> fixed(nNodes, 0);
    for (int n : mesh.fixedNodes)
        fixed.at(n) = 1;

    SystemMatrices sys;
    sys.dofMap.assign(3 * static_cast<std::size_t>(nNodes), -1);
    int next = 0;
    for (int n = 0; n < nNodes; ++n)
        if (!fixed[n])
            for (int k = 0; k < 3; ++k)
                sys.dofMap[3 * n + k] = next++;
    sys.freeDofs = next;

    Eigen::VectorXd nodalMass = Eigen::VectorXd::Zero(nNodes);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(mesh.elements.size() * 24 * 24 / 2);

    Eigen::Matrix<double, 24, 24> ke;
    Eigen::Matrix<double, 8, 1> me;
    for (const auto& elem : mesh.elements) {
        std::array<Eigen::Vector3d, 8> corners;
        for (int i = 0; i < 8; ++i)
            corners[i] = mesh.nodes[elem[i]];
        elementMatrices(corners, mat, opts, ke, me);
        for (int i = 0; i < 8; ++i)
            nodalMass(elem[i]) += me(i);
        for (int i = 0; i < 24; ++i) {
            const int gi = sys.dofMap[3 * elem[i / 3] + i % 3];
            if (gi < 0)
                continue;
            for (int j = 0; j < 24; ++j) {
                const int gj = sys.dofMap[3 * elem[j / 3] + j % 3];
                if (gj >= 0)
                    triplets.emplace_back(gi, gj, ke(i, j));
            }
        }
    }

    if (reservoir == Reservoir::Full) {
        if (reservoirDepth <= 0.0)
            throw std::invalid_argument("full reservoir needs a positive depth");
        // Free surface at the crest: a node's submergence equals its
        // stored depth below the crest.
        for (const auto& wet : mesh.upstreamFace) {
            const double d = std::clamp(wet.depth, 0.0, reservoirDepth);
            nodalMass(wet.node) +=
                0.875 * mat.rhoWater * std::sqrt(reservoirDepth * d) * wet.area;
        }
    }

    sys.stiffness.resize(sys.freeDofs, sys.freeDofs);
    sys.stiffness.setFromTriplets(triplets.begin(), triplets.end());
    sys.stiffness.makeCompressed();

    sys.massDiag.resize(sys.freeDofs);
    for (int n = 0; n < nNodes; ++n)
        for (int k = 0; k < 3; ++k) {
            const int gi = sys.dofMap[3 * n + k];
            if (gi >= 0)
                sys.massDiag(gi) = nodalMass(n);
        }
    return sys;
}

ModalResult solveModes(const SystemMatrices& sys, const ModalOptions& opts) {
    const int n = sys.freeDofs;
    ModalResult result;
    result.meshStats.freeDofCount = n;
    if (n == 0 || opts.nModes < 1)
        return result;
    if ((sys.massDiag.array() <= 0.0).any())
        throw std::invalid_argument("mass matrix must be positive");

    const int nModes = std::min(opts.nModes, n);
    const int m = std::min(n, std::max(2 * nModes, nModes + 8));

    // Negative shift keeps the factorization definite even with rigid-body
    // modes present (lambda = 0).
    const double diagScale =
        sys.stiffness.diagonal().sum() / sys.massDiag.sum();
    const double sigma = -1e-8 * diagScale;

    Eigen::SparseMatrix<double> shifted(n, n);
    {
        std::vector<Eigen::Triplet<double>> diag;
        diag.reserve(n);
        for (int i = 0; i < n; ++i)
            diag.emplace_back(i, i, -sigma * sys.massDiag(i));
        shifted.setFromTriplets(diag.begin(), diag.end());
    }
    shifted += sys.stiffness;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("stiffness factorization failed");

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd X(n, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i)
            X(i, j) = u(rng);

    // Relative residual per mode, scaled by the largest eigenvalue so
    // near-rigid modes (lambda ~ 0) stay well defined.
    const auto residualsOf = [&](const Eigen::MatrixXd& modes,
                                 const Eigen::VectorXd& lam) {
        const double lambdaRef =
            std::max(lam.head(nModes).cwiseAbs().maxCoeff(), 1e-300);
        std::vector<double> res(nModes);
        for (int j = 0; j < nModes; ++j) {
            const Eigen::VectorXd kphi = sys.stiffness * modes.col(j);
            const Eigen::VectorXd mphi =
                sys.massDiag.asDiagonal() * modes.col(j);
            const double denom = std::max(kphi.norm(), lambdaRef * mphi.norm());
            res[j] = (kphi - lam(j) * mphi).norm() / denom;
        }
        return res;
    };

    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd lambdaPrev =
        Eigen::VectorXd::Constant(m, std::numeric_limits<double>::max());
    std::vector<double> residuals(nModes, 1.0);
    bool converged = false;
    int iter = 0;
    while (iter < opts.maxIterations && !converged) {
        ++iter;
        const Eigen::MatrixXd Y = sys.massDiag.asDiagonal() * X;
        const Eigen::MatrixXd Xh = solver.solve(Y);
        const Eigen::MatrixXd MXh = sys.massDiag.asDiagonal() * Xh;
        const Eigen::MatrixXd Mr = Xh.transpose() * MXh;
        const Eigen::MatrixXd Kr =
            Xh.transpose() * Y + sigma * Mr;  // X^T K X via the shift identity

        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Kr, Mr);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("projected eigensolve failed");
        lambda = es.eigenvalues();
        X = Xh * es.eigenvectors();

        bool stagnated = true;
        for (int j = 0; j < nModes && stagnated; ++j)
            stagnated = std::abs(lambda(j) - lambdaPrev(j)) <=
                        opts.tolerance * std::max(std::abs(lambda(j)), 1e-30);
        lambdaPrev = lambda;
        if (stagnated) {
            residuals = residualsOf(X, lambda);
            converged = *std::max_element(residuals.begin(), residuals.end()) <=
                        opts.residualTol;
        }
    }
    if (!converged)
        residuals = residualsOf(X, lambda);

    result.eigenvalues = lambda.head(nModes);
    result.modes = X.leftCols(nModes);
    result.modeCount = nModes;
    result.iterations = iter;
    result.residuals = residuals;
    result.converged = converged;

    result.frequenciesHz.resize(nModes);
    for (int j = 0; j < nModes; ++j)
        result.frequenciesHz[j] =
            std::sqrt(std::max(result.eigenvalues(j), 0.0)) /
            (2.0 * std::numbers::pi);
    return result;
}

ModalResult damModal(const DamShape& shape, const MeshDivisions& divisions,
                     const MaterialProps& mat, Reservoir reservoir,
                     const AssemblyOptions& assemblyOpts,
                     const ModalOptions& modalOpts) {
    const HexMesh mesh = meshDam(shape, divisions);
    const SystemMatrices sys =
        assemble(mesh, mat, reservoir, shape.height(), assemblyOpts);
    ModalResult result = solveModes(sys, modalOpts);
    result.meshStats.nodeCount = mesh.nodeCount();
    result.meshStats.elementCount = mesh.elementCount();
    result.meshStats.fixedNodeCount = static_cast<int>(mesh.fixedNodes.size());
    return result;
}

}  // namespace archopt
