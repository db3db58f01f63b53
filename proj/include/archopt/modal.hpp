#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "archopt/geometry.hpp"

namespace archopt {

/// Geometry that cannot be meshed into well-formed hexahedra (inverted or
/// degenerate elements). Callers treat the design as infeasible.
struct InfeasibleGeometry : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MaterialProps {
    double E = 0.0;            // Pa
    double nu = 0.0;
    double rhoConcrete = 0.0;  // kg/m^3
    double rhoWater = 0.0;     // kg/m^3

    static MaterialProps damConcrete();
};

/// Wet-face node bookkeeping for hydrodynamic added mass: the tributary
/// area of the node's patch and its depth below the crest.
struct WetFaceNode {
    int node = 0;
    double area = 0.0;   // m^2
    double depth = 0.0;  // m below the crest
};

struct HexMesh {
    std::vector<Eigen::Vector3d> nodes;
    std::vector<std::array<int, 8>> elements;
    std::vector<int> fixedNodes;  // sorted, unique
    std::vector<WetFaceNode> upstreamFace;

    int nodeCount() const { return static_cast<int>(nodes.size()); }
    int elementCount() const { return static_cast<int>(elements.size()); }
};

struct MeshDivisions {
    int arch = 16;
    int height = 8;
    int thick = 2;
};

/// Structured hex mesh of the dam body between the two faces. Nodes at the
/// base (z = 0) and on both canyon flanks are fixed. Throws
/// InfeasibleGeometry when any element Jacobian fails to stay positive.
HexMesh meshDam(const DamShape& shape, const MeshDivisions& divisions = {});

/// Axis-aligned block mesh (beam/patch fixtures). Optionally fixes the
/// x = 0 face; never populates the wet face.
HexMesh meshBlock(double lx, double ly, double lz, int nx, int ny, int nz,
                  bool fixX0 = true);

enum class Reservoir { Empty, Full };

struct AssemblyOptions {
    /// Augment each hexahedron with condensed incompatible bending modes
    /// (the "extra displacement shapes" of classic solid elements). Off by
    /// default: the plain trilinear element.
    bool incompatibleModes = false;
};

/// Assembled free-DOF system: sparse stiffness plus a diagonal (lumped)
/// mass vector. dofMap[3*node + k] is the free-DOF index or -1 when fixed.
struct SystemMatrices {
    Eigen::SparseMatrix<double> stiffness;
    Eigen::VectorXd massDiag;
    std::vector<int> dofMap;
    int freeDofs = 0;
};

/// Stiffness from trilinear isoparametric elasticity integrated with
/// 2x2x2 Gauss quadrature; mass lumped by row sum. A full reservoir of
/// depth H adds 7/8 * rho_w * sqrt(H*(H-z)) * A_trib to all three
/// translational DOFs of every upstream-face node at elevation z.
SystemMatrices assemble(const HexMesh& mesh, const MaterialProps& mat,
                        Reservoir reservoir, double reservoirDepth = 0.0,
                        const AssemblyOptions& opts = {});

struct ModalOptions {
    int nModes = 10;
    int maxIterations = 400;
    double tolerance = 1e-10;    // relative eigenvalue stagnation
    double residualTol = 1e-6;   // acceptance threshold per mode
    std::uint64_t seed = 20260814;  // start-vector seed (deterministic)
};

struct MeshStats {
    int nodeCount = 0;
    int elementCount = 0;
    int fixedNodeCount = 0;
    int freeDofCount = 0;
};

struct ModalResult {
    std::vector<double> frequenciesHz;  // sorted ascending, size modeCount
    Eigen::VectorXd eigenvalues;        // omega^2, sorted ascending
    Eigen::MatrixXd modes;              // free-DOF columns, M-orthonormal
    std::vector<double> residuals;      // ||K phi - lambda M phi|| scaled
    int modeCount = 0;
    int iterations = 0;
    bool converged = false;
    MeshStats meshStats;
};

/// Lowest eigenpairs of K phi = lambda M phi by shifted subspace iteration
/// (sparse LDLT solves + dense Rayleigh-Ritz reduction).
ModalResult solveModes(const SystemMatrices& sys, const ModalOptions& opts = {});

/// Mesh + assemble + solve for a dam shape; reservoir depth is the dam
/// height when Full.
ModalResult damModal(const DamShape& shape, const MeshDivisions& divisions,
                     const MaterialProps& mat, Reservoir reservoir,
                     const AssemblyOptions& assemblyOpts = {},
                     const ModalOptions& modalOpts = {});

/// Element stiffness for one hexahedron (24x24, condensed when
/// incompatible modes are on) and its lumped nodal masses. Exposed for
/// verification against independent assemblies.
void elementMatrices(const std::array<Eigen::Vector3d, 8>& corners,
                     const MaterialProps& mat, const AssemblyOptions& opts,
                     Eigen::Matrix<double, 24, 24>& stiffness,
                     Eigen::Matrix<double, 8, 1>& lumpedMass);

}  // namespace archopt
