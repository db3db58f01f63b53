#include <algorithm>
#include <cmath>

#include "archopt/modal.hpp"

namespace archopt {
namespace {

int gridIndex(int ia, int ih, int it, int nArch, int nThick) {
    return (ih * (nArch + 1) + ia) * (nThick + 1) + it;
}

double quadArea(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                const Eigen::Vector3d& c, const Eigen::Vector3d& d) {
    return 0.5 * ((b - a).cross(c - a).norm() + (c - a).cross(d - a).norm());
}

// Trilinear shape-function gradients in reference coordinates.
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

void requirePositiveJacobians(const HexMesh& mesh) {
    const double g = 1.0 / std::sqrt(3.0);
    const double pts[2] = {-g, g};
    for (const auto& elem : mesh.elements) {
        Eigen::Matrix<double, 8, 3> corners;
        for (int i = 0; i < 8; ++i)
            corners.row(i) = mesh.nodes[elem[i]];
        for (double xi : pts)
            for (double eta : pts)
                for (double zeta : pts) {
                    const Eigen::Matrix3d J =
                        shapeGrad(xi, eta, zeta).transpose() * corners;
                    if (!(J.determinant() > 0.0))
                        throw InfeasibleGeometry(
                            "element with nonpositive Jacobian");
                }
    }
}

}  // namespace

HexMesh meshDam(const DamShape& shape, const MeshDivisions& div) {
    if (div.arch < 1 || div.height < 1 || div.thick < 1)
        throw std::invalid_argument("mesh divisions must be positive");
    const int nA = div.arch, nH = div.height, nT = div.thick;
    const double h = shape.height();

    HexMesh mesh;
    mesh.nodes.resize((nA + 1) * (nH + 1) * (nT + 1));
    for (int ih = 0; ih <= nH; ++ih) {
        const double z = h * ih / nH;
        const double w = shape.canyon().halfWidthAt(z);
        for (int ia = 0; ia <= nA; ++ia) {
            const double x = -w + 2.0 * w * ia / nA;
            const FacePoint f = shape.faces(x, z);
            for (int it = 0; it <= nT; ++it) {
                const double y =
                    f.upstream + (f.downstream - f.upstream) * it / nT;
                mesh.nodes[gridIndex(ia, ih, it, nA, nT)] = {x, y, z};
            }
        }
    }

    mesh.elements.reserve(static_cast<std::size_t>(nA) * nH * nT);
    for (int ih = 0; ih < nH; ++ih)
        for (int ia = 0; ia < nA; ++ia)
            for (int it = 0; it < nT; ++it)
                mesh.elements.push_back({
                    gridIndex(ia, ih, it, nA, nT),
                    gridIndex(ia + 1, ih, it, nA, nT),
                    gridIndex(ia + 1, ih, it + 1, nA, nT),
                    gridIndex(ia, ih, it + 1, nA, nT),
                    gridIndex(ia, ih + 1, it, nA, nT),
                    gridIndex(ia + 1, ih + 1, it, nA, nT),
                    gridIndex(ia + 1, ih + 1, it + 1, nA, nT),
                    gridIndex(ia, ih + 1, it + 1, nA, nT),
                });

    for (int ih = 0; ih <= nH; ++ih)
        for (int ia = 0; ia <= nA; ++ia)
            for (int it = 0; it <= nT; ++it)
                if (ih == 0 || ia == 0 || ia == nA)
                    mesh.fixedNodes.push_back(gridIndex(ia, ih, it, nA, nT));
    std::sort(mesh.fixedNodes.begin(), mesh.fixedNodes.end());

    // Tributary areas on the upstream face (it = 0): each patch spreads a
    // quarter of its area to its four corners.
    std::vector<double> area(mesh.nodes.size(), 0.0);
    for (int ih = 0; ih < nH; ++ih)
        for (int ia = 0; ia < nA; ++ia) {
            const int n0 = gridIndex(ia, ih, 0, nA, nT);
            const int n1 = gridIndex(ia + 1, ih, 0, nA, nT);
            const int n2 = gridIndex(ia + 1, ih + 1, 0, nA, nT);
            const int n3 = gridIndex(ia, ih + 1, 0, nA, nT);
            const double a = quadArea(mesh.nodes[n0], mesh.nodes[n1],
                                      mesh.nodes[n2], mesh.nodes[n3]);
            for (int n : {n0, n1, n2, n3})
                area[n] += 0.25 * a;
        }
    for (int ih = 0; ih <= nH; ++ih)
        for (int ia = 0; ia <= nA; ++ia) {
            const int n = gridIndex(ia, ih, 0, nA, nT);
            mesh.upstreamFace.push_back(
                {n, area[n], h - mesh.nodes[n].z()});
        }

    requirePositiveJacobians(mesh);
    return mesh;
}

HexMesh meshBlock(double lx, double ly, double lz, int nx, int ny, int nz,
                  bool fixX0) {
    if (nx < 1 || ny < 1 || nz < 1)
        throw std::invalid_argument("mesh divisions must be positive");
    HexMesh mesh;
    auto idx = [=](int i, int j, int k) {
        return (i * (ny + 1) + j) * (nz + 1) + k;
    };
    mesh.nodes.resize((nx + 1) * (ny + 1) * (nz + 1));
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= ny; ++j)
            for (int k = 0; k <= nz; ++k)
                mesh.nodes[idx(i, j, k)] = {lx * i / nx, ly * j / ny,
                                            lz * k / nz};
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k)
                mesh.elements.push_back({
                    idx(i, j, k), idx(i + 1, j, k), idx(i + 1, j + 1, k),
                    idx(i, j + 1, k), idx(i, j, k + 1), idx(i + 1, j, k + 1),
                    idx(i + 1, j + 1, k + 1), idx(i, j + 1, k + 1),
                });
    if (fixX0)
        for (int j = 0; j <= ny; ++j)
            for (int k = 0; k <= nz; ++k)
                mesh.fixedNodes.push_back(idx(0, j, k));
    std::sort(mesh.fixedNodes.begin(), mesh.fixedNodes.end());
    requirePositiveJacobians(mesh);
    return mesh;
}

}  // namespace archopt
