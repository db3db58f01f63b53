#include "archopt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace archopt {
namespace {

// Radii this small are already flagged by the positivity constraint; the
// clamp only keeps face ordinates finite for the volume quadrature.
constexpr double kTinyRadius = 1e-9;

double safeRadius(double r) {
    if (std::abs(r) < kTinyRadius)
        return r < 0.0 ? -kTinyRadius : kTinyRadius;
    return r;
}

void checkNodes(std::span<const double> nodes, std::span<const double> values) {
    if (nodes.size() != values.size() || nodes.empty())
        throw std::invalid_argument("interpolation needs matching, nonempty nodes/values");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (std::abs(nodes[i] - nodes[j]) <
                1e-12 * std::max({1.0, std::abs(nodes[i]), std::abs(nodes[j])}))
                throw std::invalid_argument("interpolation nodes must be distinct");
}

}  // namespace

double crownCurve(double gamma, double beta, double h, double z) {
    if (z < 0.0 || z > h)
        throw std::domain_error("crown curve evaluated outside [0, h]");
    return gamma * z * z / (2.0 * beta * h) - gamma * z;
}

double crownCurveSlope(double gamma, double beta, double h, double z) {
    if (z < 0.0 || z > h)
        throw std::domain_error("crown curve evaluated outside [0, h]");
    return gamma * z / (beta * h) - gamma;
}

double lagrangeInterp(std::span<const double> nodes,
                      std::span<const double> values, double z) {
    checkNodes(nodes, values);
    const std::size_t n = nodes.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double basis = 1.0;
        for (std::size_t m = 0; m < n; ++m)
            if (m != i)
                basis *= (z - nodes[m]) / (nodes[i] - nodes[m]);
        sum += values[i] * basis;
    }
    return sum;
}

double lagrangeInterpDerivative(std::span<const double> nodes,
                                std::span<const double> values, double z) {
    checkNodes(nodes, values);
    const std::size_t n = nodes.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dBasis = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i)
                continue;
            double term = 1.0 / (nodes[i] - nodes[j]);
            for (std::size_t m = 0; m < n; ++m)
                if (m != i && m != j)
                    term *= (z - nodes[m]) / (nodes[i] - nodes[m]);
            dBasis += term;
        }
        sum += values[i] * dBasis;
    }
    return sum;
}

double controlLevelZ(int level, double height) {
    if (level < 0 || level >= kLevels)
        throw std::out_of_range("control level out of range");
    return height * static_cast<double>(kLevels - 1 - level) / (kLevels - 1);
}

double ConstraintViolations::total() const {
    double t = overhang + radiusPositivity;
    for (int i = 0; i < kLevels; ++i)
        t += radiusOrder[i] + centralAngle[i];
    return t;
}

DamShape::DamShape(DesignVector design, CanyonProfile canyon,
                   const GeometryOptions& opts)
    : design_(design), canyon_(std::move(canyon)) {
    canyon_.validate();
    if (opts.quadratureX < 1 || opts.quadratureZ < 1 || opts.slopeSamples < 2)
        throw std::invalid_argument("geometry options need positive resolutions");
    const double h = canyon_.height;
    for (int i = 0; i < kLevels; ++i)
        levelZ_[i] = controlLevelZ(i, h);

    const int ns = opts.slopeSamples;
    for (int k = 0; k < ns; ++k) {
        const double z = h * k / (ns - 1);
        const double su = crownCurveSlope(design_.gamma, design_.beta, h, z);
        const double sd =
            su + lagrangeInterpDerivative(levelZ_, design_.tc, z);
        if (std::abs(su) > std::abs(overhangSlope_))
            overhangSlope_ = su;
        if (std::abs(sd) > std::abs(overhangSlope_))
            overhangSlope_ = sd;
    }

    constexpr double radToDeg = 180.0 / std::numbers::pi;
    for (int i = 0; i < kLevels; ++i) {
        const double xa = canyon_.halfWidthAt(levelZ_[i]);
        centralAngleDeg_[i] = 2.0 * std::atan(xa / design_.ru[i]) * radToDeg;
    }

    violations_ = constraintCheck(*this, opts);
    volume_ = shapeVolume(*this, opts.quadratureX, opts.quadratureZ);
}

double DamShape::crownOffset(double z) const {
    return crownCurve(design_.gamma, design_.beta, canyon_.height, z);
}

double DamShape::crownThickness(double z) const {
    return lagrangeInterp(levelZ_, design_.tc, z);
}

double DamShape::upstreamRadius(double z) const {
    return lagrangeInterp(levelZ_, design_.ru, z);
}

double DamShape::downstreamRadius(double z) const {
    return lagrangeInterp(levelZ_, design_.rd, z);
}

FacePoint DamShape::faces(double x, double z) const {
    const double ru = safeRadius(upstreamRadius(z));
    const double rd = safeRadius(downstreamRadius(z));
    const double g = crownOffset(z);
    FacePoint p;
    p.upstream = x * x / (2.0 * ru) + g;
    p.downstream = x * x / (2.0 * rd) + g + crownThickness(z);
    return p;
}

double shapeVolume(const DamShape& shape, int nx, int nz) {
    if (nx < 1 || nz < 1)
        throw std::invalid_argument("quadrature needs at least one cell per axis");
    const double h = shape.height();
    const double dz = h / nz;
    double volume = 0.0;
    for (int iz = 0; iz < nz; ++iz) {
        const double zm = (iz + 0.5) * dz;
        const double w = shape.canyon().halfWidthAt(zm);
        const double dx = 2.0 * w / nx;
        double row = 0.0;
        for (int ix = 0; ix < nx; ++ix) {
            const double xm = (ix + 0.5) * dx - w;
            row += std::abs(shape.faces(xm, zm).thickness());
        }
        volume += row * dx * dz;
    }
    return volume;
}

ConstraintViolations constraintCheck(const DamShape& shape,
                                     const GeometryOptions& opts) {
    ConstraintViolations v;
    const DesignVector& d = shape.design();
    for (int i = 0; i < kLevels; ++i)
        v.radiusOrder[i] = d.ru[i] > 0.0
                               ? std::max(0.0, d.rd[i] / d.ru[i] - 1.0)
                               : std::max(0.0, d.rd[i] - d.ru[i]);

    v.overhang = std::max(0.0, std::abs(shape.overhangSlope()) / opts.sAbw - 1.0);

    for (int i = 0; i < kLevels; ++i) {
        const double phi = shape.centralAngleDeg()[i];
        v.centralAngle[i] = std::max(0.0, opts.phiLowerDeg - phi) +
                            std::max(0.0, phi - opts.phiUpperDeg);
    }

    const double h = shape.height();
    const int ns = std::max(2, opts.slopeSamples);
    double minR = std::numeric_limits<double>::infinity();
    for (int k = 0; k < ns; ++k) {
        const double z = h * k / (ns - 1);
        minR = std::min({minR, shape.upstreamRadius(z), shape.downstreamRadius(z)});
    }
    v.radiusPositivity = minR > 0.0 ? 0.0 : 1.0 - minR;
    return v;
}

}  // namespace archopt
