#pragma once

#include <array>
#include <span>

#include "archopt/design.hpp"

namespace archopt {

/// Vertical offset g(z) of the crown cantilever's upstream edge.
/// z is elevation above the base, 0 <= z <= h; the slope dg/dz vanishes
/// at z = beta*h. Throws std::domain_error for z outside [0, h].
double crownCurve(double gamma, double beta, double h, double z);

/// d/dz of crownCurve.
double crownCurveSlope(double gamma, double beta, double h, double z);

/// Polynomial interpolation through (nodes[i], values[i]) evaluated at z.
/// Throws std::invalid_argument on duplicate nodes.
double lagrangeInterp(std::span<const double> nodes,
                      std::span<const double> values, double z);

/// Derivative of the interpolating polynomial at z.
double lagrangeInterpDerivative(std::span<const double> nodes,
                                std::span<const double> values, double z);

/// Elevation of control level i (0 = crest, kLevels-1 = base).
double controlLevelZ(int level, double height);

struct FacePoint {
    double upstream;    // y_u(x, z)
    double downstream;  // y_d(x, z)
    double thickness() const { return downstream - upstream; }
};

/// Per-constraint violation magnitudes; each entry is 0 exactly when the
/// corresponding condition holds.
struct ConstraintViolations {
    std::array<double, kLevels> radiusOrder{};   // max(0, rd_i/ru_i - 1)
    double overhang = 0.0;                       // max(0, |s|/sAbw - 1)
    std::array<double, kLevels> centralAngle{};  // degrees outside [phiLower, phiUpper]
    double radiusPositivity = 0.0;               // interpolated radii stay positive

    double total() const;
    bool feasible() const { return total() <= 0.0; }
};

struct GeometryOptions {
    int quadratureX = 64;       // cells across the canyon width
    int quadratureZ = 64;       // cells over the height
    int slopeSamples = 201;     // z-samples for the overhang slope scan
    double sAbw = 0.3;          // allowable overhang slope magnitude
    double phiLowerDeg = 90.0;  // central-angle band (degrees)
    double phiUpperDeg = 130.0;
};

/// Evaluated shape: face interpolants plus the derived quantities the
/// optimization objectives and constraints need.
class DamShape {
public:
    DamShape(DesignVector design, CanyonProfile canyon,
             const GeometryOptions& opts = {});

    const DesignVector& design() const { return design_; }
    const CanyonProfile& canyon() const { return canyon_; }
    double height() const { return canyon_.height; }

    double crownOffset(double z) const;      // g(z)
    double crownThickness(double z) const;   // t_c(z)
    double upstreamRadius(double z) const;   // r_u(z)
    double downstreamRadius(double z) const; // r_d(z)

    /// Upstream/downstream face ordinates at (x, z). Requires |x| within
    /// the canyon half-width at z. A nonpositive interpolated radius is
    /// reported through violations(), not by throwing.
    FacePoint faces(double x, double z) const;

    double volume() const { return volume_; }
    double overhangSlope() const { return overhangSlope_; }  // signed, max |dy/dz|
    const std::array<double, kLevels>& centralAngleDeg() const { return centralAngleDeg_; }
    const ConstraintViolations& violations() const { return violations_; }
    bool radiiPositive() const { return violations_.radiusPositivity <= 0.0; }

private:
    DesignVector design_;
    CanyonProfile canyon_;
    std::array<double, kLevels> levelZ_{};
    double volume_ = 0.0;
    double overhangSlope_ = 0.0;
    std::array<double, kLevels> centralAngleDeg_{};
    ConstraintViolations violations_;
};

/// Concrete volume by composite midpoint quadrature of the face gap over
/// the projected canyon region; rows of nx cells are mapped onto the local
/// canyon width at each z midpoint.
double shapeVolume(const DamShape& shape, int nx, int nz);

/// Constraint magnitudes for an evaluated shape (radius ordering, overhang
/// slope against sAbw, central angles against the [phiLower, phiUpper] band).
ConstraintViolations constraintCheck(const DamShape& shape,
                                     const GeometryOptions& opts = {});

}  // namespace archopt
