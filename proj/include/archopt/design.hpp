#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace archopt {

/// Number of control levels along the dam height (crest = level 0,
/// base = level 5); the height is split into kLevels-1 equal divisions.
inline constexpr int kLevels = 6;

/// Number of free shape parameters: gamma, beta, and per-level crown
/// thickness / upstream radius / downstream radius.
inline constexpr int kDesignDim = 2 + 3 * kLevels;

/// The 20 shape parameters of a double-curvature parabolic arch dam.
/// Level arrays are indexed from the crest down.
struct DesignVector {
    double gamma = 0.0;              // crown-curve coefficient, dimensionless
    double beta = 0.5;               // fraction of height where the upstream slope vanishes
    std::array<double, kLevels> tc{};  // crown thickness per level (m)
    std::array<double, kLevels> ru{};  // upstream radius of curvature per level (m)
    std::array<double, kLevels> rd{};  // downstream radius of curvature per level (m)

    std::array<double, kDesignDim> flatten() const;
    static DesignVector unflatten(std::span<const double> x);
};

/// Componentwise box bounds on a flat design vector.
struct DesignBounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dimension() const { return lower.size(); }
    bool contains(std::span<const double> x, double tol = 0.0) const;
};

/// Classic preliminary-design ranges for the 20 dam shape parameters.
DesignBounds damDesignBounds();

/// Verification baseline for the Morrow Point model: crest thickness
/// 3.66 m, base thickness 15.85 m, interior profile and radii calibrated
/// so the computed natural frequencies match reference values for the
/// dam. Not a constraint-feasible design in either built-in canyon.
DesignVector morrowPointBaseline();

/// In-bounds design with a linear 3.66 -> 15.85 m thickness taper that
/// satisfies every shape constraint inside the wide-valley canyon. Fixture
/// for constraint and optimizer tests.
DesignVector feasibleReference();

/// Symmetric valley wall in the xz plane: half-width of the canyon as a
/// piecewise-linear function of elevation z (z = 0 at the base).
struct CanyonProfile {
    double height = 0.0;
    std::vector<std::pair<double, double>> levels;  // (z, halfWidth), ascending z

    double halfWidthAt(double z) const;
    void validate() const;  // throws std::invalid_argument on a malformed profile

    /// Default benchmark profile: 142.65 m high, 110.34 m crest half-width,
    /// 30 m base half-width, linear between.
    static CanyonProfile morrowPoint();

    /// Same crest but a 45 m base half-width: with the standard radius
    /// bounds, every control level can hold a central angle inside
    /// [90, 130] degrees, so feasible designs exist. Used by the
    /// optimization examples.
    static CanyonProfile wideValley();

    static CanyonProfile fromJson(const std::string& text);
    static CanyonProfile fromJsonFile(const std::string& path);
    std::string toJson() const;
};

}  // namespace archopt
