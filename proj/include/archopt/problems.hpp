#pragma once

#include <memory>
#include <string>
#include <vector>

#include "archopt/design.hpp"
#include "archopt/geometry.hpp"
#include "archopt/modal.hpp"
#include "archopt/problem.hpp"

namespace archopt {

/// Bi-objective toy: f1 = |x|^2, f2 = |x - 1|^2 over [-1, 2]^dim. The
/// optimal set is the segment x = t * ones, t in [0, 1].
class SpherePairProblem : public Problem {
public:
    explicit SpherePairProblem(int dim = 2);

    std::string name() const override { return "sphere"; }
    int dimension() const override { return static_cast<int>(lower_.size()); }
    int objectives() const override { return 2; }
    const Eigen::VectorXd& lowerBounds() const override { return lower_; }
    const Eigen::VectorXd& upperBounds() const override { return upper_; }
    Evaluation evaluate(const Eigen::VectorXd& x) const override;

    /// Design-space distance from x to the optimal segment.
    static double distanceToOptimalSet(const Eigen::VectorXd& x);

    /// Euclidean objective-space distance from (f1, f2) to the optimal
    /// front curve sqrt(f1) + sqrt(f2) = sqrt(dim).
    double distanceToFront(double f1, double f2) const;

private:
    Eigen::VectorXd lower_, upper_;
};

/// The classic 30-variable benchmark with objectives f1 = x1 and
/// f2 = g * (1 - sqrt(x1/g)), g = 1 + 9 * mean(x2..xn); its optimal front
/// is f2 = 1 - sqrt(f1) on [0, 1].
class Zdt1Problem : public Problem {
public:
    explicit Zdt1Problem(int dim = 30);

    std::string name() const override { return "zdt1"; }
    int dimension() const override { return static_cast<int>(lower_.size()); }
    int objectives() const override { return 2; }
    const Eigen::VectorXd& lowerBounds() const override { return lower_; }
    const Eigen::VectorXd& upperBounds() const override { return upper_; }
    Evaluation evaluate(const Eigen::VectorXd& x) const override;

    static double frontF2(double f1);
    /// Euclidean objective-space distance from (f1, f2) to the optimal
    /// front curve.
    static double distanceToFront(double f1, double f2);

private:
    Eigen::VectorXd lower_, upper_;
};

/// Which dam objective vector to expose.
enum class DamObjective {
    P1,  // [volume, 1/fr_1, ..., 1/fr_n]
    P2,  // [volume, sum_k 1/fr_k]
    P3,  // [volume, prod_k 1/fr_k]
};

/// Fitness vector for a given variant from an already-computed volume and
/// frequency list. The P3 product is accumulated in the log domain.
std::vector<double> fitnessFromFrequencies(DamObjective kind, double volume,
                                           const std::vector<double>& freqsHz);

struct DamProblemConfig {
    DamObjective kind = DamObjective::P2;
    int nFreq = 10;
    CanyonProfile canyon = CanyonProfile::wideValley();
    GeometryOptions geometry;
    MeshDivisions mesh;
    MaterialProps material = MaterialProps::damConcrete();
    Reservoir reservoir = Reservoir::Full;
    AssemblyOptions assembly;
    ModalOptions modal;
};

/// Volume-versus-frequency dam design problem over the 20 shape variables.
/// The violation aggregates the shape constraints; evaluator failures
/// (unmeshable geometry, modal non-convergence) yield invalid evaluations
/// with sentinel fitness. aux carries [volume, fr_1..fr_n] for reporting.
class DamProblem : public Problem {
public:
    explicit DamProblem(DamProblemConfig config);

    std::string name() const override;
    int dimension() const override { return kDesignDim; }
    int objectives() const override;
    const Eigen::VectorXd& lowerBounds() const override { return lower_; }
    const Eigen::VectorXd& upperBounds() const override { return upper_; }
    Evaluation evaluate(const Eigen::VectorXd& x) const override;

    const DamProblemConfig& config() const { return config_; }

private:
    DamProblemConfig config_;
    Eigen::VectorXd lower_, upper_;
};

/// Factory for the named benchmark problems: "sphere", "zdt1". Unknown
/// names throw invalid_argument.
std::unique_ptr<Problem> syntheticProblem(const std::string& name);

}  // namespace archopt
