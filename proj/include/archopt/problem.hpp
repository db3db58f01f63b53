#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "archopt/pareto.hpp"

namespace archopt {

/// Box-bounded minimization problem. evaluate() must be safe to call from
/// several threads at once; it is a pure function of the argument.
class Problem {
public:
    virtual ~Problem() = default;

    virtual std::string name() const = 0;
    virtual int dimension() const = 0;
    virtual int objectives() const = 0;
    virtual const Eigen::VectorXd& lowerBounds() const = 0;
    virtual const Eigen::VectorXd& upperBounds() const = 0;

    /// Fitness vector (minimized) plus aggregate constraint violation.
    /// `x` is in the problem's own coordinates, not normalized.
    virtual Evaluation evaluate(const Eigen::VectorXd& x) const = 0;

    /// Map a point from the unit cube to the bounded design space.
    Eigen::VectorXd denormalize(const Eigen::VectorXd& unit) const;
};

/// Optimizer agent. Positions and velocities live in the unit cube; the
/// problem bounds map them to physical coordinates for evaluation.
struct Particle {
    Eigen::VectorXd position;
    Eigen::VectorXd velocity;
    Evaluation eval;
    int rank = 1;       // Pareto front index, 1 = nondominated
    double charge = 0.0;
};

/// Nondominated set carried between iterations and returned by optimizers,
/// kept in a canonical (fitness-lexicographic) order.
using ParetoArchive = std::vector<Particle>;

/// Evaluate all points (unit-cube coordinates) with `workers` threads.
/// Results are indexed like the input regardless of the thread count.
std::vector<Evaluation> evaluatePopulation(
    const Problem& problem, const std::vector<Eigen::VectorXd>& unitPoints,
    int workers = 1);

/// Worker count from the ARCHOPT_WORKERS environment variable (>= 1;
/// unset or unparsable means 1).
int defaultWorkerCount();

}  // namespace archopt
