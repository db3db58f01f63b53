#pragma once

#include <span>
#include <vector>

namespace archopt {

/// One evaluated point in objective space. `fitness` components are
/// minimized. `violation` aggregates constraint magnitudes (0 = feasible).
/// `valid` is false when the evaluator itself failed (e.g. the structural
/// model did not converge); such points lose against everything.
struct Evaluation {
    std::vector<double> fitness;
    double violation = 0.0;
    bool valid = true;
    std::vector<double> aux;  // problem-specific extras carried through archives
};

/// Constrained Pareto dominance, minimization convention:
///   - a valid point beats an invalid one,
///   - a feasible point beats an infeasible one,
///   - among infeasible points, strictly lower total violation wins,
///   - among feasible points, <= in every objective and < in at least one.
bool dominates(const Evaluation& a, const Evaluation& b);

/// Nondominated front indices (front 1 first), by iterative peeling of the
/// constrained-dominance relation.
std::vector<std::vector<int>> sortFronts(std::span<const Evaluation> points);

/// Front index per point, 1 = nondominated.
std::vector<int> paretoRank(std::span<const Evaluation> points);

/// Indices of the nondominated subset (front 1).
std::vector<int> nondominatedSubset(std::span<const Evaluation> points);

/// Hypervolume dominated by a 2-objective front relative to `ref`
/// (minimization; points not strictly below ref in both objectives are
/// ignored).
double hypervolume2d(std::span<const Evaluation> points,
                     double ref1, double ref2);

}  // namespace archopt
