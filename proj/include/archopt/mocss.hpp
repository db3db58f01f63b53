#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "archopt/problem.hpp"

namespace archopt {

struct CssParams {
    int agents = 100;
    int iterations = 200;
    double ka = 2.0;  // acceleration gain
    double kv = 2.0;  // velocity gain
    /// Charged-sphere radius in unit-cube coordinates; <= 0 selects the
    /// default 0.10 * sqrt(dimension).
    double sphereRadius = 0.0;
    double attractProb = 0.8;  // probability a force pulls instead of pushes
    double cmcr = 0.95;        // memory-considering rate of the repair
    double par = 0.10;         // pitch-adjust rate of the repair
    /// Archive capacity; <= 0 selects the agent count.
    int archiveCapacity = 0;
    double distanceScale = 1.0;  // alpha of the pruning scale factors
    /// Gate direction: by default particles on strictly better fronts exert
    /// force on worse ones; the inverted reading is kept selectable.
    bool invertedRankGate = false;
    /// Pruning scale mode: false = chained ratios u_k = u_{k-1} *
    /// worst_k / worst_{k-1}; true = u_k = alpha * worst_1 / worst_k.
    bool normalizedScale = false;
    double kt = 0.75;  // reserved tuning constant, not used by the update
    int workers = 1;   // evaluation fan-out
};

/// Charge per particle: the product over objectives of
/// (fit_k - worst_k) / (best_k - worst_k), accumulated in the log domain
/// with each factor floored at 1e-12. Best/worst are taken over particles
/// with valid evaluations; invalid particles get charge 0. A degenerate
/// objective (best == worst) contributes factor 1.
std::vector<double> charges(std::span<const Particle> population);

/// Front index per particle (1 = nondominated), written to Particle::rank.
void assignRanks(std::vector<Particle>& population);

/// Resultant force on particle j. Particle i contributes
///   q_i * (r_ij / a^3) * (X_i - X_j)          when r_ij < a,
///   q_i * (1 / r_ij^2) * (X_i - X_j)          otherwise,
/// multiplied by arSigns[i] (+1 attract / -1 repel) and gated to zero
/// unless i occupies a strictly better front than j (strictly worse when
/// invertedRankGate). r_ij is the unit-cube Euclidean distance plus 1e-9.
Eigen::VectorXd forceOn(int j, std::span<const Particle> population,
                        const CssParams& params,
                        std::span<const double> arSigns);

/// Newtonian position update:
///   X_new = rand1 * ka * F + rand2 * kv * V_old + X_old,
///   V_new = X_new - X_old.
void moveParticle(Particle& particle, const Eigen::VectorXd& force,
                  const CssParams& params, double rand1, double rand2);

/// Harmony-style repair of out-of-cube components: each violating
/// component is, with probability cmcr, copied from a random memory entry
/// (and then, with probability par, blended toward the same component of
/// another random entry); otherwise redrawn uniformly. In-range components
/// are untouched. An empty memory falls back to uniform redraws.
Eigen::VectorXd repairPosition(const Eigen::VectorXd& position,
                               const ParetoArchive& memory,
                               const CssParams& params, std::mt19937_64& rng);

/// Pruning scale factors from per-objective worst values: u_1 = alpha,
/// then chained ratios (default) or the normalized alternative (see
/// CssParams::normalizedScale). A zero worst value makes the scale
/// undefined and throws domain_error.
std::vector<double> scaleFactors(std::span<const double> worstPerObjective,
                                 double alpha, bool normalized);

/// Scaled objective-space distance used by archive pruning.
double objectiveDistance(const Evaluation& a, const Evaluation& b,
                         std::span<const double> u);

/// Merge fresh particles into the archive: keep the nondominated subset of
/// the union, then, while over capacity, delete one member of the closest
/// pair under objectiveDistance. Per-objective extreme points are immune
/// to pruning. The result is in canonical (fitness-lexicographic) order.
ParetoArchive archiveUpdate(ParetoArchive memory,
                            std::span<const Particle> fresh, int capacity,
                            std::span<const double> u);

/// Called after the initial archive build (iteration 0) and after each
/// iteration's archive update.
using ArchiveObserver =
    std::function<void(int iteration, const ParetoArchive&)>;

/// Full charged-system search run. Initial positions are drawn agent-major
/// (agent 0's components first) from mt19937_64(seed) through
/// uniform_real_distribution<double>(0, 1); velocities start at zero.
/// Identical seed and params reproduce the archive bit for bit.
ParetoArchive cssOptimize(const Problem& problem, const CssParams& params,
                          std::uint64_t seed,
                          const ArchiveObserver& observer = {});

}  // namespace archopt
