#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "archopt/mocss.hpp"
#include "archopt/problem.hpp"

namespace archopt {

struct Nsga2Params {
    int populationSize = 100;
    int generations = 200;
    double crossoverProb = 0.9;
    /// Per-gene mutation probability; <= 0 selects 1/dimension.
    double mutationProb = 0.0;
    double etaC = 20.0;  // crossover distribution index
    double etaM = 20.0;  // mutation distribution index
    int workers = 1;
};

/// Crowding distance per front member: boundary members get +infinity,
/// interior members the per-objective-range-normalized cuboid
/// semi-perimeter. Objectives with zero range contribute nothing.
std::vector<double> crowdingDistance(std::span<const Evaluation> front);

/// Standard elitist nondominated-sorting GA: binary tournament on
/// (rank, crowding), simulated binary crossover and polynomial mutation in
/// unit-cube coordinates (clipped to [0,1]), environmental selection over
/// parents + children. Returns the final population's first front in
/// canonical order. Initial positions are drawn individual-major from
/// mt19937_64(seed), as in cssOptimize; identical seed and params
/// reproduce the result bit for bit. The observer receives the first
/// front after initialization (generation 0) and after every generation.
ParetoArchive nsga2Optimize(const Problem& problem, const Nsga2Params& params,
                            std::uint64_t seed,
                            const ArchiveObserver& observer = {});

/// Polynomial mutation of a unit-cube point in place; returns the number
/// of mutated genes. Exposed for statistical verification.
int mutatePolynomial(Eigen::VectorXd& x, double mutationProb, double etaM,
                     std::mt19937_64& rng);

/// Simulated binary crossover of two unit-cube parents; children are
/// clipped to [0,1]. Exposed for property tests.
void crossoverSbx(const Eigen::VectorXd& p1, const Eigen::VectorXd& p2,
                  double crossoverProb, double etaC, std::mt19937_64& rng,
                  Eigen::VectorXd& c1, Eigen::VectorXd& c2);

}  // namespace archopt
