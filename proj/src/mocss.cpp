#include "archopt/mocss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "archopt/pareto.hpp"

namespace archopt {

namespace {

constexpr double kChargeFloor = 1e-12;
constexpr double kDistanceEps = 1e-9;

bool canonicalLess(const Particle& a, const Particle& b) {
    if (a.eval.fitness != b.eval.fitness)
        return a.eval.fitness < b.eval.fitness;
    return std::lexicographical_compare(
        a.position.data(), a.position.data() + a.position.size(),
        b.position.data(), b.position.data() + b.position.size());
}

std::vector<Evaluation> evaluationsOf(std::span<const Particle> population) {
    std::vector<Evaluation> evals;
    evals.reserve(population.size());
    for (const auto& p : population)
        evals.push_back(p.eval);
    return evals;
}

void validate(const CssParams& p) {
    if (p.agents <= 0 || p.iterations < 0)
        throw std::invalid_argument("css: agents/iterations out of range");
    if (p.ka <= 0.0 || p.kv <= 0.0 || p.distanceScale <= 0.0)
        throw std::invalid_argument("css: gains must be positive");
    const bool probsOk = p.attractProb >= 0.0 && p.attractProb <= 1.0 &&
                         p.cmcr >= 0.0 && p.cmcr <= 1.0 && p.par >= 0.0 &&
                         p.par <= 1.0;
    if (!probsOk)
        throw std::invalid_argument("css: probabilities must be in [0,1]");
}

}  // namespace

std::vector<double> charges(std::span<const Particle> population) {
    std::vector<double> q(population.size(), 0.0);
    if (population.empty())
        return q;
    const std::size_t nObj = population.front().eval.fitness.size();

    std::vector<double> best(nObj, std::numeric_limits<double>::infinity());
    std::vector<double> worst(nObj, -std::numeric_limits<double>::infinity());
    bool anyValid = false;
    for (const auto& p : population) {
        if (!p.eval.valid)
            continue;
        anyValid = true;
        for (std::size_t k = 0; k < nObj; ++k) {
            best[k] = std::min(best[k], p.eval.fitness[k]);
            worst[k] = std::max(worst[k], p.eval.fitness[k]);
        }
    }
    if (!anyValid)
        return q;

    for (std::size_t i = 0; i < population.size(); ++i) {
        if (!population[i].eval.valid)
            continue;
        double logQ = 0.0;
        for (std::size_t k = 0; k < nObj; ++k) {
            const double span = best[k] - worst[k];
            double factor = 1.0;  // degenerate objective contributes nothing
            if (span != 0.0)
                factor = (population[i].eval.fitness[k] - worst[k]) / span;
            logQ += std::log(std::max(factor, kChargeFloor));
        }
        q[i] = std::exp(logQ);
    }
    return q;
}

void assignRanks(std::vector<Particle>& population) {
    const auto ranks = paretoRank(evaluationsOf(population));
    for (std::size_t i = 0; i < population.size(); ++i)
        population[i].rank = ranks[i];
}

Eigen::VectorXd forceOn(int j, std::span<const Particle> population,
                        const CssParams& params,
                        std::span<const double> arSigns) {
    if (params.sphereRadius <= 0.0)
        throw std::invalid_argument("forceOn: sphereRadius must be positive");
    if (arSigns.size() != population.size())
        throw std::invalid_argument("forceOn: one sign per particle required");
    const auto& self = population[j];
    Eigen::VectorXd force = Eigen::VectorXd::Zero(self.position.size());
    const double a3 = std::pow(params.sphereRadius, 3);
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (static_cast<int>(i) == j)
            continue;
        const auto& other = population[i];
        const bool gateOpen = params.invertedRankGate
                                  ? other.rank > self.rank
                                  : other.rank < self.rank;
        if (!gateOpen)
            continue;
        const Eigen::VectorXd diff = other.position - self.position;
        const double r = diff.norm() + kDistanceEps;
        const double magnitude = r < params.sphereRadius
                                     ? other.charge * r / a3
                                     : other.charge / (r * r);
        force += arSigns[i] * magnitude * diff;
    }
    return force;
}

void moveParticle(Particle& particle, const Eigen::VectorXd& force,
                  const CssParams& params, double rand1, double rand2) {
    const Eigen::VectorXd oldPosition = particle.position;
    particle.position = rand1 * params.ka * force +
                        rand2 * params.kv * particle.velocity + oldPosition;
    particle.velocity = particle.position - oldPosition;
}

Eigen::VectorXd repairPosition(const Eigen::VectorXd& position,
                               const ParetoArchive& memory,
                               const CssParams& params, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd repaired = position;
    for (Eigen::Index d = 0; d < repaired.size(); ++d) {
        if (repaired(d) >= 0.0 && repaired(d) <= 1.0)
            continue;
        if (memory.empty() || unit(rng) >= params.cmcr) {
            repaired(d) = unit(rng);
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, memory.size() - 1);
        double value = memory[pick(rng)].position(d);
        if (unit(rng) < params.par) {
            const double target = memory[pick(rng)].position(d);
            value += unit(rng) * (target - value);
        }
        repaired(d) = value;
    }
    return repaired;
}

std::vector<double> scaleFactors(std::span<const double> worstPerObjective,
                                 double alpha, bool normalized) {
    std::vector<double> u(worstPerObjective.size(), 0.0);
    if (u.empty())
        return u;
    for (double w : worstPerObjective)
        if (w == 0.0)
            throw std::domain_error(
                "scaleFactors: zero worst objective, calibration failed");
    u[0] = alpha;
    for (std::size_t k = 1; k < u.size(); ++k)
        u[k] = normalized
                   ? alpha * worstPerObjective[0] / worstPerObjective[k]
                   : u[k - 1] * worstPerObjective[k] / worstPerObjective[k - 1];
    return u;
}

double objectiveDistance(const Evaluation& a, const Evaluation& b,
                         std::span<const double> u) {
    if (!u.empty() && u.size() != a.fitness.size())
        throw std::invalid_argument("objectiveDistance: scale size mismatch");
    double sum = 0.0;
    for (std::size_t k = 0; k < a.fitness.size(); ++k) {
        const double scale = u.empty() ? 1.0 : u[k];
        const double d = scale * (a.fitness[k] - b.fitness[k]);
        sum += d * d;
    }
    return std::sqrt(sum);
}

ParetoArchive archiveUpdate(ParetoArchive memory,
                            std::span<const Particle> fresh, int capacity,
                            std::span<const double> u) {
    if (capacity <= 0)
        throw std::invalid_argument("archiveUpdate: capacity must be positive");
    memory.insert(memory.end(), fresh.begin(), fresh.end());

    ParetoArchive next;
    next.reserve(memory.size());
    for (int idx : nondominatedSubset(evaluationsOf(memory))) {
        next.push_back(std::move(memory[idx]));
        next.back().rank = 1;
    }
    std::sort(next.begin(), next.end(), canonicalLess);

    while (static_cast<int>(next.size()) > capacity) {
        const std::size_t n = next.size();
        const std::size_t nObj = next.front().eval.fitness.size();

        // Per-objective extreme members are never pruned away.
        std::vector<char> extreme(n, 0);
        for (std::size_t k = 0; k < nObj; ++k) {
            std::size_t arg = 0;
            for (std::size_t i = 1; i < n; ++i)
                if (next[i].eval.fitness[k] < next[arg].eval.fitness[k])
                    arg = i;
            extreme[arg] = 1;
        }

        double bestD = std::numeric_limits<double>::infinity();
        std::ptrdiff_t victim = -1;
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (extreme[i] && extreme[j])
                    continue;
                const double d =
                    objectiveDistance(next[i].eval, next[j].eval, u);
                if (d < bestD) {
                    bestD = d;
                    victim = extreme[j] ? static_cast<std::ptrdiff_t>(i)
                                        : static_cast<std::ptrdiff_t>(j);
                }
            }
        if (victim < 0)  // every member extreme: shed the canonical tail
            victim = static_cast<std::ptrdiff_t>(n) - 1;
        next.erase(next.begin() + victim);
    }
    return next;
}

ParetoArchive cssOptimize(const Problem& problem, const CssParams& params,
                          std::uint64_t seed, const ArchiveObserver& observer) {
    validate(params);
    CssParams p = params;
    const int dim = problem.dimension();
    const int nObj = problem.objectives();
    if (p.sphereRadius <= 0.0)
        p.sphereRadius = 0.10 * std::sqrt(static_cast<double>(dim));
    if (p.archiveCapacity <= 0)
        p.archiveCapacity = p.agents;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<Particle> population(p.agents);
    std::vector<Eigen::VectorXd> positions(p.agents);
    for (int i = 0; i < p.agents; ++i) {
        population[i].position.resize(dim);
        for (int d = 0; d < dim; ++d)
            population[i].position(d) = unit(rng);
        population[i].velocity = Eigen::VectorXd::Zero(dim);
        positions[i] = population[i].position;
    }

    std::vector<double> runningWorst(nObj,
                                     -std::numeric_limits<double>::infinity());
    const auto absorb = [&](const Evaluation& e) {
        if (!e.valid)
            return;
        for (int k = 0; k < nObj; ++k)
            runningWorst[k] = std::max(runningWorst[k], e.fitness[k]);
    };
    const auto currentScale = [&]() -> std::vector<double> {
        for (double w : runningWorst)
            if (w == 0.0 || !std::isfinite(w))
                return std::vector<double>(nObj, 1.0);
        return scaleFactors(runningWorst, p.distanceScale, p.normalizedScale);
    };

    auto evals = evaluatePopulation(problem, positions, p.workers);
    for (int i = 0; i < p.agents; ++i) {
        population[i].eval = std::move(evals[i]);
        absorb(population[i].eval);
    }
    assignRanks(population);

    ParetoArchive memory =
        archiveUpdate({}, population, p.archiveCapacity, currentScale());
    if (observer)
        observer(0, memory);

    std::vector<double> arSigns(p.agents, 0.0);
    std::vector<Eigen::VectorXd> forces(p.agents);
    for (int t = 1; t <= p.iterations; ++t) {
        const auto q = charges(population);
        for (int i = 0; i < p.agents; ++i)
            population[i].charge = q[i];

        // All randomness is drawn here, in a fixed order, before the
        // evaluation fan-out.
        for (int j = 0; j < p.agents; ++j) {
            for (int i = 0; i < p.agents; ++i) {
                if (i == j)
                    continue;
                arSigns[i] = unit(rng) < p.attractProb ? 1.0 : -1.0;
            }
            forces[j] = forceOn(j, population, p, arSigns);
        }
        for (int j = 0; j < p.agents; ++j) {
            const double rand1 = unit(rng);
            const double rand2 = unit(rng);
            moveParticle(population[j], forces[j], p, rand1, rand2);
        }
        for (int j = 0; j < p.agents; ++j) {
            population[j].position =
                repairPosition(population[j].position, memory, p, rng);
            positions[j] = population[j].position;
        }

        evals = evaluatePopulation(problem, positions, p.workers);
        for (int i = 0; i < p.agents; ++i) {
            population[i].eval = std::move(evals[i]);
            absorb(population[i].eval);
        }
        assignRanks(population);

        memory = archiveUpdate(std::move(memory), population,
                               p.archiveCapacity, currentScale());
        if (observer)
            observer(t, memory);
    }
    return memory;
}

}  // namespace archopt
