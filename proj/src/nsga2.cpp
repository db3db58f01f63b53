#include "archopt/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "archopt/pareto.hpp"

namespace archopt {

namespace {

struct Individual {
    Eigen::VectorXd genes;  // unit-cube coordinates
    Evaluation eval;
    int rank = 0;
    double crowding = 0.0;
};

void validate(const Nsga2Params& p) {
    if (p.populationSize <= 1 || p.generations < 0)
        throw std::invalid_argument("nsga2: population/generations range");
    if (p.crossoverProb < 0.0 || p.crossoverProb > 1.0)
        throw std::invalid_argument("nsga2: crossoverProb in [0,1]");
    if (p.etaC <= 0.0 || p.etaM <= 0.0)
        throw std::invalid_argument("nsga2: distribution indices positive");
}

// Crowded-comparison: lower rank first, larger crowding inside a rank.
bool crowdedBetter(const Individual& a, const Individual& b) {
    if (a.rank != b.rank)
        return a.rank < b.rank;
    return a.crowding > b.crowding;
}

std::vector<Evaluation> evaluationsOf(const std::vector<Individual>& pop,
                                      const std::vector<int>& idx) {
    std::vector<Evaluation> out;
    out.reserve(idx.size());
    for (int i : idx)
        out.push_back(pop[i].eval);
    return out;
}

}  // namespace

std::vector<double> crowdingDistance(std::span<const Evaluation> front) {
    const int n = static_cast<int>(front.size());
    std::vector<double> dist(n, 0.0);
    if (n == 0)
        return dist;
    const std::size_t nObj = front.front().fitness.size();
    const double inf = std::numeric_limits<double>::infinity();
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }
    std::vector<int> order(n);
    for (std::size_t k = 0; k < nObj; ++k) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return front[a].fitness[k] < front[b].fitness[k];
        });
        dist[order.front()] = inf;
        dist[order.back()] = inf;
        const double range =
            front[order.back()].fitness[k] - front[order.front()].fitness[k];
        if (range <= 0.0)
            continue;
        for (int i = 1; i + 1 < n; ++i)
            dist[order[i]] += (front[order[i + 1]].fitness[k] -
                               front[order[i - 1]].fitness[k]) /
                              range;
    }
    return dist;
}

int mutatePolynomial(Eigen::VectorXd& x, double mutationProb, double etaM,
                     std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int mutated = 0;
    for (Eigen::Index d = 0; d < x.size(); ++d) {
        if (unit(rng) >= mutationProb)
            continue;
        const double u = unit(rng);
        const double exponent = 1.0 / (etaM + 1.0);
        const double delta = u < 0.5
                                 ? std::pow(2.0 * u, exponent) - 1.0
                                 : 1.0 - std::pow(2.0 * (1.0 - u), exponent);
        x(d) = std::clamp(x(d) + delta, 0.0, 1.0);
        ++mutated;
    }
    return mutated;
}

void crossoverSbx(const Eigen::VectorXd& p1, const Eigen::VectorXd& p2,
                  double crossoverProb, double etaC, std::mt19937_64& rng,
                  Eigen::VectorXd& c1, Eigen::VectorXd& c2) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    c1 = p1;
    c2 = p2;
    if (unit(rng) >= crossoverProb)
        return;
    for (Eigen::Index d = 0; d < p1.size(); ++d) {
        if (unit(rng) >= 0.5 || std::abs(p1(d) - p2(d)) < 1e-14)
            continue;
        const double u = unit(rng);
        const double exponent = 1.0 / (etaC + 1.0);
        const double beta = u <= 0.5
                                ? std::pow(2.0 * u, exponent)
                                : std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
        const double a = 0.5 * ((1.0 + beta) * p1(d) + (1.0 - beta) * p2(d));
        const double b = 0.5 * ((1.0 - beta) * p1(d) + (1.0 + beta) * p2(d));
        // Children swap sides per gene; without this the pair degenerates
        // into two parallel contractions instead of a recombination.
        const bool swap = unit(rng) < 0.5;
        c1(d) = std::clamp(swap ? b : a, 0.0, 1.0);
        c2(d) = std::clamp(swap ? a : b, 0.0, 1.0);
    }
}

ParetoArchive nsga2Optimize(const Problem& problem, const Nsga2Params& params,
                            std::uint64_t seed,
                            const ArchiveObserver& observer) {
    validate(params);
    const int dim = problem.dimension();
    const int n = params.populationSize;
    const double pm =
        params.mutationProb > 0.0 ? params.mutationProb : 1.0 / dim;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pickParent(0, n - 1);

    const auto rankAndCrowd = [](std::vector<Individual>& pop) {
        std::vector<Evaluation> evals;
        evals.reserve(pop.size());
        for (const auto& ind : pop)
            evals.push_back(ind.eval);
        const auto fronts = sortFronts(evals);
        for (std::size_t f = 0; f < fronts.size(); ++f) {
            const auto crowd =
                crowdingDistance(evaluationsOf(pop, fronts[f]));
            for (std::size_t i = 0; i < fronts[f].size(); ++i) {
                pop[fronts[f][i]].rank = static_cast<int>(f) + 1;
                pop[fronts[f][i]].crowding = crowd[i];
            }
        }
    };

    const auto firstFront = [](const std::vector<Individual>& pop) {
        ParetoArchive archive;
        for (const auto& ind : pop)
            if (ind.rank == 1) {
                Particle p;
                p.position = ind.genes;
                p.velocity = Eigen::VectorXd::Zero(ind.genes.size());
                p.eval = ind.eval;
                p.rank = 1;
                archive.push_back(std::move(p));
            }
        std::sort(archive.begin(), archive.end(),
                  [](const Particle& a, const Particle& b) {
                      if (a.eval.fitness != b.eval.fitness)
                          return a.eval.fitness < b.eval.fitness;
                      return std::lexicographical_compare(
                          a.position.data(),
                          a.position.data() + a.position.size(),
                          b.position.data(),
                          b.position.data() + b.position.size());
                  });
        return archive;
    };

    std::vector<Individual> pop(n);
    std::vector<Eigen::VectorXd> points(n);
    for (int i = 0; i < n; ++i) {
        pop[i].genes.resize(dim);
        for (int d = 0; d < dim; ++d)
            pop[i].genes(d) = unit(rng);
        points[i] = pop[i].genes;
    }
    auto evals = evaluatePopulation(problem, points, params.workers);
    for (int i = 0; i < n; ++i)
        pop[i].eval = std::move(evals[i]);
    rankAndCrowd(pop);
    if (observer)
        observer(0, firstFront(pop));

    const auto tournament = [&]() -> const Individual& {
        const Individual& a = pop[pickParent(rng)];
        const Individual& b = pop[pickParent(rng)];
        return crowdedBetter(b, a) ? b : a;
    };

    for (int gen = 1; gen <= params.generations; ++gen) {
        std::vector<Individual> children(n);
        for (int i = 0; i < n; i += 2) {
            const Individual& p1 = tournament();
            const Individual& p2 = tournament();
            Eigen::VectorXd c1, c2;
            crossoverSbx(p1.genes, p2.genes, params.crossoverProb, params.etaC,
                         rng, c1, c2);
            mutatePolynomial(c1, pm, params.etaM, rng);
            mutatePolynomial(c2, pm, params.etaM, rng);
            children[i].genes = std::move(c1);
            if (i + 1 < n)
                children[i + 1].genes = std::move(c2);
        }
        for (int i = 0; i < n; ++i)
            points[i] = children[i].genes;
        evals = evaluatePopulation(problem, points, params.workers);
        for (int i = 0; i < n; ++i)
            children[i].eval = std::move(evals[i]);

        std::vector<Individual> combined;
        combined.reserve(2 * n);
        std::move(pop.begin(), pop.end(), std::back_inserter(combined));
        std::move(children.begin(), children.end(),
                  std::back_inserter(combined));

        std::vector<Evaluation> combinedEvals;
        combinedEvals.reserve(combined.size());
        for (const auto& ind : combined)
            combinedEvals.push_back(ind.eval);
        const auto fronts = sortFronts(combinedEvals);

        std::vector<Individual> selected;
        selected.reserve(n);
        for (std::size_t f = 0; f < fronts.size() &&
                                static_cast<int>(selected.size()) < n;
             ++f) {
            const auto crowd =
                crowdingDistance(evaluationsOf(combined, fronts[f]));
            std::vector<int> order(fronts[f].size());
            std::iota(order.begin(), order.end(), 0);
            if (static_cast<int>(selected.size() + fronts[f].size()) > n)
                std::stable_sort(order.begin(), order.end(),
                                 [&](int a, int b) {
                                     return crowd[a] > crowd[b];
                                 });
            for (int o : order) {
                if (static_cast<int>(selected.size()) >= n)
                    break;
                Individual ind = std::move(combined[fronts[f][o]]);
                ind.rank = static_cast<int>(f) + 1;
                ind.crowding = crowd[o];
                selected.push_back(std::move(ind));
            }
        }
        pop = std::move(selected);
        if (observer)
            observer(gen, firstFront(pop));
    }
    return firstFront(pop);
}

}  // namespace archopt
