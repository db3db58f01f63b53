#include "archopt/pareto.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace archopt {

bool dominates(const Evaluation& a, const Evaluation& b) {
    if (a.valid != b.valid)
        return a.valid;
    if (!a.valid)
        return false;

    const bool aFeasible = a.violation <= 0.0;
    const bool bFeasible = b.violation <= 0.0;
    if (aFeasible != bFeasible)
        return aFeasible;
    if (!aFeasible)
        return a.violation < b.violation;

    assert(a.fitness.size() == b.fitness.size());
    bool strict = false;
    for (std::size_t k = 0; k < a.fitness.size(); ++k) {
        if (a.fitness[k] > b.fitness[k])
            return false;
        if (a.fitness[k] < b.fitness[k])
            strict = true;
    }
    return strict;
}

std::vector<std::vector<int>> sortFronts(std::span<const Evaluation> points) {
    const int n = static_cast<int>(points.size());
    std::vector<std::vector<int>> dominated(n);  // indices each point dominates
    std::vector<int> dominators(n, 0);           // how many points dominate i

    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            if (dominates(points[p], points[q])) {
                dominated[p].push_back(q);
                ++dominators[q];
            } else if (dominates(points[q], points[p])) {
                dominated[q].push_back(p);
                ++dominators[p];
            }
        }
    }

    std::vector<std::vector<int>> fronts;
    std::vector<int> current;
    for (int i = 0; i < n; ++i)
        if (dominators[i] == 0)
            current.push_back(i);

    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<int> next;
        for (int p : current)
            for (int q : dominated[p])
                if (--dominators[q] == 0)
                    next.push_back(q);
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

std::vector<int> paretoRank(std::span<const Evaluation> points) {
    std::vector<int> rank(points.size(), 0);
    const auto fronts = sortFronts(points);
    for (std::size_t f = 0; f < fronts.size(); ++f)
        for (int i : fronts[f])
            rank[i] = static_cast<int>(f) + 1;
    return rank;
}

std::vector<int> nondominatedSubset(std::span<const Evaluation> points) {
    auto fronts = sortFronts(points);
    return fronts.empty() ? std::vector<int>{} : fronts.front();
}

double hypervolume2d(std::span<const Evaluation> points,
                     double ref1, double ref2) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : points) {
        if (!p.valid || p.violation > 0.0)
            continue;
        if (p.fitness.size() < 2)
            throw std::invalid_argument("hypervolume2d needs 2 objectives");
        if (p.fitness[0] < ref1 && p.fitness[1] < ref2)
            pts.emplace_back(p.fitness[0], p.fitness[1]);
    }
    if (pts.empty())
        return 0.0;

    // Sweep by ascending f1; only the staircase of nondominated points
    // contributes area.
    std::sort(pts.begin(), pts.end());
    double hv = 0.0;
    double prevF2 = ref2;
    for (const auto& [f1, f2] : pts) {
        if (f2 < prevF2) {
            hv += (ref1 - f1) * (prevF2 - f2);
            prevF2 = f2;
        }
    }
    return hv;
}

}  // namespace archopt
