#include "archopt/problem.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace archopt {

Eigen::VectorXd Problem::denormalize(const Eigen::VectorXd& unit) const {
    const Eigen::VectorXd& lo = lowerBounds();
    const Eigen::VectorXd& hi = upperBounds();
    if (unit.size() != lo.size())
        throw std::invalid_argument("denormalize: dimension mismatch");
    return lo + unit.cwiseProduct(hi - lo);
}

std::vector<Evaluation> evaluatePopulation(
    const Problem& problem, const std::vector<Eigen::VectorXd>& unitPoints,
    int workers) {
    std::vector<Evaluation> results(unitPoints.size());
    const int n = static_cast<int>(unitPoints.size());
    workers = std::clamp(workers, 1, std::max(1, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i)
            results[i] = problem.evaluate(problem.denormalize(unitPoints[i]));
        return results;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                results[i] =
                    problem.evaluate(problem.denormalize(unitPoints[i]));
        });
    for (auto& t : pool)
        t.join();
    return results;
}

int defaultWorkerCount() {
    const char* env = std::getenv("ARCHOPT_WORKERS");
    if (!env)
        return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || v < 1)
        return 1;
    return static_cast<int>(std::min<long>(v, 256));
}

}  // namespace archopt
