#pragma once

#include <string>
#include <vector>

namespace archopt {

/// Decision-maker priority profile: one positive weight per criterion,
/// summing to 1.
struct Scenario {
    std::string name;
    std::vector<double> weights;
};

/// Throws invalid_argument unless every weight is positive and the sum is
/// 1 within 1e-9.
void validateScenario(const Scenario& scenario);

/// The five built-in two-criterion profiles A..E with weights
/// (0.9,0.1), (0.7,0.3), (0.5,0.5), (0.3,0.7), (0.1,0.9).
std::vector<Scenario> defaultScenarios();

/// Load scenarios from a JSON file: [{"name": ..., "weights": [...]}, ...].
/// Every entry is validated; parse or validation problems throw
/// invalid_argument.
std::vector<Scenario> loadScenarios(const std::string& path);

/// Adapt a scenario to `criteria` columns: matching sizes pass through; a
/// two-weight scenario spreads its second weight uniformly over the
/// criteria after the first (volume keeps w1, each remaining criterion
/// gets w2/(criteria-1)). Anything else throws invalid_argument.
std::vector<double> expandWeights(const Scenario& scenario, int criteria);

/// Tournament score of alternative `a` in one criterion: the fraction of
/// opponents with a strictly larger value (minimization; ties score
/// nothing). values[alt][criterion]; needs at least two alternatives.
double tournamentScore(const std::vector<std::vector<double>>& values, int a,
                       int criterion);

struct RankedSolution {
    int index = 0;                   // row in the input values
    std::vector<double> tournament;  // T_i per criterion, each in [0,1]
    double global = 0.0;             // R in [0,1]
};

/// Weighted-geometric global ranking: R(a) = (prod_i T_i^w_i)^(1/N) with
/// N = criteria count. Sorted by R descending; ties broken by lower first
/// criterion, then lexicographic values. Any zero T_i forces R = 0.
std::vector<RankedSolution> globalRank(
    const std::vector<std::vector<double>>& values, const Scenario& scenario);

}  // namespace archopt
