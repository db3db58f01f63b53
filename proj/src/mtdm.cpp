#include "archopt/mtdm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace archopt {

void validateScenario(const Scenario& scenario) {
    if (scenario.weights.empty())
        throw std::invalid_argument("scenario '" + scenario.name +
                                    "': no weights");
    double sum = 0.0;
    for (double w : scenario.weights) {
        if (!(w > 0.0))
            throw std::invalid_argument("scenario '" + scenario.name +
                                        "': weights must be positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("scenario '" + scenario.name +
                                    "': weights must sum to 1");
}

std::vector<Scenario> defaultScenarios() {
    return {{"A", {0.9, 0.1}},
            {"B", {0.7, 0.3}},
            {"C", {0.5, 0.5}},
            {"D", {0.3, 0.7}},
            {"E", {0.1, 0.9}}};
}

std::vector<Scenario> loadScenarios(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open scenario file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("scenario file " + path + ": " + e.what());
    }
    if (!doc.is_array())
        throw std::invalid_argument("scenario file " + path +
                                    ": expected a top-level array");
    std::vector<Scenario> scenarios;
    for (const auto& entry : doc) {
        Scenario s;
        try {
            s.name = entry.at("name").get<std::string>();
            s.weights = entry.at("weights").get<std::vector<double>>();
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("scenario file " + path + ": " +
                                        e.what());
        }
        validateScenario(s);
        scenarios.push_back(std::move(s));
    }
    if (scenarios.empty())
        throw std::invalid_argument("scenario file " + path + ": empty list");
    return scenarios;
}

std::vector<double> expandWeights(const Scenario& scenario, int criteria) {
    validateScenario(scenario);
    if (criteria < 2)
        throw std::invalid_argument("expandWeights: need >= 2 criteria");
    if (static_cast<int>(scenario.weights.size()) == criteria)
        return scenario.weights;
    if (scenario.weights.size() == 2) {
        std::vector<double> w(criteria, scenario.weights[1] / (criteria - 1));
        w[0] = scenario.weights[0];
        return w;
    }
    throw std::invalid_argument("scenario '" + scenario.name +
                                "': cannot map " +
                                std::to_string(scenario.weights.size()) +
                                " weights onto " + std::to_string(criteria) +
                                " criteria");
}

double tournamentScore(const std::vector<std::vector<double>>& values, int a,
                       int criterion) {
    const int n = static_cast<int>(values.size());
    if (n < 2)
        throw std::invalid_argument("tournamentScore: need >= 2 alternatives");
    int wins = 0;
    for (int b = 0; b < n; ++b)
        if (b != a && values[b][criterion] - values[a][criterion] > 0.0)
            ++wins;
    return static_cast<double>(wins) / (n - 1);
}

std::vector<RankedSolution> globalRank(
    const std::vector<std::vector<double>>& values, const Scenario& scenario) {
    const int n = static_cast<int>(values.size());
    if (n < 2)
        throw std::invalid_argument("globalRank: need >= 2 alternatives");
    const int criteria = static_cast<int>(values.front().size());
    for (const auto& row : values)
        if (static_cast<int>(row.size()) != criteria)
            throw std::invalid_argument("globalRank: ragged value rows");
    const std::vector<double> w = expandWeights(scenario, criteria);

    std::vector<RankedSolution> ranked(n);
    for (int a = 0; a < n; ++a) {
        ranked[a].index = a;
        ranked[a].tournament.resize(criteria);
        double logR = 0.0;
        bool zero = false;
        for (int i = 0; i < criteria; ++i) {
            const double t = tournamentScore(values, a, i);
            ranked[a].tournament[i] = t;
            if (t == 0.0)
                zero = true;  // geometric mean annihilates
            else
                logR += w[i] * std::log(t);
        }
        ranked[a].global = zero ? 0.0 : std::exp(logR / criteria);
    }

    std::sort(ranked.begin(), ranked.end(),
              [&](const RankedSolution& x, const RankedSolution& y) {
                  if (x.global != y.global)
                      return x.global > y.global;
                  if (values[x.index][0] != values[y.index][0])
                      return values[x.index][0] < values[y.index][0];
                  if (values[x.index] != values[y.index])
                      return values[x.index] < values[y.index];
                  return x.index < y.index;
              });
    return ranked;
}

}  // namespace archopt
