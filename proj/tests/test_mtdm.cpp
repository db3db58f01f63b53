#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <vector>

#include "archopt/mtdm.hpp"

using namespace archopt;

namespace {

// values[alt][criterion], minimization throughout.
const std::vector<std::vector<double>> kHandTournament = {
    {10.0, 40.0},  // wins volume outright, loses flexibility outright
    {12.0, 30.0},
    {14.0, 20.0},
    {16.0, 10.0},  // mirror image of the first row
};

std::filesystem::path tempJson(const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / "mtdm_test.json";
    std::ofstream out(path);
    out << text;
    return path;
}

}  // namespace

TEST_CASE("tournamentScore: unique best and unique worst") {
    CHECK(tournamentScore(kHandTournament, 0, 0) == doctest::Approx(1.0));
    CHECK(tournamentScore(kHandTournament, 3, 0) == doctest::Approx(0.0));
    CHECK(tournamentScore(kHandTournament, 0, 1) == doctest::Approx(0.0));
    CHECK(tournamentScore(kHandTournament, 3, 1) == doctest::Approx(1.0));
}

TEST_CASE("tournamentScore: interior counts over three opponents") {
    CHECK(tournamentScore(kHandTournament, 1, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(tournamentScore(kHandTournament, 2, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(tournamentScore(kHandTournament, 1, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(tournamentScore(kHandTournament, 2, 1) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("tournamentScore: ties score nothing") {
    const std::vector<std::vector<double>> values = {
        {5.0}, {5.0}, {7.0}, {5.0}};
    // Alternative 0 beats only the strictly larger 7.0.
    CHECK(tournamentScore(values, 0, 0) == doctest::Approx(1.0 / 3.0));
    // The unique maximum beats nobody.
    CHECK(tournamentScore(values, 2, 0) == doctest::Approx(0.0));
}

TEST_CASE("tournamentScore: five alternatives match the brute-force oracle") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> values(5, std::vector<double>(3));
    for (auto& row : values)
        for (auto& v : row)
            v = std::floor(unit(rng) * 10.0);  // coarse grid to force ties
    for (int a = 0; a < 5; ++a)
        for (int k = 0; k < 3; ++k) {
            int wins = 0;
            for (int b = 0; b < 5; ++b)
                if (b != a && values[b][k] - values[a][k] > 0.0)
                    ++wins;
            CHECK(tournamentScore(values, a, k) ==
                  doctest::Approx(wins / 4.0));
        }
}

TEST_CASE("tournamentScore: fewer than two alternatives is an error") {
    const std::vector<std::vector<double>> one = {{1.0, 2.0}};
    CHECK_THROWS_AS(tournamentScore(one, 0, 0), std::invalid_argument);
}

TEST_CASE("globalRank: direct substitution of the two-criterion formula") {
    // T = (1, 0.25) under equal weights: R = (1^0.5 * 0.25^0.5)^(1/2).
    const std::vector<std::vector<double>> values = {
        {1.0, 4.0},  // T = (1, 0.25): beats all in volume, one in the other
        {2.0, 5.0},
        {3.0, 3.0},
        {4.0, 2.0},
        {5.0, 1.0},
    };
    Scenario equal{"C", {0.5, 0.5}};
    const auto ranked = globalRank(values, equal);
    const auto first = std::find_if(
        ranked.begin(), ranked.end(),
        [](const RankedSolution& r) { return r.index == 0; });
    REQUIRE(first != ranked.end());
    CHECK(first->tournament[0] == doctest::Approx(1.0));
    CHECK(first->tournament[1] == doctest::Approx(0.25));
    CHECK(first->global == doctest::Approx(0.70710678).epsilon(1e-6));
}

TEST_CASE("globalRank: a dominator scores 1 and leads") {
    const std::vector<std::vector<double>> values = {
        {5.0, 5.0}, {1.0, 1.0}, {4.0, 6.0}, {6.0, 4.0}};
    const auto ranked = globalRank(values, Scenario{"C", {0.5, 0.5}});
    CHECK(ranked.front().index == 1);
    CHECK(ranked.front().global == doctest::Approx(1.0));
}

TEST_CASE("globalRank: hand-computed four-alternative tournament") {
    const Scenario equal{"C", {0.5, 0.5}};
    const auto ranked = globalRank(kHandTournament, equal);
    REQUIRE(ranked.size() == 4);
    // Rows 1 and 2 share R = (2/9)^(1/4); volume breaks the tie. Rows 0
    // and 3 are annihilated by their zero scores and again order by volume.
    const double shared = std::pow(2.0 / 9.0, 0.25);
    CHECK(ranked[0].index == 1);
    CHECK(ranked[0].global == doctest::Approx(shared).epsilon(1e-12));
    CHECK(ranked[1].index == 2);
    CHECK(ranked[1].global == doctest::Approx(shared).epsilon(1e-12));
    CHECK(ranked[2].index == 0);
    CHECK(ranked[2].global == doctest::Approx(0.0));
    CHECK(ranked[3].index == 3);
    CHECK(ranked[3].global == doctest::Approx(0.0));
}

TEST_CASE("globalRank: opposite scenarios reverse the interior order") {
    const auto volumeHeavy = globalRank(kHandTournament, Scenario{"A", {0.9, 0.1}});
    CHECK(volumeHeavy[0].index == 1);
    CHECK(volumeHeavy[1].index == 2);
    const auto freqHeavy = globalRank(kHandTournament, Scenario{"E", {0.1, 0.9}});
    CHECK(freqHeavy[0].index == 2);
    CHECK(freqHeavy[1].index == 1);
}

TEST_CASE("globalRank: zero-annihilation holds literally") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> values(6, std::vector<double>(2));
    for (auto& row : values)
        for (auto& v : row)
            v = unit(rng);
    const auto ranked = globalRank(values, Scenario{"C", {0.5, 0.5}});
    for (const auto& r : ranked) {
        const bool anyZero =
            std::any_of(r.tournament.begin(), r.tournament.end(),
                        [](double t) { return t == 0.0; });
        if (anyZero)
            CHECK(r.global == 0.0);
        else
            CHECK(r.global > 0.0);
        CHECK(r.global <= 1.0);
    }
}

TEST_CASE("globalRank: permutation invariance of the scores") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> values(7, std::vector<double>(3));
    for (auto& row : values)
        for (auto& v : row)
            v = unit(rng);
    Scenario s{"mixed", {0.2, 0.5, 0.3}};
    const auto base = globalRank(values, s);

    std::vector<int> perm(values.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<double>> shuffled;
    for (int idx : perm)
        shuffled.push_back(values[idx]);
    const auto again = globalRank(shuffled, s);

    // Map scores back to original rows and compare.
    std::vector<double> baseR(values.size()), againR(values.size());
    for (const auto& r : base)
        baseR[r.index] = r.global;
    for (const auto& r : again)
        againR[perm[r.index]] = r.global;
    for (std::size_t i = 0; i < values.size(); ++i)
        CHECK(baseR[i] == doctest::Approx(againR[i]).epsilon(1e-12));
}

TEST_CASE("globalRank: raising a criterion weight never demotes its champion") {
    // Alternative 0 tops criterion 0 and is not annihilated in criterion 1.
    const std::vector<std::vector<double>> values = {
        {1.0, 5.0}, {3.0, 4.0}, {5.0, 2.0}, {7.0, 9.0}};
    auto position = [&](const Scenario& s) {
        const auto ranked = globalRank(values, s);
        for (std::size_t i = 0; i < ranked.size(); ++i)
            if (ranked[i].index == 0)
                return static_cast<int>(i);
        return -1;
    };
    int previous = position(Scenario{"w", {0.1, 0.9}});
    for (double w1 : {0.3, 0.5, 0.7, 0.9}) {
        const int now = position(Scenario{"w", {w1, 1.0 - w1}});
        CHECK(now <= previous);
        previous = now;
    }
}

TEST_CASE("scenario validation: weights must be positive and sum to one") {
    CHECK_NOTHROW(validateScenario(Scenario{"ok", {0.4, 0.6}}));
    CHECK_THROWS_AS(validateScenario(Scenario{"neg", {-0.1, 1.1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validateScenario(Scenario{"zero", {0.0, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validateScenario(Scenario{"sum", {0.5, 0.6}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validateScenario(Scenario{"empty", {}}),
                    std::invalid_argument);
}

TEST_CASE("default scenarios: the five standard profiles, verbatim") {
    const auto all = defaultScenarios();
    REQUIRE(all.size() == 5);
    const std::vector<std::vector<double>> expected = {
        {0.9, 0.1}, {0.7, 0.3}, {0.5, 0.5}, {0.3, 0.7}, {0.1, 0.9}};
    const std::vector<std::string> names = {"A", "B", "C", "D", "E"};
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i].name == names[i]);
        REQUIRE(all[i].weights.size() == 2);
        CHECK(all[i].weights[0] == expected[i][0]);
        CHECK(all[i].weights[1] == expected[i][1]);
        CHECK_NOTHROW(validateScenario(all[i]));
    }
}

TEST_CASE("expandWeights: two weights spread over eleven criteria") {
    Scenario s{"A", {0.9, 0.1}};
    const auto w = expandWeights(s, 11);
    REQUIRE(w.size() == 11);
    CHECK(w[0] == doctest::Approx(0.9));
    double sum = w[0];
    for (int i = 1; i < 11; ++i) {
        CHECK(w[i] == doctest::Approx(0.1 / 10.0).epsilon(1e-12));
        sum += w[i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    // Matching sizes pass through; anything else is rejected.
    Scenario s3{"three", {0.2, 0.5, 0.3}};
    const auto same = expandWeights(s3, 3);
    CHECK(same == s3.weights);
    CHECK_THROWS_AS(expandWeights(s3, 11), std::invalid_argument);
}

TEST_CASE("loadScenarios: JSON round trip and validation") {
    const auto good = tempJson(
        R"([{"name": "A", "weights": [0.9, 0.1]},
            {"name": "custom", "weights": [0.25, 0.25, 0.5]}])");
    const auto loaded = loadScenarios(good.string());
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].name == "A");
    CHECK(loaded[1].weights.size() == 3);

    const auto bad = tempJson(R"([{"name": "broken", "weights": [0.5, 0.6]}])");
    CHECK_THROWS_AS(loadScenarios(bad.string()), std::invalid_argument);
    const auto garbage = tempJson("not json at all");
    CHECK_THROWS_AS(loadScenarios(garbage.string()), std::invalid_argument);
    CHECK_THROWS_AS(loadScenarios("/nonexistent/path.json"),
                    std::invalid_argument);
    std::filesystem::remove(good);
}
