// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are pinned next to each check.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "archopt/design.hpp"
#include "archopt/geometry.hpp"
#include "archopt/harness.hpp"
#include "archopt/modal.hpp"
#include "archopt/mocss.hpp"
#include "archopt/mtdm.hpp"
#include "archopt/pareto.hpp"
#include "archopt/problem.hpp"
#include "archopt/problems.hpp"

namespace {

using namespace archopt;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double secondsSince(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return buf;
}

// --------------------------------------------------------------------------
// Criterion 1: modal verification against the Morrow Point survey values.
Outcome modalVerification() {
    constexpr double kEmptyRefHz = 4.2897;
    constexpr double kFullRefHz = 2.9607;
    constexpr double kEmptyTol = 0.15;
    constexpr double kFullTol = 0.20;
    constexpr double kWallLimitS = 60.0;

    const auto start = Clock::now();
    const DamShape shape(morrowPointBaseline(), CanyonProfile::morrowPoint());
    const MeshDivisions divisions{16, 8, 2};
    const MaterialProps mat = MaterialProps::damConcrete();
    const ModalResult empty = damModal(shape, divisions, mat, Reservoir::Empty);
    const ModalResult full = damModal(shape, divisions, mat, Reservoir::Full);
    const double wall = secondsSince(start);

    if (!empty.converged || empty.modeCount < 1 || !full.converged ||
        full.modeCount < 1)
        return {false, "eigensolver did not converge"};

    const double devEmpty =
        (empty.frequenciesHz[0] - kEmptyRefHz) / kEmptyRefHz;
    const double devFull = (full.frequenciesHz[0] - kFullRefHz) / kFullRefHz;
    const bool pass = std::abs(devEmpty) <= kEmptyTol &&
                      std::abs(devFull) <= kFullTol && wall < kWallLimitS;
    return {pass,
            format("empty fr1 %.4f Hz (ref %.4f, dev %+.2f%%, tol 15%%); "
                   "full fr1 %.4f Hz (ref %.4f, dev %+.2f%%, tol 20%%); "
                   "%.1f s (limit 60)",
                   empty.frequenciesHz[0], kEmptyRefHz, 100.0 * devEmpty,
                   full.frequenciesHz[0], kFullRefHz, 100.0 * devFull, wall)};
}

// --------------------------------------------------------------------------
// Criterion 2: cantilever hex beam against the Euler-Bernoulli closed form.
Outcome beamOracle() {
    constexpr double kTol = 0.10;
    constexpr double kWallLimitS = 5.0;

    const auto start = Clock::now();
    const double L = 10.0, side = 1.0, E = 30e9, rho = 2400.0;
    MaterialProps mat;
    mat.E = E;
    mat.nu = 0.0;
    mat.rhoConcrete = rho;
    mat.rhoWater = 1000.0;
    const double I = side * side * side * side / 12.0;
    const double A = side * side;
    const double euler = (1.875 * 1.875 / (2.0 * std::numbers::pi)) *
                         std::sqrt(E * I / (rho * A * L * L * L * L));

    const HexMesh mesh = meshBlock(L, side, side, 20, 1, 1);
    double worstDev = 0.0;
    for (const bool enhanced : {false, true}) {
        AssemblyOptions opts;
        opts.incompatibleModes = enhanced;
        const SystemMatrices sys = assemble(mesh, mat, Reservoir::Empty, 0.0,
                                            opts);
        ModalOptions mo;
        mo.nModes = 2;
        const ModalResult r = solveModes(sys, mo);
        if (!r.converged || r.modeCount < 1)
            return {false, "beam eigensolve did not converge"};
        worstDev = std::max(worstDev,
                            std::abs(r.frequenciesHz[0] / euler - 1.0));
    }
    const double wall = secondsSince(start);
    const bool pass = worstDev < kTol && wall < kWallLimitS;
    return {pass, format("first frequency within %.2f%% of %.4f Hz "
                         "(tol 10%%); %.2f s (limit 5)",
                         100.0 * worstDev, euler, wall)};
}

// --------------------------------------------------------------------------
// Criterion 3: paretoRank equals a brute-force peeling oracle.
bool refDominates(const Evaluation& a, const Evaluation& b) {
    if (a.valid != b.valid)
        return a.valid;
    if (!a.valid)
        return false;
    const bool af = a.violation <= 0.0, bf = b.violation <= 0.0;
    if (af != bf)
        return af;
    if (!af)
        return a.violation < b.violation;
    bool strictly = false;
    for (std::size_t k = 0; k < a.fitness.size(); ++k) {
        if (a.fitness[k] > b.fitness[k])
            return false;
        if (a.fitness[k] < b.fitness[k])
            strictly = true;
    }
    return strictly;
}

std::vector<int> bruteForceRanks(const std::vector<Evaluation>& evals) {
    const int n = static_cast<int>(evals.size());
    std::vector<int> rank(n, 0);
    int assigned = 0, front = 1;
    while (assigned < n) {
        std::vector<int> current;
        for (int a = 0; a < n; ++a) {
            if (rank[a] != 0)
                continue;
            bool dominated = false;
            for (int b = 0; b < n && !dominated; ++b)
                dominated = b != a && rank[b] == 0 &&
                            refDominates(evals[b], evals[a]);
            if (!dominated)
                current.push_back(a);
        }
        for (int a : current)
            rank[a] = front;
        assigned += static_cast<int>(current.size());
        ++front;
    }
    return rank;
}

Outcome dominanceOracle() {
    constexpr int kPoints = 200;
    constexpr int kSeeds = 5;
    constexpr double kWallLimitS = 5.0;

    const auto start = Clock::now();
    long mismatches = 0;
    for (int seed = 1; seed <= kSeeds; ++seed) {
        for (const int objectives : {2, 3, 11}) {
            std::mt19937_64 rng(static_cast<std::uint64_t>(seed) * 1000 +
                                static_cast<std::uint64_t>(objectives));
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            std::vector<Evaluation> evals(kPoints);
            for (auto& e : evals) {
                e.fitness.resize(objectives);
                for (double& f : e.fitness)
                    f = unit(rng);
            }
            const std::vector<int> lib = paretoRank(evals);
            const std::vector<int> ref = bruteForceRanks(evals);
            for (int i = 0; i < kPoints; ++i)
                mismatches += lib[i] != ref[i];
        }
    }
    const double wall = secondsSince(start);
    const bool pass = mismatches == 0 && wall < kWallLimitS;
    return {pass, format("%ld mismatches over %d populations of %d points "
                         "(2, 3, 11 objectives); %.2f s (limit 5)",
                         mismatches, kSeeds * 3, kPoints, wall)};
}

// --------------------------------------------------------------------------
// Criterion 4: optimizer quality on the 30-variable benchmark.
double medianOf(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

Outcome optimizerQuality() {
    constexpr double kHvRatioFloor = 0.90;
    constexpr double kFrontDistCap = 0.1;
    constexpr double kRef1 = 1.1, kRef2 = 1.1;
    constexpr double kWallLimitS = 120.0;
    constexpr int kSeeds = 5;

    const auto start = Clock::now();
    std::vector<double> ratios, cssDist, nsgaDist;
    for (int seed = 1; seed <= kSeeds; ++seed) {
        double hv[2] = {0.0, 0.0}, dist[2] = {0.0, 0.0};
        const char* methods[2] = {"mocss", "nsga2"};
        for (int m = 0; m < 2; ++m) {
            RunConfig config;
            config.problem = "zdt1";
            config.method = methods[m];
            config.population = 100;
            config.iterations = 200;
            config.seed = static_cast<std::uint64_t>(seed);
            const RunRecord record = runExperiment(config);
            std::vector<Evaluation> evals;
            for (const auto& p : record.archive) {
                evals.push_back(p.eval);
                dist[m] = std::max(dist[m],
                                   Zdt1Problem::distanceToFront(
                                       p.eval.fitness[0], p.eval.fitness[1]));
            }
            hv[m] = hypervolume2d(evals, kRef1, kRef2);
        }
        ratios.push_back(hv[0] / hv[1]);
        cssDist.push_back(dist[0]);
        nsgaDist.push_back(dist[1]);
    }
    const double wall = secondsSince(start);
    const double medRatio = medianOf(ratios);
    const double medCss = medianOf(cssDist);
    const double medNsga = medianOf(nsgaDist);
    const bool pass = medRatio >= kHvRatioFloor && medCss < kFrontDistCap &&
                      medNsga < kFrontDistCap && wall < kWallLimitS;
    return {pass,
            format("median hv ratio %.3f (floor 0.90); median max front "
                   "distance %.4f / %.4f (cap 0.1); 5 seeds, %.1f s "
                   "(limit 120)",
                   medRatio, medCss, medNsga, wall)};
}

// --------------------------------------------------------------------------
// Criterion 5: archive soundness and monotonicity across a full run.
Outcome archiveInvariants() {
    const auto start = Clock::now();
    const Zdt1Problem problem;
    CssParams params;
    params.agents = 100;
    params.iterations = 200;

    long dominancePairs = 0;
    long regressions = 0;
    ParetoArchive previous;
    const ArchiveObserver observer = [&](int, const ParetoArchive& archive) {
        for (std::size_t i = 0; i < archive.size(); ++i)
            for (std::size_t j = 0; j < archive.size(); ++j)
                if (i != j &&
                    refDominates(archive[i].eval, archive[j].eval))
                    ++dominancePairs;
        for (const auto& cur : archive)
            for (const auto& old : previous)
                if (refDominates(old.eval, cur.eval))
                    ++regressions;
        previous = archive;
    };
    cssOptimize(problem, params, 1, observer);
    const double wall = secondsSince(start);
    const bool pass = dominancePairs == 0 && regressions == 0;
    return {pass, format("%ld in-archive dominance pairs, %ld front "
                         "regressions over 201 archive updates; %.1f s",
                         dominancePairs, regressions, wall)};
}

// --------------------------------------------------------------------------
// Criterion 6: four-alternative tournament fixture and scenario weights.
Outcome decisionFixture() {
    constexpr double kWallLimitS = 1.0;
    const auto start = Clock::now();

    const std::vector<std::vector<double>> values = {
        {10.0, 40.0}, {12.0, 30.0}, {14.0, 20.0}, {16.0, 10.0}};
    const std::vector<std::vector<double>> expectedT = {
        {1.0, 0.0},
        {2.0 / 3.0, 1.0 / 3.0},
        {1.0 / 3.0, 2.0 / 3.0},
        {0.0, 1.0}};
    const Scenario even{"C", {0.5, 0.5}};
    const auto ranked = globalRank(values, even);

    bool ok = ranked.size() == 4;
    // Interior pair shares R = (2/9)^(1/4); annihilated rows close the list.
    const int expectedOrder[4] = {1, 2, 0, 3};
    const double sharedR = std::pow(2.0 / 9.0, 0.25);
    for (int i = 0; ok && i < 4; ++i) {
        const auto& r = ranked[i];
        ok = r.index == expectedOrder[i] &&
             r.tournament == expectedT[r.index];
        if (ok)
            ok = i < 2 ? std::abs(r.global - sharedR) < 1e-12
                       : r.global == 0.0;
    }

    const auto scenarios = defaultScenarios();
    const std::vector<std::vector<double>> expectedWeights = {
        {0.9, 0.1}, {0.7, 0.3}, {0.5, 0.5}, {0.3, 0.7}, {0.1, 0.9}};
    ok = ok && scenarios.size() == expectedWeights.size();
    for (std::size_t i = 0; ok && i < scenarios.size(); ++i)
        ok = scenarios[i].weights == expectedWeights[i];

    const double wall = secondsSince(start);
    const bool pass = ok && wall < kWallLimitS;
    return {pass, format("order / tournament matrix / global scores / "
                         "default weights %s; %.3f s (limit 1)",
                         ok ? "exact" : "MISMATCH", wall)};
}

// --------------------------------------------------------------------------
// Criterion 7: end-to-end dam smoke run with artifacts and replay.
std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome damSmoke() {
    constexpr double kWallLimitS = 600.0;
    const auto start = Clock::now();

    RunConfig config;
    config.problem = "P3";
    config.method = "mocss";
    config.seed = 11;
    config.population = 10;
    config.iterations = 10;
    config.dam.nFreq = 10;
    config.dam.mesh = {8, 4, 1};
    config.dam.reservoir = Reservoir::Full;
    config.dam.canyon.height = 142.65;
    config.dam.canyon.levels = {{0.0, 67.0},    {28.53, 90.0},
                                {57.06, 112.0}, {85.59, 134.0},
                                {114.12, 156.0}, {142.65, 179.0}};

    const std::filesystem::path base =
        std::filesystem::temp_directory_path() / "archopt_acceptance";
    std::filesystem::remove_all(base);

    std::vector<RunRecord> records;
    for (const char* sub : {"a", "b"}) {
        config.outDir = (base / sub).string();
        records.push_back(runExperiment(config));
        const auto problem = makeProblem(config);
        writeArtifacts(records.back(), *problem);
    }
    const double wall = secondsSince(start);

    const RunRecord& first = records[0];
    if (first.archive.empty())
        return {false, "archive is empty"};
    int infeasible = 0;
    for (const auto& m : first.archive)
        infeasible += !m.eval.valid || m.eval.violation != 0.0;

    bool artifacts = true;
    for (const char* name : {"archive.csv", "pareto.svg"})
        for (const char* sub : {"a", "b"})
            artifacts = artifacts &&
                        std::filesystem::file_size(base / sub / name) > 0;

    bool replay = records[0].archive.size() == records[1].archive.size();
    for (std::size_t i = 0; replay && i < first.archive.size(); ++i) {
        const auto& x = records[0].archive[i];
        const auto& y = records[1].archive[i];
        replay = x.eval.fitness == y.eval.fitness &&
                 x.position.size() == y.position.size() &&
                 std::equal(x.position.data(),
                            x.position.data() + x.position.size(),
                            y.position.data());
    }
    replay = replay &&
             slurp(base / "a" / "archive.csv") ==
                 slurp(base / "b" / "archive.csv") &&
             slurp(base / "a" / "pareto.svg") ==
                 slurp(base / "b" / "pareto.svg");

    const bool pass = infeasible == 0 && artifacts && replay &&
                      wall < kWallLimitS;
    return {pass, format("%zu members, %d infeasible; artifacts %s; replay "
                         "%s; %.1f s (limit 600)",
                         first.archive.size(), infeasible,
                         artifacts ? "written" : "MISSING",
                         replay ? "bit-identical" : "DIVERGED", wall)};
}

// --------------------------------------------------------------------------
// Criterion 8: volume quadrature against analytic and refinement oracles.
Outcome volumeQuadrature() {
    constexpr double kTol = 1e-3;
    constexpr double kWallLimitS = 5.0;
    const auto start = Clock::now();

    // Equal radii cancel the parabolic terms: volume = thickness * wall area.
    DesignVector uniform;
    uniform.gamma = 0.0;
    uniform.beta = 0.7;
    uniform.tc.fill(7.5);
    uniform.ru.fill(80.0);
    uniform.rd.fill(80.0);
    const CanyonProfile canyon = CanyonProfile::morrowPoint();
    const DamShape shell(uniform, canyon);
    const double analytic = 7.5 * 142.65 * (30.0 + 110.34);
    const double analyticDev = std::abs(shell.volume() - analytic) / analytic;

    const DamShape baseline(morrowPointBaseline(), CanyonProfile::wideValley());
    const double coarse = shapeVolume(baseline, 64, 64);
    const double doubled = shapeVolume(baseline, 128, 128);
    const double refinementDev = std::abs(doubled - coarse) / doubled;

    const double wall = secondsSince(start);
    const bool pass = analyticDev < kTol && refinementDev < kTol &&
                      wall < kWallLimitS;
    return {pass, format("analytic shell dev %.4f%%, doubling dev %.4f%% "
                         "(tol 0.1%% each); %.2f s (limit 5)",
                         100.0 * analyticDev, 100.0 * refinementDev, wall)};
}

}  // namespace

int main() {
    const struct {
        const char* name;
        Outcome (*run)();
    } criteria[] = {
        {"modal-verification", modalVerification},
        {"beam-oracle", beamOracle},
        {"dominance-oracle", dominanceOracle},
        {"optimizer-quality", optimizerQuality},
        {"archive-invariants", archiveInvariants},
        {"decision-fixture", decisionFixture},
        {"dam-smoke", damSmoke},
        {"volume-quadrature", volumeQuadrature},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += !outcome.pass;
        std::printf("%s  %-20s %s\n", outcome.pass ? "PASS" : "FAIL", c.name,
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    if (failures)
        std::printf("%d of 8 acceptance criteria failed\n", failures);
    else
        std::printf("all 8 acceptance criteria passed\n");
    return failures == 0 ? 0 : 1;
}
