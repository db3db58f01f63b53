#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "archopt/design.hpp"
#include "archopt/harness.hpp"
#include "archopt/modal.hpp"
#include "archopt/mtdm.hpp"
#include "archopt/pareto.hpp"
#include "archopt/problems.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

int cmdRun(const std::string& configPath) {
    const archopt::RunConfig config = archopt::loadRunConfig(configPath);
    const auto problem = archopt::makeProblem(config);
    std::printf("run: method=%s problem=%s seed=%llu population=%d "
                "iterations=%d\n",
                config.method.c_str(), config.problem.c_str(),
                static_cast<unsigned long long>(config.seed),
                config.population, config.iterations);
    const archopt::RunRecord record = archopt::runExperiment(config);
    std::printf("run: %zu archive members, %ld evaluations, %.2f s\n",
                record.archive.size(), record.evaluations,
                record.wallSeconds);
    if (!config.outDir.empty()) {
        for (const auto& path : archopt::writeArtifacts(record, *problem))
            std::printf("run: wrote %s\n", path.c_str());
    } else {
        for (const auto& member : record.archive) {
            std::printf("  fit = [");
            for (std::size_t k = 0; k < member.eval.fitness.size(); ++k)
                std::printf("%s%.6g", k ? ", " : "",
                            member.eval.fitness[k]);
            std::printf("]\n");
        }
    }
    return kExitOk;
}

int cmdVerifyModal(int arch, int height, int thick) {
    using namespace archopt;
    // Published modal survey values for the Morrow Point dam.
    constexpr double kEmptyRefHz = 4.2897;
    constexpr double kFullRefHz = 2.9607;
    constexpr double kEmptyTolerance = 0.15;
    constexpr double kFullTolerance = 0.20;

    const DamShape shape(morrowPointBaseline(), CanyonProfile::morrowPoint());
    const MeshDivisions divisions{arch, height, thick};
    const MaterialProps mat = MaterialProps::damConcrete();

    bool ok = true;
    const struct {
        Reservoir reservoir;
        const char* label;
        double reference;
        double tolerance;
    } cases[] = {
        {Reservoir::Empty, "empty", kEmptyRefHz, kEmptyTolerance},
        {Reservoir::Full, "full", kFullRefHz, kFullTolerance},
    };
    for (const auto& c : cases) {
        const ModalResult modal = damModal(shape, divisions, mat, c.reservoir);
        if (!modal.converged || modal.modeCount < 1) {
            std::printf("verify-modal [%s]: eigensolver did not converge\n",
                        c.label);
            ok = false;
            continue;
        }
        const double f1 = modal.frequenciesHz.front();
        const double dev = (f1 - c.reference) / c.reference;
        const bool pass = std::abs(dev) <= c.tolerance;
        std::printf("verify-modal [%s reservoir]: fr1 = %.4f Hz, reference "
                    "%.4f Hz, deviation %+.2f%% (allowed %.0f%%) ... %s\n",
                    c.label, f1, c.reference, 100.0 * dev,
                    100.0 * c.tolerance, pass ? "ok" : "FAIL");
        std::printf("  mesh: %d nodes, %d elements, %d free DOFs\n",
                    modal.meshStats.nodeCount, modal.meshStats.elementCount,
                    modal.meshStats.freeDofCount);
        ok = ok && pass;
    }
    return ok ? kExitOk : kExitRuntime;
}

int cmdRank(const std::string& csvPath, const std::string& scenarioPath,
            int top) {
    using namespace archopt;
    const auto rows = importArchiveCsv(csvPath);
    if (rows.size() < 2)
        throw ConfigError("rank: need at least two archive rows");
    std::vector<std::vector<double>> values;
    values.reserve(rows.size());
    for (const auto& row : rows)
        values.push_back(row.fitness);

    const int criteria = static_cast<int>(values.front().size());
    const auto scenarios = scenarioPath.empty() ? defaultScenarios()
                                                : loadScenarios(scenarioPath);
    for (const auto& base : scenarios) {
        Scenario scenario = base;
        scenario.weights = expandWeights(base, criteria);
        std::printf("scenario %s (weights", scenario.name.c_str());
        for (double w : base.weights)
            std::printf(" %.3g", w);
        std::printf("):\n");
        const auto ranked = globalRank(values, scenario);
        const int shown = top > 0
                              ? std::min<int>(top, static_cast<int>(ranked.size()))
                              : static_cast<int>(ranked.size());
        for (int i = 0; i < shown; ++i) {
            const auto& r = ranked[i];
            std::printf("  #%-3d row %-4d R = %.6f  fit = [", i + 1, r.index,
                        r.global);
            for (std::size_t k = 0; k < values[r.index].size(); ++k)
                std::printf("%s%.6g", k ? ", " : "", values[r.index][k]);
            std::printf("]\n");
        }
    }
    return kExitOk;
}

int cmdPlot(const std::string& csvPath, std::string outPath) {
    using namespace archopt;
    const auto rows = importArchiveCsv(csvPath);
    std::vector<std::pair<double, double>> points;
    for (const auto& row : rows) {
        if (row.fitness.size() < 2)
            throw ConfigError("plot: rows need at least two fitness columns");
        points.emplace_back(row.fitness[0], row.fitness[1]);
    }
    if (outPath.empty())
        outPath = csvPath + ".svg";
    emitScatterSvg(points, "fit1", "fit2", outPath);
    std::printf("plot: wrote %s (%zu markers)\n", outPath.c_str(),
                points.size());
    return kExitOk;
}

int cmdBench(const std::string& name, int population, int iterations,
             int seeds) {
    using namespace archopt;
    RunConfig config;
    config.problem = name;
    config.population = population;
    config.iterations = iterations;
    const auto problem = makeProblem(config);
    if (problem->objectives() != 2)
        throw ConfigError("bench: needs a bi-objective problem");

    // Shared reference point from a nadir estimate across all runs.
    std::vector<RunRecord> records;
    std::vector<std::string> labels;
    double ref1 = 0.0, ref2 = 0.0;
    for (int s = 1; s <= seeds; ++s) {
        for (const char* method : {"mocss", "nsga2"}) {
            config.method = method;
            config.seed = static_cast<std::uint64_t>(s);
            records.push_back(runExperiment(config));
            labels.push_back(std::string(method) + " seed " +
                             std::to_string(s));
            for (const auto& p : records.back().archive) {
                ref1 = std::max(ref1, p.eval.fitness[0]);
                ref2 = std::max(ref2, p.eval.fitness[1]);
            }
        }
    }
    ref1 *= 1.1;
    ref2 *= 1.1;
    std::printf("bench %s: population=%d iterations=%d, reference (%.4g, "
                "%.4g)\n",
                name.c_str(), population, iterations, ref1, ref2);
    for (std::size_t i = 0; i < records.size(); ++i) {
        std::vector<Evaluation> evals;
        for (const auto& p : records[i].archive)
            evals.push_back(p.eval);
        std::printf("  %-14s hv = %.6f  members = %3zu  %.2f s\n",
                    labels[i].c_str(), hypervolume2d(evals, ref1, ref2),
                    records[i].archive.size(), records[i].wallSeconds);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arch dam shape optimization"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run an optimization experiment");
    std::string configPath;
    run->add_option("config", configPath, "experiment config (JSON)")
        ->required();

    auto* verify = app.add_subcommand(
        "verify-modal", "check the modal solver against the Morrow Point dam");
    int arch = 16, height = 8, thick = 2;
    verify->add_option("--arch", arch, "mesh divisions along the arch");
    verify->add_option("--height", height, "mesh divisions over the height");
    verify->add_option("--thick", thick, "mesh divisions through the thickness");

    auto* rank = app.add_subcommand(
        "rank", "rank an exported archive under decision scenarios");
    std::string rankCsv, scenarioPath;
    int rankTop = 5;
    rank->add_option("archive", rankCsv, "archive CSV from a run")->required();
    rank->add_option("scenarios", scenarioPath,
                     "scenario JSON (default: built-in profiles A-E)");
    rank->add_option("--top", rankTop, "rows to print per scenario (0 = all)");

    auto* plot = app.add_subcommand("plot", "scatter plot of an archive CSV");
    std::string plotCsv, plotOut;
    plot->add_option("archive", plotCsv, "archive CSV from a run")->required();
    plot->add_option("-o,--out", plotOut, "output SVG path");

    auto* bench = app.add_subcommand(
        "bench", "compare both optimizers on a synthetic problem");
    std::string benchName;
    int benchPop = 100, benchIters = 200, benchSeeds = 5;
    bench->add_option("problem", benchName, "sphere | zdt1")->required();
    bench->add_option("--population", benchPop, "agents per iteration");
    bench->add_option("--iterations", benchIters, "iteration budget");
    bench->add_option("--seeds", benchSeeds, "number of seeds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed())
            return cmdRun(configPath);
        if (verify->parsed())
            return cmdVerifyModal(arch, height, thick);
        if (rank->parsed())
            return cmdRank(rankCsv, scenarioPath, rankTop);
        if (plot->parsed())
            return cmdPlot(plotCsv, plotOut);
        if (bench->parsed())
            return cmdBench(benchName, benchPop, benchIters, benchSeeds);
    } catch (const archopt::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return kExitConfig;
}
