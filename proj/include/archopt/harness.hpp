#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "archopt/mocss.hpp"
#include "archopt/nsga2.hpp"
#include "archopt/problems.hpp"

namespace archopt {

/// Unusable run configuration (missing file, malformed JSON, bad field
/// values). The CLI maps this to its config-error exit code.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One declarative experiment: which optimizer, which problem, the shared
/// evaluation budget, and the problem setup. `population` and `iterations`
/// feed both optimizers identically so method comparisons always run under
/// an equal budget of population * (iterations + 1) evaluations.
struct RunConfig {
    std::string method = "mocss";  // "mocss" | "nsga2"
    std::string problem = "P2";    // "P1" | "P2" | "P3" | "sphere" | "zdt1"
    std::uint64_t seed = 1;
    int population = 100;
    int iterations = 200;
    int workers = 0;  // <= 0: ARCHOPT_WORKERS or 1
    bool snapshots = false;
    std::string outDir;  // empty: caller handles artifacts

    CssParams css;      // tuning fields; budget/workers come from above
    Nsga2Params nsga2;  // likewise
    DamProblemConfig dam;
};

/// Parse a config from JSON text; relative canyon paths resolve against
/// `baseDir`. Throws ConfigError.
RunConfig parseRunConfig(const std::string& jsonText,
                         const std::string& baseDir);

/// Load a config file (JSON). Throws ConfigError.
RunConfig loadRunConfig(const std::string& path);

/// Instantiate the problem a config names. Throws ConfigError for unknown
/// problem names.
std::unique_ptr<Problem> makeProblem(const RunConfig& config);

struct RunRecord {
    RunConfig config;
    ParetoArchive archive;
    /// Archive fitness matrix per iteration, only when config.snapshots.
    std::vector<std::vector<std::vector<double>>> snapshots;
    double wallSeconds = 0.0;
    long evaluations = 0;
};

/// Execute the configured run. Deterministic: identical config produces a
/// bit-identical archive.
RunRecord runExperiment(const RunConfig& config);

/// One row of an exported archive.
struct ArchiveRow {
    std::uint64_t seed = 0;
    std::string method;
    std::vector<double> design;       // physical coordinates
    double volume = 0.0;              // NaN when absent
    std::vector<double> frequencies;  // empty when absent
    std::vector<double> fitness;
    int rank = 1;
};

/// Write the archive as CSV: seed, method, design variables, volume and
/// frequencies when the problem provides them, the fitness vector, rank.
/// Values are printed with enough digits to round-trip exactly.
void exportArchiveCsv(const RunRecord& record, const Problem& problem,
                      const std::string& path);

/// Read back an exported CSV. Throws ConfigError on malformed content.
std::vector<ArchiveRow> importArchiveCsv(const std::string& path);

/// Scatter plot of (fit1, fit2) pairs: one circle marker per point.
void emitScatterSvg(const std::vector<std::pair<double, double>>& points,
                    const std::string& xLabel, const std::string& yLabel,
                    const std::string& path);

/// Persist / restore a full run record (config + archive) as JSON.
void saveRunRecord(const RunRecord& record, const std::string& path);
RunRecord loadRunRecord(const std::string& path);

/// Write archive.csv, pareto.svg, and record.json under config.outDir.
/// Returns the paths written.
std::vector<std::string> writeArtifacts(const RunRecord& record,
                                        const Problem& problem);

}  // namespace archopt
