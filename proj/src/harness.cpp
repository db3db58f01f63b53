#include "archopt/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace archopt {

namespace {

using nlohmann::json;

// Shortest exact decimal form; CSV and JSON artifacts must survive a
// parse round trip bit for bit.
std::string exactly(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
void readInto(const json& obj, const char* key, T& target) {
    if (!obj.contains(key))
        return;
    try {
        target = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + key +
                          "': " + e.what());
    }
}

CanyonProfile canyonFromConfig(const json& value, const std::string& baseDir) {
    if (value.is_string()) {
        const std::string name = value.get<std::string>();
        if (name == "wide-valley")
            return CanyonProfile::wideValley();
        if (name == "morrow-point")
            return CanyonProfile::morrowPoint();
        std::filesystem::path p(name);
        if (p.is_relative() && !baseDir.empty())
            p = std::filesystem::path(baseDir) / p;
        try {
            return CanyonProfile::fromJsonFile(p.string());
        } catch (const std::exception& e) {
            throw ConfigError(std::string("canyon '") + name +
                              "': " + e.what());
        }
    }
    if (value.is_object()) {
        try {
            return CanyonProfile::fromJson(value.dump());
        } catch (const std::exception& e) {
            throw ConfigError(std::string("inline canyon: ") + e.what());
        }
    }
    throw ConfigError("canyon: expected a name, a path, or a profile object");
}

json canyonToJson(const CanyonProfile& canyon) {
    return json::parse(canyon.toJson());
}

bool isDamProblem(const std::string& problem) {
    return problem == "P1" || problem == "P2" || problem == "P3";
}

DamObjective damKind(const std::string& problem) {
    if (problem == "P1")
        return DamObjective::P1;
    if (problem == "P3")
        return DamObjective::P3;
    return DamObjective::P2;
}

void validateConfig(const RunConfig& c) {
    if (c.method != "mocss" && c.method != "nsga2")
        throw ConfigError("method must be 'mocss' or 'nsga2', got '" +
                          c.method + "'");
    if (!isDamProblem(c.problem) && c.problem != "sphere" &&
        c.problem != "zdt1")
        throw ConfigError("unknown problem '" + c.problem + "'");
    if (c.population < 2)
        throw ConfigError("population must be at least 2");
    if (c.iterations < 0)
        throw ConfigError("iterations must be nonnegative");
}

std::vector<std::string> splitCsvLine(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.push_back("");
    return cells;
}

double parseDouble(const std::string& text, const std::string& context) {
    if (text.empty())
        return std::numeric_limits<double>::quiet_NaN();
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw ConfigError("bad numeric cell '" + text + "' in " + context);
    return v;
}

}  // namespace

RunConfig parseRunConfig(const std::string& jsonText,
                         const std::string& baseDir) {
    json doc;
    try {
        doc = json::parse(jsonText);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") +
                          e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config must be a JSON object");

    RunConfig c;
    readInto(doc, "method", c.method);
    readInto(doc, "problem", c.problem);
    readInto(doc, "seed", c.seed);
    readInto(doc, "population", c.population);
    readInto(doc, "iterations", c.iterations);
    readInto(doc, "workers", c.workers);
    readInto(doc, "snapshots", c.snapshots);
    readInto(doc, "out", c.outDir);
    validateConfig(c);

    if (doc.contains("css")) {
        const json& s = doc.at("css");
        readInto(s, "ka", c.css.ka);
        readInto(s, "kv", c.css.kv);
        readInto(s, "sphereRadius", c.css.sphereRadius);
        readInto(s, "attractProb", c.css.attractProb);
        readInto(s, "cmcr", c.css.cmcr);
        readInto(s, "par", c.css.par);
        readInto(s, "archiveCapacity", c.css.archiveCapacity);
        readInto(s, "distanceScale", c.css.distanceScale);
        readInto(s, "invertedRankGate", c.css.invertedRankGate);
        readInto(s, "normalizedScale", c.css.normalizedScale);
        readInto(s, "kt", c.css.kt);
    }
    if (doc.contains("nsga2")) {
        const json& s = doc.at("nsga2");
        readInto(s, "crossoverProb", c.nsga2.crossoverProb);
        readInto(s, "mutationProb", c.nsga2.mutationProb);
        readInto(s, "etaC", c.nsga2.etaC);
        readInto(s, "etaM", c.nsga2.etaM);
    }

    if (doc.contains("dam")) {
        const json& d = doc.at("dam");
        if (!d.is_object())
            throw ConfigError("'dam' must be an object");
        readInto(d, "nFreq", c.dam.nFreq);
        if (c.dam.nFreq < 1)
            throw ConfigError("dam.nFreq must be >= 1");
        if (d.contains("mesh")) {
            const json& m = d.at("mesh");
            readInto(m, "arch", c.dam.mesh.arch);
            readInto(m, "height", c.dam.mesh.height);
            readInto(m, "thick", c.dam.mesh.thick);
            if (c.dam.mesh.arch < 1 || c.dam.mesh.height < 1 ||
                c.dam.mesh.thick < 1)
                throw ConfigError("dam.mesh divisions must be >= 1");
        }
        if (d.contains("canyon"))
            c.dam.canyon = canyonFromConfig(d.at("canyon"), baseDir);
        if (d.contains("reservoir")) {
            std::string r;
            readInto(d, "reservoir", r);
            if (r == "full")
                c.dam.reservoir = Reservoir::Full;
            else if (r == "empty")
                c.dam.reservoir = Reservoir::Empty;
            else
                throw ConfigError("reservoir must be 'full' or 'empty'");
        }
        if (d.contains("geometry")) {
            const json& g = d.at("geometry");
            readInto(g, "quadratureX", c.dam.geometry.quadratureX);
            readInto(g, "quadratureZ", c.dam.geometry.quadratureZ);
            readInto(g, "slopeSamples", c.dam.geometry.slopeSamples);
            readInto(g, "sAbw", c.dam.geometry.sAbw);
            readInto(g, "phiLowerDeg", c.dam.geometry.phiLowerDeg);
            readInto(g, "phiUpperDeg", c.dam.geometry.phiUpperDeg);
        }
        if (d.contains("material")) {
            const json& m = d.at("material");
            readInto(m, "E", c.dam.material.E);
            readInto(m, "nu", c.dam.material.nu);
            readInto(m, "rhoConcrete", c.dam.material.rhoConcrete);
            readInto(m, "rhoWater", c.dam.material.rhoWater);
        }
        if (d.contains("modal")) {
            const json& m = d.at("modal");
            readInto(m, "maxIterations", c.dam.modal.maxIterations);
            readInto(m, "tolerance", c.dam.modal.tolerance);
            readInto(m, "residualTol", c.dam.modal.residualTol);
        }
        if (d.contains("assembly")) {
            const json& a = d.at("assembly");
            readInto(a, "incompatibleModes", c.dam.assembly.incompatibleModes);
        }
    }
    if (isDamProblem(c.problem))
        c.dam.kind = damKind(c.problem);
    return c;
}

RunConfig loadRunConfig(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parseRunConfig(
        buffer.str(), std::filesystem::path(path).parent_path().string());
}

std::unique_ptr<Problem> makeProblem(const RunConfig& config) {
    if (isDamProblem(config.problem)) {
        DamProblemConfig dam = config.dam;
        dam.kind = damKind(config.problem);
        try {
            return std::make_unique<DamProblem>(std::move(dam));
        } catch (const std::exception& e) {
            throw ConfigError(std::string("dam problem setup: ") + e.what());
        }
    }
    try {
        return syntheticProblem(config.problem);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

RunRecord runExperiment(const RunConfig& config) {
    validateConfig(config);
    RunRecord record;
    record.config = config;
    const auto problem = makeProblem(config);
    const int workers =
        config.workers > 0 ? config.workers : defaultWorkerCount();

    ArchiveObserver observer;
    if (config.snapshots)
        observer = [&record](int, const ParetoArchive& archive) {
            std::vector<std::vector<double>> fits;
            fits.reserve(archive.size());
            for (const auto& p : archive)
                fits.push_back(p.eval.fitness);
            record.snapshots.push_back(std::move(fits));
        };

    const auto start = std::chrono::steady_clock::now();
    if (config.method == "mocss") {
        CssParams p = config.css;
        p.agents = config.population;
        p.iterations = config.iterations;
        p.workers = workers;
        record.archive = cssOptimize(*problem, p, config.seed, observer);
    } else {
        Nsga2Params p = config.nsga2;
        p.populationSize = config.population;
        p.generations = config.iterations;
        p.workers = workers;
        record.archive = nsga2Optimize(*problem, p, config.seed, observer);
    }
    record.wallSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    record.evaluations =
        static_cast<long>(config.population) * (config.iterations + 1);
    return record;
}

void exportArchiveCsv(const RunRecord& record, const Problem& problem,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write CSV: " + path);

    const auto* dam = dynamic_cast<const DamProblem*>(&problem);
    const int nFreq = dam ? dam->config().nFreq : 0;
    const int dim = problem.dimension();
    const int nObj = problem.objectives();

    out << "seed,method";
    for (int d = 1; d <= dim; ++d)
        out << ",x" << d;
    if (dam) {
        out << ",volume";
        for (int k = 1; k <= nFreq; ++k)
            out << ",fr" << k;
    }
    for (int m = 1; m <= nObj; ++m)
        out << ",fit" << m;
    out << ",rank\n";

    for (const auto& member : record.archive) {
        out << record.config.seed << ',' << record.config.method;
        const Eigen::VectorXd x = problem.denormalize(member.position);
        for (int d = 0; d < dim; ++d)
            out << ',' << exactly(x(d));
        if (dam) {
            // aux = [volume, fr_1..fr_n] for valid dam evaluations.
            for (int k = 0; k <= nFreq; ++k)
                out << ','
                    << (k < static_cast<int>(member.eval.aux.size())
                            ? exactly(member.eval.aux[k])
                            : std::string());
        }
        for (int m = 0; m < nObj; ++m)
            out << ',' << exactly(member.eval.fitness[m]);
        out << ',' << member.rank << '\n';
    }
    if (!out)
        throw ConfigError("short write to CSV: " + path);
}

std::vector<ArchiveRow> importArchiveCsv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open CSV: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("empty CSV: " + path);
    const auto header = splitCsvLine(line);
    if (header.size() < 2 || header[0] != "seed" || header[1] != "method")
        throw ConfigError("unrecognized CSV header in " + path);

    std::vector<ArchiveRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto cells = splitCsvLine(line);
        if (cells.size() != header.size())
            throw ConfigError("ragged CSV row in " + path);
        ArchiveRow row;
        row.volume = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t c = 0; c < header.size(); ++c) {
            const std::string& name = header[c];
            if (name == "seed")
                row.seed = static_cast<std::uint64_t>(
                    std::strtoull(cells[c].c_str(), nullptr, 10));
            else if (name == "method")
                row.method = cells[c];
            else if (name == "rank")
                row.rank = static_cast<int>(parseDouble(cells[c], path));
            else if (name == "volume")
                row.volume = parseDouble(cells[c], path);
            else if (name.rfind("fr", 0) == 0 && name.size() > 2 &&
                     std::isdigit(static_cast<unsigned char>(name[2])))
                row.frequencies.push_back(parseDouble(cells[c], path));
            else if (name.rfind("fit", 0) == 0)
                row.fitness.push_back(parseDouble(cells[c], path));
            else if (name.rfind("x", 0) == 0)
                row.design.push_back(parseDouble(cells[c], path));
            else
                throw ConfigError("unknown CSV column '" + name + "' in " +
                                  path);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void emitScatterSvg(const std::vector<std::pair<double, double>>& points,
                    const std::string& xLabel, const std::string& yLabel,
                    const std::string& path) {
    const int width = 640, height = 480, margin = 64;
    const int plotW = width - 2 * margin, plotH = height - 2 * margin;

    double xMin = std::numeric_limits<double>::infinity(), xMax = -xMin;
    double yMin = xMin, yMax = -xMin;
    for (const auto& [x, y] : points) {
        xMin = std::min(xMin, x);
        xMax = std::max(xMax, x);
        yMin = std::min(yMin, y);
        yMax = std::max(yMax, y);
    }
    if (points.empty()) {
        xMin = yMin = 0.0;
        xMax = yMax = 1.0;
    }
    if (xMax <= xMin) {
        xMin -= 0.5;
        xMax += 0.5;
    }
    if (yMax <= yMin) {
        yMin -= 0.5;
        yMax += 0.5;
    }
    const double padX = 0.05 * (xMax - xMin), padY = 0.05 * (yMax - yMin);
    xMin -= padX;
    xMax += padX;
    yMin -= padY;
    yMax += padY;

    const auto px = [&](double x) {
        return margin + (x - xMin) / (xMax - xMin) * plotW;
    };
    const auto py = [&](double y) {
        return height - margin - (y - yMin) / (yMax - yMin) * plotH;
    };
    const auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", v);
        return std::string(buf);
    };

    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write SVG: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
        << height << "\">\n"
        << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\""
        << plotW << "\" height=\"" << plotH
        << "\" fill=\"white\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = xMin + (xMax - xMin) * i / 4.0;
        const double fy = yMin + (yMax - yMin) * i / 4.0;
        out << "  <text x=\"" << px(fx) << "\" y=\"" << height - margin + 20
            << "\" font-size=\"11\" text-anchor=\"middle\">" << num(fx)
            << "</text>\n"
            << "  <text x=\"" << margin - 8 << "\" y=\"" << py(fy) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << num(fy)
            << "</text>\n";
    }
    out << "  <text x=\"" << width / 2 << "\" y=\"" << height - 16
        << "\" font-size=\"13\" text-anchor=\"middle\">" << xLabel
        << "</text>\n"
        << "  <text x=\"18\" y=\"" << height / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 "
           "18 "
        << height / 2 << ")\">" << yLabel << "</text>\n";
    for (const auto& [x, y] : points)
        out << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(y)
            << "\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.8\"/>\n";
    out << "</svg>\n";
    if (!out)
        throw ConfigError("short write to SVG: " + path);
}

namespace {

json configToJson(const RunConfig& c) {
    json doc{{"method", c.method},     {"problem", c.problem},
             {"seed", c.seed},         {"population", c.population},
             {"iterations", c.iterations}, {"workers", c.workers},
             {"snapshots", c.snapshots}};
    if (!c.outDir.empty())
        doc["out"] = c.outDir;
    doc["css"] = {{"ka", c.css.ka},
                  {"kv", c.css.kv},
                  {"sphereRadius", c.css.sphereRadius},
                  {"attractProb", c.css.attractProb},
                  {"cmcr", c.css.cmcr},
                  {"par", c.css.par},
                  {"archiveCapacity", c.css.archiveCapacity},
                  {"distanceScale", c.css.distanceScale},
                  {"invertedRankGate", c.css.invertedRankGate},
                  {"normalizedScale", c.css.normalizedScale},
                  {"kt", c.css.kt}};
    doc["nsga2"] = {{"crossoverProb", c.nsga2.crossoverProb},
                    {"mutationProb", c.nsga2.mutationProb},
                    {"etaC", c.nsga2.etaC},
                    {"etaM", c.nsga2.etaM}};
    if (isDamProblem(c.problem)) {
        json dam;
        dam["nFreq"] = c.dam.nFreq;
        dam["mesh"] = {{"arch", c.dam.mesh.arch},
                       {"height", c.dam.mesh.height},
                       {"thick", c.dam.mesh.thick}};
        dam["canyon"] = canyonToJson(c.dam.canyon);
        dam["reservoir"] =
            c.dam.reservoir == Reservoir::Full ? "full" : "empty";
        dam["geometry"] = {{"quadratureX", c.dam.geometry.quadratureX},
                           {"quadratureZ", c.dam.geometry.quadratureZ},
                           {"slopeSamples", c.dam.geometry.slopeSamples},
                           {"sAbw", c.dam.geometry.sAbw},
                           {"phiLowerDeg", c.dam.geometry.phiLowerDeg},
                           {"phiUpperDeg", c.dam.geometry.phiUpperDeg}};
        dam["material"] = {{"E", c.dam.material.E},
                           {"nu", c.dam.material.nu},
                           {"rhoConcrete", c.dam.material.rhoConcrete},
                           {"rhoWater", c.dam.material.rhoWater}};
        dam["modal"] = {{"maxIterations", c.dam.modal.maxIterations},
                        {"tolerance", c.dam.modal.tolerance},
                        {"residualTol", c.dam.modal.residualTol}};
        dam["assembly"] = {
            {"incompatibleModes", c.dam.assembly.incompatibleModes}};
        doc["dam"] = std::move(dam);
    }
    return doc;
}

}  // namespace

void saveRunRecord(const RunRecord& record, const std::string& path) {
    json doc;
    doc["config"] = configToJson(record.config);
    doc["wallSeconds"] = record.wallSeconds;
    doc["evaluations"] = record.evaluations;
    json archive = json::array();
    for (const auto& p : record.archive) {
        json member;
        member["position"] =
            std::vector<double>(p.position.data(),
                                p.position.data() + p.position.size());
        member["fitness"] = p.eval.fitness;
        member["violation"] = p.eval.violation;
        member["valid"] = p.eval.valid;
        member["aux"] = p.eval.aux;
        member["rank"] = p.rank;
        archive.push_back(std::move(member));
    }
    doc["archive"] = std::move(archive);
    if (!record.snapshots.empty())
        doc["snapshots"] = record.snapshots;

    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write record: " + path);
    out << doc.dump(2) << '\n';
    if (!out)
        throw ConfigError("short write to record: " + path);
}

RunRecord loadRunRecord(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open record: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("record is not valid JSON: ") +
                          e.what());
    }
    RunRecord record;
    try {
        record.config = parseRunConfig(
            doc.at("config").dump(),
            std::filesystem::path(path).parent_path().string());
        record.wallSeconds = doc.value("wallSeconds", 0.0);
        record.evaluations = doc.value("evaluations", 0L);
        for (const auto& member : doc.at("archive")) {
            Particle p;
            const auto pos = member.at("position").get<std::vector<double>>();
            p.position = Eigen::Map<const Eigen::VectorXd>(
                pos.data(), static_cast<Eigen::Index>(pos.size()));
            p.velocity = Eigen::VectorXd::Zero(p.position.size());
            p.eval.fitness = member.at("fitness").get<std::vector<double>>();
            p.eval.violation = member.at("violation").get<double>();
            p.eval.valid = member.at("valid").get<bool>();
            p.eval.aux = member.at("aux").get<std::vector<double>>();
            p.rank = member.at("rank").get<int>();
            record.archive.push_back(std::move(p));
        }
        if (doc.contains("snapshots"))
            record.snapshots =
                doc.at("snapshots")
                    .get<std::vector<std::vector<std::vector<double>>>>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("record ") + path + ": " + e.what());
    }
    return record;
}

std::vector<std::string> writeArtifacts(const RunRecord& record,
                                        const Problem& problem) {
    if (record.config.outDir.empty())
        throw ConfigError("writeArtifacts: config has no output directory");
    std::error_code ec;
    std::filesystem::create_directories(record.config.outDir, ec);
    if (ec)
        throw ConfigError("cannot create output directory '" +
                          record.config.outDir + "': " + ec.message());

    const std::filesystem::path dir(record.config.outDir);
    const std::string csvPath = (dir / "archive.csv").string();
    const std::string svgPath = (dir / "pareto.svg").string();
    const std::string recPath = (dir / "record.json").string();

    exportArchiveCsv(record, problem, csvPath);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(record.archive.size());
    for (const auto& p : record.archive)
        if (p.eval.fitness.size() >= 2)
            pts.emplace_back(p.eval.fitness[0], p.eval.fitness[1]);
    emitScatterSvg(pts, "fit1", "fit2", svgPath);
    saveRunRecord(record, recPath);
    return {csvPath, svgPath, recPath};
}

}  // namespace archopt
