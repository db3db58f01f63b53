#include "archopt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace archopt {

namespace {

constexpr double kSentinelFitness = 1e30;

Evaluation invalidEvaluation(int objectives) {
    Evaluation e;
    e.valid = false;
    e.violation = kSentinelFitness;
    e.fitness.assign(objectives, kSentinelFitness);
    return e;
}

}  // namespace

SpherePairProblem::SpherePairProblem(int dim) {
    if (dim < 1)
        throw std::invalid_argument("sphere: dimension must be positive");
    lower_ = Eigen::VectorXd::Constant(dim, -1.0);
    upper_ = Eigen::VectorXd::Constant(dim, 2.0);
}

Evaluation SpherePairProblem::evaluate(const Eigen::VectorXd& x) const {
    Evaluation e;
    e.fitness = {x.squaredNorm(),
                 (x - Eigen::VectorXd::Ones(x.size())).squaredNorm()};
    return e;
}

double SpherePairProblem::distanceToOptimalSet(const Eigen::VectorXd& x) {
    const double t =
        std::clamp(x.sum() / static_cast<double>(x.size()), 0.0, 1.0);
    return (x - Eigen::VectorXd::Constant(x.size(), t)).norm();
}

double SpherePairProblem::distanceToFront(double f1, double f2) const {
    // The front is (d*t^2, d*(1-t)^2) for t in [0, 1]; scan then refine.
    const double d = dimension();
    const auto distSq = [&](double t) {
        const double df1 = f1 - d * t * t;
        const double df2 = f2 - d * (1.0 - t) * (1.0 - t);
        return df1 * df1 + df2 * df2;
    };
    const int samples = 2000;
    double bestT = 0.0, bestD = distSq(0.0);
    for (int i = 1; i <= samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        const double dist = distSq(t);
        if (dist < bestD) {
            bestD = dist;
            bestT = t;
        }
    }
    double lo = std::max(0.0, bestT - 1.0 / samples);
    double hi = std::min(1.0, bestT + 1.0 / samples);
    for (int iter = 0; iter < 60; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (distSq(m1) < distSq(m2))
            hi = m2;
        else
            lo = m1;
    }
    return std::sqrt(distSq(0.5 * (lo + hi)));
}

Zdt1Problem::Zdt1Problem(int dim) {
    if (dim < 2)
        throw std::invalid_argument("zdt1: needs at least 2 variables");
    lower_ = Eigen::VectorXd::Zero(dim);
    upper_ = Eigen::VectorXd::Ones(dim);
}

Evaluation Zdt1Problem::evaluate(const Eigen::VectorXd& x) const {
    const int n = static_cast<int>(x.size());
    const double g = 1.0 + 9.0 * x.tail(n - 1).sum() / (n - 1);
    Evaluation e;
    e.fitness = {x(0), g * (1.0 - std::sqrt(x(0) / g))};
    return e;
}

double Zdt1Problem::frontF2(double f1) { return 1.0 - std::sqrt(f1); }

double Zdt1Problem::distanceToFront(double f1, double f2) {
    // Coarse scan over the curve, then a ternary refine of the bracket.
    const auto distSq = [&](double t) {
        const double df1 = f1 - t;
        const double df2 = f2 - frontF2(t);
        return df1 * df1 + df2 * df2;
    };
    const int samples = 2000;
    double bestT = 0.0, bestD = distSq(0.0);
    for (int i = 1; i <= samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        const double d = distSq(t);
        if (d < bestD) {
            bestD = d;
            bestT = t;
        }
    }
    double lo = std::max(0.0, bestT - 1.0 / samples);
    double hi = std::min(1.0, bestT + 1.0 / samples);
    for (int iter = 0; iter < 60; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (distSq(m1) < distSq(m2))
            hi = m2;
        else
            lo = m1;
    }
    return std::sqrt(distSq(0.5 * (lo + hi)));
}

std::vector<double> fitnessFromFrequencies(DamObjective kind, double volume,
                                           const std::vector<double>& freqsHz) {
    if (freqsHz.empty())
        throw std::invalid_argument("fitnessFromFrequencies: no frequencies");
    for (double f : freqsHz)
        if (!(f > 0.0) || !std::isfinite(f))
            throw std::invalid_argument(
                "fitnessFromFrequencies: frequencies must be positive");
    switch (kind) {
    case DamObjective::P1: {
        std::vector<double> fit;
        fit.reserve(freqsHz.size() + 1);
        fit.push_back(volume);
        for (double f : freqsHz)
            fit.push_back(1.0 / f);
        return fit;
    }
    case DamObjective::P2: {
        double sum = 0.0;
        for (double f : freqsHz)
            sum += 1.0 / f;
        return {volume, sum};
    }
    case DamObjective::P3: {
        double logProd = 0.0;
        for (double f : freqsHz)
            logProd -= std::log(f);
        return {volume, std::exp(logProd)};
    }
    }
    throw std::invalid_argument("fitnessFromFrequencies: unknown variant");
}

DamProblem::DamProblem(DamProblemConfig config) : config_(std::move(config)) {
    if (config_.nFreq < 1)
        throw std::invalid_argument("dam problem: nFreq must be >= 1");
    config_.canyon.validate();
    config_.modal.nModes = config_.nFreq;
    const DesignBounds bounds = damDesignBounds();
    lower_ = Eigen::Map<const Eigen::VectorXd>(bounds.lower.data(),
                                               bounds.lower.size());
    upper_ = Eigen::Map<const Eigen::VectorXd>(bounds.upper.data(),
                                               bounds.upper.size());
}

std::string DamProblem::name() const {
    switch (config_.kind) {
    case DamObjective::P1:
        return "P1";
    case DamObjective::P2:
        return "P2";
    case DamObjective::P3:
        return "P3";
    }
    return "dam";
}

int DamProblem::objectives() const {
    return config_.kind == DamObjective::P1 ? 1 + config_.nFreq : 2;
}

Evaluation DamProblem::evaluate(const Eigen::VectorXd& x) const {
    try {
        const DesignVector design =
            DesignVector::unflatten(std::span<const double>(x.data(),
                                                            x.size()));
        const DamShape shape(design, config_.canyon, config_.geometry);
        const ModalResult modal =
            damModal(shape, config_.mesh, config_.material, config_.reservoir,
                     config_.assembly, config_.modal);
        if (!modal.converged || modal.modeCount < config_.nFreq)
            return invalidEvaluation(objectives());
        std::vector<double> freqs(modal.frequenciesHz.begin(),
                                  modal.frequenciesHz.begin() + config_.nFreq);
        Evaluation e;
        e.fitness = fitnessFromFrequencies(config_.kind, shape.volume(), freqs);
        e.violation = shape.violations().total();
        e.aux.reserve(1 + freqs.size());
        e.aux.push_back(shape.volume());
        e.aux.insert(e.aux.end(), freqs.begin(), freqs.end());
        return e;
    } catch (const std::exception&) {
        // Unmeshable geometry, modal failure, or a degenerate shape: the
        // design loses to every valid one but the run continues.
        return invalidEvaluation(objectives());
    }
}

std::unique_ptr<Problem> syntheticProblem(const std::string& name) {
    if (name == "sphere")
        return std::make_unique<SpherePairProblem>();
    if (name == "zdt1")
        return std::make_unique<Zdt1Problem>();
    throw std::invalid_argument("unknown synthetic problem: " + name);
}

}  // namespace archopt
