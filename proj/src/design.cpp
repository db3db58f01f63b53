#include "archopt/design.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace archopt {

std::array<double, kDesignDim> DesignVector::flatten() const {
    std::array<double, kDesignDim> x{};
    x[0] = gamma;
    x[1] = beta;
    for (int i = 0; i < kLevels; ++i) {
        x[2 + i] = tc[i];
        x[2 + kLevels + i] = ru[i];
        x[2 + 2 * kLevels + i] = rd[i];
    }
    return x;
}

DesignVector DesignVector::unflatten(std::span<const double> x) {
    if (x.size() != kDesignDim)
        throw std::invalid_argument("design vector needs " +
                                    std::to_string(kDesignDim) + " components");
    DesignVector d;
    d.gamma = x[0];
    d.beta = x[1];
    for (int i = 0; i < kLevels; ++i) {
        d.tc[i] = x[2 + i];
        d.ru[i] = x[2 + kLevels + i];
        d.rd[i] = x[2 + 2 * kLevels + i];
    }
    return d;
}

bool DesignBounds::contains(std::span<const double> x, double tol) const {
    if (x.size() != lower.size())
        return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < lower[i] - tol || x[i] > upper[i] + tol)
            return false;
    return true;
}

DesignBounds damDesignBounds() {
    DesignBounds b;
    b.lower = {0.0, 0.5,
               3, 5, 7, 9, 11, 12,
               104, 91, 78, 65, 52, 39,
               104, 91, 78, 65, 52, 39};
    b.upper = {0.3, 1.0,
               10, 14, 19, 23, 26, 31,
               135, 118, 101, 85, 68, 51,
               135, 118, 101, 85, 68, 51};
    return b;
}

DesignVector morrowPointBaseline() {
    DesignVector d;
    d.gamma = 0.15;
    d.beta = 0.7;
    d.tc = {3.66, 12.0, 16.4, 20.0, 22.9, 15.85};
    d.ru = {135, 118, 101, 85, 68, 51};
    d.rd = {104, 91, 78, 65, 52, 39};
    return d;
}

DesignVector feasibleReference() {
    DesignVector d;
    d.gamma = 0.15;
    d.beta = 0.7;
    const double tCrest = 3.66, tBase = 15.85;
    for (int i = 0; i < kLevels; ++i)
        d.tc[i] = tCrest + (tBase - tCrest) * i / (kLevels - 1);
    d.ru = {108, 95, 82, 69, 56, 43};
    d.rd = {106, 93, 80, 67, 54, 41};
    return d;
}

double CanyonProfile::halfWidthAt(double z) const {
    if (levels.empty())
        throw std::logic_error("canyon profile has no levels");
    if (z <= levels.front().first)
        return levels.front().second;
    if (z >= levels.back().first)
        return levels.back().second;
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (z <= levels[i].first) {
            const auto& [z0, w0] = levels[i - 1];
            const auto& [z1, w1] = levels[i];
            const double t = (z - z0) / (z1 - z0);
            return w0 + t * (w1 - w0);
        }
    }
    return levels.back().second;
}

void CanyonProfile::validate() const {
    if (height <= 0.0)
        throw std::invalid_argument("canyon height must be positive");
    if (levels.size() < 2)
        throw std::invalid_argument("canyon profile needs at least two levels");
    if (levels.front().first != 0.0 || levels.back().first != height)
        throw std::invalid_argument("canyon levels must span z = 0 to z = height");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i].second <= 0.0)
            throw std::invalid_argument("canyon half-widths must be positive");
        if (i > 0) {
            if (levels[i].first <= levels[i - 1].first)
                throw std::invalid_argument("canyon levels must be strictly increasing in z");
            if (levels[i].second < levels[i - 1].second)
                throw std::invalid_argument("canyon half-widths must be non-decreasing with z");
        }
    }
}

CanyonProfile CanyonProfile::morrowPoint() {
    CanyonProfile c;
    c.height = 142.65;
    c.levels = {{0.0, 30.0}, {142.65, 110.34}};
    return c;
}

CanyonProfile CanyonProfile::wideValley() {
    CanyonProfile c;
    c.height = 142.65;
    c.levels = {{0.0, 45.0}, {142.65, 110.34}};
    return c;
}

CanyonProfile CanyonProfile::fromJson(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("canyon profile: ") + e.what());
    }
    CanyonProfile c;
    try {
        c.height = j.at("height").get<double>();
        for (const auto& row : j.at("levels"))
            c.levels.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("canyon profile: ") + e.what());
    }
    std::sort(c.levels.begin(), c.levels.end());
    c.validate();
    return c;
}

CanyonProfile CanyonProfile::fromJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open canyon profile: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return fromJson(ss.str());
}

std::string CanyonProfile::toJson() const {
    nlohmann::json j;
    j["height"] = height;
    auto& rows = j["levels"] = nlohmann::json::array();
    for (const auto& [z, w] : levels)
        rows.push_back({z, w});
    return j.dump(2);
}

}  // namespace archopt
