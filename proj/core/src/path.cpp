#include "bigjump/path.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "bigjump/levy_model.hpp"

namespace bigjump {

StepPath::StepPath(std::vector<Jump> jumps) : jumps_(std::move(jumps)) {
    std::sort(jumps_.begin(), jumps_.end(),
              [](const Jump& a, const Jump& b) { return a.time < b.time; });
    double prev = 0.0;
    for (const auto& j : jumps_) {
        if (!(j.time > 0.0 && j.time <= 1.0))
            throw std::invalid_argument("StepPath: jump time outside (0,1]");
        if (j.time == prev)
            throw std::invalid_argument("StepPath: simultaneous jumps");
        if (j.size == 0.0)
            throw std::invalid_argument("StepPath: zero jump size");
        prev = j.time;
    }
}

double StepPath::level_after(std::size_t k) const {
    double v = 0.0;
    for (std::size_t i = 0; i < k && i < jumps_.size(); ++i) v += jumps_[i].size;
    return v;
}

double StepPath::eval(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("StepPath::eval: t outside [0,1]");
    double v = 0.0;
    for (const auto& j : jumps_) {
        if (j.time > t) break;
        v += j.size;
    }
    return v;
}

std::pair<int, int> StepPath::jump_counts() const {
    int up = 0, down = 0;
    for (const auto& j : jumps_) (j.size > 0.0 ? up : down)++;
    return {up, down};
}

double GridPath::min_value() const {
    return *std::min_element(values.begin(), values.end());
}

double GridPath::max_value() const {
    return *std::max_element(values.begin(), values.end());
}

double eval_step(const StepPath& p, double t) { return p.eval(t); }

std::pair<int, int> jump_counts(const StepPath& p) { return p.jump_counts(); }

double path_rate_function(const StepPath& p, double alpha, double beta) {
    const auto [up, down] = p.jump_counts();
    return rate_cost(alpha, beta, up, down);
}

double bound_away_radius(const StepPath& p, int j, int k) {
    if (j < 0 || k < 0) throw std::invalid_argument("bound_away_radius: negative counts");
    if (j == 0 && k == 0) return std::numeric_limits<double>::infinity();
    std::vector<double> ups, downs;
    for (const auto& jp : p.jumps()) {
        if (jp.size > 0.0) ups.push_back(jp.size);
        else downs.push_back(-jp.size);
    }
    if (static_cast<int>(ups.size()) < j || static_cast<int>(downs.size()) < k)
        throw std::invalid_argument("bound_away_radius: path has too few jumps");
    double bound = std::numeric_limits<double>::infinity();
    if (j > 0) {
        std::nth_element(ups.begin(), ups.begin() + (j - 1), ups.end(),
                         std::greater<double>());
        bound = std::min(bound, ups[j - 1] / 2.0);
    }
    if (k > 0) {
        std::nth_element(downs.begin(), downs.begin() + (k - 1), downs.end(),
                         std::greater<double>());
        bound = std::min(bound, downs[k - 1] / 2.0);
    }
    return bound;
}

void write_step_csv(std::ostream& os, const StepPath& p) {
    os << "time,size\n";
    os.precision(17);
    for (const auto& j : p.jumps()) os << j.time << ',' << j.size << '\n';
}

StepPath read_step_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("step CSV: empty input");
    std::vector<Jump> jumps;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string t, s;
        if (!std::getline(row, t, ',') || !std::getline(row, s))
            throw std::runtime_error("step CSV: malformed row '" + line + "'");
        jumps.push_back({std::stod(t), std::stod(s)});
    }
    return StepPath(std::move(jumps));
}

void write_grid_csv(std::ostream& os, const GridPath& p) {
    os << p.m << '\n';
    os.precision(17);
    for (double v : p.values) os << v << '\n';
}

GridPath read_grid_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("grid CSV: empty input");
    GridPath g;
    g.m = static_cast<std::size_t>(std::stoull(line));
    g.values.reserve(g.m + 1);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        g.values.push_back(std::stod(line));
    }
    if (g.values.size() != g.m + 1)
        throw std::runtime_error("grid CSV: value count does not match header");
    return g;
}

}  // namespace bigjump
