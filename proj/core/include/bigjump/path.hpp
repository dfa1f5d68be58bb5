#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bigjump {

struct Jump {
    double time = 0.0;  // in (0,1]
    double size = 0.0;  // nonzero, sign gives direction
};

// Finite signed step function on [0,1] vanishing at 0, cadlag:
// value(t) = sum of sizes with time <= t. Jump times are strictly
// increasing; simultaneous or zero-size jumps are rejected at construction.
class StepPath {
public:
    StepPath() = default;
    explicit StepPath(std::vector<Jump> jumps);

    const std::vector<Jump>& jumps() const { return jumps_; }
    bool empty() const { return jumps_.empty(); }
    std::size_t size() const { return jumps_.size(); }

    // Cumulative level after the first k jumps; levels(0) = 0.
    double level_after(std::size_t k) const;

    double eval(double t) const;
    double terminal() const { return level_after(jumps_.size()); }

    std::pair<int, int> jump_counts() const;

private:
    std::vector<Jump> jumps_;  // sorted by time
};

// Path sampled on the uniform grid {i/m : i = 0..m}; values are right limits.
struct GridPath {
    std::size_t m = 0;
    std::vector<double> values;  // m+1 entries

    static GridPath zeros(std::size_t m) {
        return GridPath{m, std::vector<double>(m + 1, 0.0)};
    }

    double time(std::size_t i) const { return static_cast<double>(i) / static_cast<double>(m); }
    double terminal() const { return values.back(); }
    double min_value() const;
    double max_value() const;
};

// Membership predicate over paths, with optional certificates: a bound-away
// radius from the lower jump-count classes, and the optimal jump counts.
struct TargetSet {
    std::string name;
    std::function<bool(const StepPath&)> step_member;
    std::function<bool(const GridPath&)> grid_member;
    std::optional<double> hint_delta;
    std::optional<std::pair<int, int>> hint_jk;

    bool contains(const StepPath& p) const {
        if (!step_member) throw std::logic_error("TargetSet '" + name + "': no step predicate");
        return step_member(p);
    }
    bool contains(const GridPath& p) const {
        if (!grid_member) throw std::logic_error("TargetSet '" + name + "': no grid predicate");
        return grid_member(p);
    }
};

double eval_step(const StepPath& p, double t);

std::pair<int, int> jump_counts(const StepPath& p);

// (alpha-1)*(up jumps) + (beta-1)*(down jumps); finite for every step path.
double path_rate_function(const StepPath& p, double alpha, double beta);

// Certified lower bound on the J1 distance from p to every step-function
// class with fewer than j up jumps or fewer than k down jumps: half the
// minimum of the j-th largest up-jump and the k-th largest down-jump
// (the absent side is ignored when j or k is 0; +infinity when both are 0).
// Precondition: p has at least j up jumps and k down jumps.
double bound_away_radius(const StepPath& p, int j, int k);

// CSV: rows "time,size" with a header line.
void write_step_csv(std::ostream& os, const StepPath& p);
StepPath read_step_csv(std::istream& is);

// CSV: first line is the grid size m, then m+1 value rows.
void write_grid_csv(std::ostream& os, const GridPath& p);
GridPath read_grid_csv(std::istream& is);

}  // namespace bigjump
