#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bigjump/path.hpp"

namespace bigjump {

// Piecewise-linear corridor l(t) < u(t) on [0,1], shared knots, with
// l(0) < 0 < u(0). Linearity makes the knot check sufficient for l < u
// everywhere.
struct Corridor {
    std::vector<double> knots;  // 0 = t_0 < ... < t_M = 1
    std::vector<double> lower;
    std::vector<double> upper;

    static Corridor make(std::vector<double> knots, std::vector<double> lower,
                         std::vector<double> upper);
    void validate() const;

    double l(double t) const;
    double u(double t) const;

    // True iff the step path stays inside [l(t), u(t)] for every t.
    // Exact: each constant segment is checked against the corridor extrema.
    bool contains(const StepPath& p) const;
    // Grid-resolution check at the nodes.
    bool contains(const GridPath& p) const;
};

// Read "knot,l,u" rows (header optional).
Corridor read_corridor_csv(std::istream& is);

// [max l, min u] over [s,t], or nullopt when that interval is empty.
// Extrema are exact from knot values and the segment endpoints.
std::optional<std::pair<double, double>> feasible_interval(const Corridor& c,
                                                           double s, double t);

struct OptimalPathResult {
    std::vector<double> breakpoints;  // jump times t_1 < ... < t_{n*-1}
    std::vector<double> levels;       // levels held after each jump
    StepPath path;
    int up_jumps = 0;
    int down_jumps = 0;
};

// Minimal-jump step path through the corridor: breakpoints are the times at
// which the running feasible window [max l, min u] since the previous
// breakpoint empties; the level held on each window is the window's max of l,
// except the last, which takes the midpoint of the final feasible window.
// No step function in the corridor has fewer up jumps or fewer down jumps.
OptimalPathResult optimal_jump_path(const Corridor& c);

struct BruteForceResult {
    // I(j,k)-minimal feasible pair, ties broken by smaller j; nullopt when
    // nothing was found at this resolution (not a proof of emptiness).
    std::optional<std::pair<int, int>> best;
    // every feasible pair at the minimal cost
    std::vector<std::pair<int, int>> argmin;
};

// Exhaustive search over step paths with jump times on time_grid and levels
// on level_grid, up to max_j up and max_k down jumps, in increasing
// (alpha-1)j + (beta-1)k order. Throws when the candidate count for a single
// (j,k) class exceeds the budget.
BruteForceResult brute_force_min_jumps(const TargetSet& A, int max_j, int max_k,
                                       const std::vector<double>& level_grid,
                                       const std::vector<double>& time_grid,
                                       double alpha, double beta,
                                       std::uint64_t budget = 4'000'000'000ULL);

// Same search specialized to corridor membership: for each time combination
// the per-segment feasible windows are computed once, so level candidates are
// O(1) and empty windows prune whole branches. Returns exactly what the
// generic search returns on corridor_set(c).
BruteForceResult brute_force_min_jumps_corridor(const Corridor& c, int max_j,
                                                int max_k,
                                                const std::vector<double>& level_grid,
                                                const std::vector<double>& time_grid,
                                                double alpha, double beta);

}  // namespace bigjump
