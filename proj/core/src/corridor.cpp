#include "bigjump/corridor.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bigjump/levy_model.hpp"

namespace bigjump {

Corridor Corridor::make(std::vector<double> knots, std::vector<double> lower,
                        std::vector<double> upper) {
    Corridor c{std::move(knots), std::move(lower), std::move(upper)};
    c.validate();
    return c;
}

void Corridor::validate() const {
    if (knots.size() < 2 || lower.size() != knots.size() || upper.size() != knots.size())
        throw std::invalid_argument("Corridor: knots/levels size mismatch");
    if (knots.front() != 0.0 || knots.back() != 1.0)
        throw std::invalid_argument("Corridor: knots must span [0,1]");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i] > knots[i - 1]))
            throw std::invalid_argument("Corridor: knots must be strictly increasing");
    for (std::size_t i = 0; i < knots.size(); ++i)
        if (!(lower[i] < upper[i]))
            throw std::invalid_argument("Corridor: requires l < u everywhere");
    if (!(lower.front() < 0.0 && 0.0 < upper.front()))
        throw std::invalid_argument("Corridor: requires l(0) < 0 < u(0)");
}

namespace {

double interp(const std::vector<double>& knots, const std::vector<double>& vals,
              double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("Corridor: t outside [0,1]");
    const auto it = std::upper_bound(knots.begin(), knots.end(), t);
    if (it == knots.end()) return vals.back();
    const std::size_t hi = static_cast<std::size_t>(it - knots.begin());
    if (hi == 0) return vals.front();
    const std::size_t lo = hi - 1;
    const double w = (t - knots[lo]) / (knots[hi] - knots[lo]);
    return vals[lo] + w * (vals[hi] - vals[lo]);
}

}  // namespace

double Corridor::l(double t) const { return interp(knots, lower, t); }
double Corridor::u(double t) const { return interp(knots, upper, t); }

// closed membership, with a whisker of numerical slack so paths that touch
// the walls (the minimal-jump paths do, by construction) are not rejected
// over representation error
static constexpr double kWallSlack = 1e-9;

bool Corridor::contains(const StepPath& p) const {
    double seg_start = 0.0;
    double level = 0.0;
    const auto& jumps = p.jumps();
    for (std::size_t i = 0; i <= jumps.size(); ++i) {
        const double seg_end = i < jumps.size() ? jumps[i].time : 1.0;
        const auto window = feasible_interval(*this, seg_start, seg_end);
        if (!window || level < window->first - kWallSlack ||
            level > window->second + kWallSlack)
            return false;
        if (i < jumps.size()) {
            level += jumps[i].size;
            seg_start = seg_end;
        }
    }
    return true;
}

bool Corridor::contains(const GridPath& p) const {
    for (std::size_t i = 0; i <= p.m; ++i) {
        const double t = p.time(i);
        const double v = p.values[i];
        if (v < l(t) - kWallSlack || v > u(t) + kWallSlack) return false;
    }
    return true;
}

Corridor read_corridor_csv(std::istream& is) {
    std::vector<double> knots, lower, upper;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b, c;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') ||
            !std::getline(row, c))
            throw std::runtime_error("corridor CSV: malformed row '" + line + "'");
        try {
            knots.push_back(std::stod(a));
        } catch (const std::exception&) {
            continue;  // header row
        }
        lower.push_back(std::stod(b));
        upper.push_back(std::stod(c));
    }
    return Corridor::make(std::move(knots), std::move(lower), std::move(upper));
}

std::optional<std::pair<double, double>> feasible_interval(const Corridor& c,
                                                           double s, double t) {
    if (!(s <= t)) throw std::invalid_argument("feasible_interval: s > t");
    double max_l = std::max(c.l(s), c.l(t));
    double min_u = std::min(c.u(s), c.u(t));
    for (std::size_t i = 0; i < c.knots.size(); ++i) {
        if (c.knots[i] > s && c.knots[i] < t) {
            max_l = std::max(max_l, c.lower[i]);
            min_u = std::min(min_u, c.upper[i]);
        }
    }
    // Zero-width windows are legitimate (the running extrema pinch to a
    // point at breakpoints); emptiness is decided up to the wall slack so
    // representation error at interpolated times cannot flip it.
    if (max_l > min_u + kWallSlack) return std::nullopt;
    return std::make_pair(max_l, min_u);
}

namespace {

// First time in (from, 1] at which the zero level leaves [l(t), u(t)],
// i.e. l(t) > 0 or u(t) < 0 strictly; 1 if it never does.
double first_zero_exit(const Corridor& c) {
    double best = 1.0;
    for (std::size_t i = 0; i + 1 < c.knots.size(); ++i) {
        const double t0 = c.knots[i], t1 = c.knots[i + 1];
        const double l0 = c.lower[i], l1 = c.lower[i + 1];
        const double u0 = c.upper[i], u1 = c.upper[i + 1];
        double cand = std::numeric_limits<double>::infinity();
        if (l0 > 0.0) cand = t0;
        else if (l1 > 0.0) cand = t0 + (0.0 - l0) / (l1 - l0) * (t1 - t0);
        if (u0 < 0.0) cand = std::min(cand, t0);
        else if (u1 < 0.0) cand = std::min(cand, t0 + (u0 - 0.0) / (u0 - u1) * (t1 - t0));
        if (cand < best) return std::min(cand, 1.0);
    }
    return best;
}

struct WindowResult {
    double close_time = 1.0;  // first time the running window empties (1 if never)
    double sup_l = 0.0;       // running max of l over [start, stop]
    double inf_u = 0.0;       // running min of u over [start, stop]
    bool closed = false;
};

// Marches the running extrema of l and u from `start`, stopping at the first
// time their difference becomes strictly positive. That difference is
// nondecreasing, so on each linear piece the first crossing solves a linear
// equation.
WindowResult advance_window(const Corridor& c, double start) {
    WindowResult w;
    double max_l = c.l(start);
    double min_u = c.u(start);
    const std::size_t nseg = c.knots.size() - 1;
    for (std::size_t i = 0; i < nseg; ++i) {
        const double t1 = c.knots[i + 1];
        if (t1 <= start) continue;
        const double t0 = std::max(c.knots[i], start);
        const double l0 = c.l(t0), l1 = c.lower[i + 1];
        const double u0 = c.u(t0), u1 = c.upper[i + 1];
        // Sub-knots where the running extrema switch between "frozen" and
        // "tracking the line".
        double cuts[4] = {t0, t1, t1, t1};
        int ncuts = 2;
        if (l1 > l0 && l0 < max_l && l1 > max_l) {
            cuts[ncuts++] = t0 + (max_l - l0) / (l1 - l0) * (t1 - t0);
        }
        if (u1 < u0 && u0 > min_u && u1 < min_u) {
            cuts[ncuts++] = t0 + (u0 - min_u) / (u0 - u1) * (t1 - t0);
        }
        std::sort(cuts, cuts + ncuts);
        auto run_max_l = [&](double t) {
            const double lt = l0 + (t - t0) / (t1 - t0) * (l1 - l0);
            return std::max(max_l, std::max(l0, lt));
        };
        auto run_min_u = [&](double t) {
            const double ut = u0 + (t - t0) / (t1 - t0) * (u1 - u0);
            return std::min(min_u, std::min(u0, ut));
        };
        for (int s = 0; s + 1 < ncuts; ++s) {
            const double a = cuts[s], b = cuts[s + 1];
            if (!(b > a)) continue;
            const double da = run_max_l(a) - run_min_u(a);
            const double db = run_max_l(b) - run_min_u(b);
            if (db > 0.0) {
                // crossing inside [a,b]; da <= 0 by continuity of the march
                const double tc = da >= 0.0 ? a : a + (0.0 - da) / (db - da) * (b - a);
                w.close_time = tc;
                w.sup_l = run_max_l(tc);
                w.inf_u = run_min_u(tc);
                w.closed = true;
                return w;
            }
        }
        max_l = run_max_l(t1);
        min_u = run_min_u(t1);
    }
    w.close_time = 1.0;
    w.sup_l = max_l;
    w.inf_u = min_u;
    w.closed = false;
    return w;
}

}  // namespace

OptimalPathResult optimal_jump_path(const Corridor& c) {
    c.validate();
    OptimalPathResult res;

    const double t1 = first_zero_exit(c);
    if (t1 >= 1.0) {
        res.path = StepPath{};
        return res;  // the zero path is optimal
    }

    std::vector<double> breaks{t1};
    std::vector<double> sup_levels;
    double cursor = t1;
    while (true) {
        const WindowResult w = advance_window(c, cursor);
        if (!w.closed) {
            // final window reaches 1: any level in [sup_l, inf_u] works
            sup_levels.push_back(0.5 * (w.sup_l + w.inf_u));
            break;
        }
        if (!(w.close_time > cursor))
            throw std::runtime_error("optimal_jump_path: window failed to advance");
        sup_levels.push_back(w.sup_l);
        breaks.push_back(w.close_time);
        cursor = w.close_time;
    }

    std::vector<Jump> jumps;
    double lvl = 0.0;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        const double size = sup_levels[i] - lvl;
        if (size != 0.0) {
            jumps.push_back({breaks[i], size});
            res.breakpoints.push_back(breaks[i]);
            res.levels.push_back(sup_levels[i]);
            lvl = sup_levels[i];
        }
    }
    res.path = StepPath(std::move(jumps));
    const auto [up, down] = res.path.jump_counts();
    res.up_jumps = up;
    res.down_jumps = down;
    return res;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

struct BruteContext {
    const TargetSet* set;
    const std::vector<double>* levels;
    const std::vector<double>* times;
    std::vector<int> pattern;       // +1 up / -1 down per jump position
    std::vector<std::size_t> tidx;  // chosen time indices
    std::vector<Jump> jumps;        // scratch
    bool found = false;
};

// Depth-first over levels for fixed times and sign pattern.
void enumerate_levels(BruteContext& ctx, std::size_t pos, double prev_level) {
    if (ctx.found) return;
    const std::size_t m = ctx.pattern.size();
    if (pos == m) {
        StepPath p(ctx.jumps);
        if (ctx.set->contains(p)) ctx.found = true;
        return;
    }
    for (double h : *ctx.levels) {
        const double size = h - prev_level;
        if (ctx.pattern[pos] > 0 ? size <= 0.0 : size >= 0.0) continue;
        ctx.jumps[pos].size = size;
        enumerate_levels(ctx, pos + 1, h);
        if (ctx.found) return;
    }
}

void enumerate_times(BruteContext& ctx, std::size_t pos, std::size_t start) {
    if (ctx.found) return;
    const std::size_t m = ctx.pattern.size();
    if (pos == m) {
        for (std::size_t i = 0; i < m; ++i)
            ctx.jumps[i].time = (*ctx.times)[ctx.tidx[i]];
        enumerate_levels(ctx, 0, 0.0);
        return;
    }
    for (std::size_t i = start; i < ctx.times->size(); ++i) {
        ctx.tidx[pos] = i;
        enumerate_times(ctx, pos + 1, i + 1);
        if (ctx.found) return;
    }
}

bool class_feasible(const TargetSet& A, int j, int k,
                    const std::vector<double>& level_grid,
                    const std::vector<double>& time_grid) {
    const int m = j + k;
    if (m == 0) return A.contains(StepPath{});
    BruteContext ctx;
    ctx.set = &A;
    ctx.levels = &level_grid;
    ctx.times = &time_grid;
    ctx.tidx.assign(static_cast<std::size_t>(m), 0);
    ctx.jumps.assign(static_cast<std::size_t>(m), Jump{});
    // all placements of j up-signs among m positions
    std::vector<int> sel(static_cast<std::size_t>(m), -1);
    std::fill(sel.begin(), sel.begin() + j, +1);
    std::sort(sel.begin(), sel.end());
    do {
        ctx.pattern.assign(sel.begin(), sel.end());
        enumerate_times(ctx, 0, 0);
        if (ctx.found) return true;
    } while (std::next_permutation(sel.begin(), sel.end()));
    return false;
}

}  // namespace

namespace {

std::vector<std::pair<int, int>> cost_order(int max_j, int max_k, double alpha,
                                            double beta) {
    std::vector<std::pair<int, int>> order;
    for (int j = 0; j <= max_j; ++j)
        for (int k = 0; k <= max_k; ++k) order.emplace_back(j, k);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        const double ca = rate_cost(alpha, beta, a.first, a.second);
        const double cb = rate_cost(alpha, beta, b.first, b.second);
        if (ca != cb) return ca < cb;
        return a.first < b.first;
    });
    return order;
}

// Walks the cost-ordered classes, probing each with `feasible(j,k)`; the
// first cost level with a feasible class wins, ties collected.
template <class FeasibleFn>
BruteForceResult group_scan(int max_j, int max_k, double alpha, double beta,
                            FeasibleFn feasible) {
    const auto order = cost_order(max_j, max_k, alpha, beta);
    BruteForceResult out;
    std::size_t i = 0;
    while (i < order.size()) {
        const double cost = rate_cost(alpha, beta, order[i].first, order[i].second);
        std::size_t group_end = i;
        while (group_end < order.size() &&
               rate_cost(alpha, beta, order[group_end].first,
                         order[group_end].second) == cost)
            ++group_end;
        for (std::size_t g = i; g < group_end; ++g) {
            if (feasible(order[g].first, order[g].second)) {
                if (!out.best) out.best = order[g];
                out.argmin.push_back(order[g]);
            }
        }
        if (out.best) return out;
        i = group_end;
    }
    return out;
}

}  // namespace

BruteForceResult brute_force_min_jumps(const TargetSet& A, int max_j, int max_k,
                                       const std::vector<double>& level_grid,
                                       const std::vector<double>& time_grid,
                                       double alpha, double beta,
                                       std::uint64_t budget) {
    if (max_j < 0 || max_k < 0)
        throw std::invalid_argument("brute_force_min_jumps: negative caps");
    if (level_grid.empty() || time_grid.empty())
        throw std::invalid_argument("brute_force_min_jumps: empty grids");
    return group_scan(max_j, max_k, alpha, beta, [&](int j, int k) {
        const std::uint64_t m = static_cast<std::uint64_t>(j + k);
        std::uint64_t count = binomial(static_cast<std::uint64_t>(time_grid.size()), m) *
                              binomial(m, static_cast<std::uint64_t>(j));
        for (std::uint64_t i = 0; i < m; ++i) {
            if (count > budget) break;
            count *= static_cast<std::uint64_t>(level_grid.size());
        }
        if (count > budget)
            throw std::runtime_error("brute_force_min_jumps: budget exceeded");
        return class_feasible(A, j, k, level_grid, time_grid);
    });
}

namespace {

struct CorridorBrute {
    const Corridor* corridor;
    const std::vector<double>* levels;
    const std::vector<double>* times;
    std::vector<std::vector<int>> patterns;  // sign sequences for this class
    std::size_t m = 0;
    std::vector<double> chosen_times;
    std::vector<std::pair<double, double>> windows;  // per segment, incl. [0,t1]

    bool levels_dfs(const std::vector<int>& pattern, std::size_t pos,
                    double prev_level) const {
        if (pos == m) return true;
        const auto& [lo, hi] = windows[pos + 1];
        for (double h : *levels) {
            if (h < lo - kWallSlack || h > hi + kWallSlack) continue;
            if (pattern[pos] > 0 ? h <= prev_level : h >= prev_level) continue;
            if (levels_dfs(pattern, pos + 1, h)) return true;
        }
        return false;
    }

    bool times_dfs(std::size_t pos, std::size_t start) {
        if (pos == m) {
            windows.clear();
            double seg_start = 0.0;
            for (std::size_t i = 0; i <= m; ++i) {
                const double seg_end = i < m ? chosen_times[i] : 1.0;
                const auto w = feasible_interval(*corridor, seg_start, seg_end);
                if (!w) return false;
                windows.push_back(*w);
                seg_start = seg_end;
            }
            // the zero start level must be admissible on [0, t1]
            if (windows[0].first > kWallSlack || windows[0].second < -kWallSlack)
                return false;
            for (const auto& pattern : patterns) {
                if (levels_dfs(pattern, 0, 0.0)) return true;
            }
            return false;
        }
        for (std::size_t i = start; i < times->size(); ++i) {
            chosen_times[pos] = (*times)[i];
            if (times_dfs(pos + 1, i + 1)) return true;
        }
        return false;
    }
};

}  // namespace

BruteForceResult brute_force_min_jumps_corridor(const Corridor& c, int max_j,
                                                int max_k,
                                                const std::vector<double>& level_grid,
                                                const std::vector<double>& time_grid,
                                                double alpha, double beta) {
    c.validate();
    if (max_j < 0 || max_k < 0)
        throw std::invalid_argument("brute_force_min_jumps_corridor: negative caps");
    if (level_grid.empty() || time_grid.empty())
        throw std::invalid_argument("brute_force_min_jumps_corridor: empty grids");
    return group_scan(max_j, max_k, alpha, beta, [&](int j, int k) {
        const int m = j + k;
        if (m == 0) {
            const auto w = feasible_interval(c, 0.0, 1.0);
            return w && w->first <= 0.0 && 0.0 <= w->second;
        }
        CorridorBrute ctx;
        ctx.corridor = &c;
        ctx.levels = &level_grid;
        ctx.times = &time_grid;
        ctx.m = static_cast<std::size_t>(m);
        ctx.chosen_times.assign(ctx.m, 0.0);
        std::vector<int> sel(ctx.m, -1);
        std::fill(sel.begin(), sel.begin() + j, +1);
        std::sort(sel.begin(), sel.end());
        do {
            ctx.patterns.emplace_back(sel.begin(), sel.end());
        } while (std::next_permutation(sel.begin(), sel.end()));
        return ctx.times_dfs(0, 0);
    });
}

}  // namespace bigjump
