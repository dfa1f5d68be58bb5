#include "bigjump/j1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace bigjump {

namespace {

constexpr double kUnreached = std::numeric_limits<double>::infinity();

struct Flat {
    std::vector<double> times;   // jump times, increasing, all < 1
    std::vector<double> levels;  // levels[k] = value after k jumps; levels[0] = 0
    bool jump_at_one = false;    // a trailing jump at exactly t = 1 was split off
    double full_terminal = 0.0;  // terminal level including any jump at 1
};

Flat flatten(const StepPath& p) {
    Flat f;
    f.levels.push_back(0.0);
    double level = 0.0;
    for (const auto& j : p.jumps()) {
        level += j.size;
        if (j.time == 1.0) {
            // A jump at exactly 1 cannot be moved by any time change; it is
            // handled as a fixed terminal event outside the placement DP.
            f.jump_at_one = true;
        } else {
            f.times.push_back(j.time);
            f.levels.push_back(level);
        }
    }
    f.full_terminal = level;
    return f;
}

// Max level mismatch along the identity interleaving (ties advance jointly).
double walk_sup(const Flat& x, const Flat& y) {
    std::size_t a = 0, b = 0;
    const std::size_t p = x.times.size(), q = y.times.size();
    double worst = 0.0;
    while (true) {
        worst = std::max(worst, std::abs(x.levels[a] - y.levels[b]));
        if (a == p && b == q) break;
        const double tx = a < p ? x.times[a] : 2.0;
        const double ty = b < q ? y.times[b] : 2.0;
        if (tx < ty) ++a;
        else if (ty < tx) ++b;
        else { ++a; ++b; }
    }
    return worst;
}

// Decides whether a time change of deviation <= r can overlay x on y with all
// co-visited levels within r. State (a,b) = a jumps of x placed, b jumps of y
// passed; the DP stores the earliest achievable time of the last event, which
// suffices because later constraints only relax as that time decreases.
bool feasible(const Flat& x, const Flat& y, double r) {
    const std::size_t p = x.times.size(), q = y.times.size();
    std::vector<double> earliest((p + 1) * (q + 1), kUnreached);
    auto at = [&](std::size_t a, std::size_t b) -> double& {
        return earliest[a * (q + 1) + b];
    };
    auto level_ok = [&](std::size_t a, std::size_t b) {
        return std::abs(x.levels[a] - y.levels[b]) <= r;
    };
    if (!level_ok(0, 0)) return false;
    at(0, 0) = 0.0;
    for (std::size_t a = 0; a <= p; ++a) {
        for (std::size_t b = 0; b <= q; ++b) {
            const double last = at(a, b);
            if (last == kUnreached) continue;
            // place the next x jump strictly before the next y jump
            if (a < p && level_ok(a + 1, b)) {
                const double lo = std::max({last, x.times[a] - r, 0.0});
                const double hi = std::min({x.times[a] + r, b < q ? y.times[b] : 1.0, 1.0});
                if (lo <= hi) at(a + 1, b) = std::min(at(a + 1, b), lo);
            }
            // pass the next y jump
            if (b < q && level_ok(a, b + 1) && y.times[b] >= last) {
                at(a, b + 1) = std::min(at(a, b + 1), y.times[b]);
            }
            // co-locate the next jumps of both paths
            if (a < p && b < q && level_ok(a + 1, b + 1) &&
                std::abs(y.times[b] - x.times[a]) <= r && y.times[b] >= last) {
                at(a + 1, b + 1) = std::min(at(a + 1, b + 1), y.times[b]);
            }
        }
    }
    return at(p, q) != kUnreached;
}

bool lex_less(const StepPath& x, const StepPath& y) {
    const auto& a = x.jumps();
    const auto& b = y.jumps();
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].time != b[i].time) return a[i].time < b[i].time;
        if (a[i].size != b[i].size) return a[i].size < b[i].size;
    }
    return false;
}

}  // namespace

double sup_distance(const StepPath& x, const StepPath& y) {
    const Flat fx = flatten(x);
    const Flat fy = flatten(y);
    double d = walk_sup(fx, fy);
    if (fx.jump_at_one || fy.jump_at_one) {
        d = std::max(d, std::abs(fx.full_terminal - fy.full_terminal));
    }
    return d;
}

double j1_distance(const StepPath& x, const StepPath& y, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("j1_distance: tol must be > 0");
    if (lex_less(y, x)) return j1_distance(y, x, tol);

    const Flat fx = flatten(x);
    const Flat fy = flatten(y);
    double hi = sup_distance(x, y);
    if (hi == 0.0) return 0.0;

    // Fixed constraints that no time change can relax.
    double forced = 0.0;
    if (fx.jump_at_one || fy.jump_at_one) {
        forced = std::abs(fx.full_terminal - fy.full_terminal);
        if (fx.jump_at_one != fy.jump_at_one) {
            // the unmatched jump at 1 also exposes the pre-jump level
            const double pre = fx.jump_at_one ? fx.levels.back() : fy.levels.back();
            const double other = fx.jump_at_one ? fy.full_terminal : fx.full_terminal;
            forced = std::max(forced, std::abs(pre - other));
        }
    }
    double lo = forced;
    if (lo >= hi) return hi;

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(fx, fy, mid)) hi = mid;
        else lo = mid;
    }
    return hi;
}

}  // namespace bigjump
