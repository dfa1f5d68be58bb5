#include "bigjump/levy_model.hpp"

#include <cmath>
#include <cstdint>

#include "bigjump/quadrature.hpp"

namespace bigjump {

double TailModel::eval(double x) const {
    if (!(x > 0.0)) throw std::domain_error("tail: x must be > 0");
    if (x < 1.0) return c;  // frozen at the x=1 value
    if (slow_var == SlowVar::constant) {
        return c * std::pow(x, -index);
    }
    return c * std::pow(x, -index) * std::pow(1.0 + std::log(x), log_exponent);
}

double tail(const LevyModel& model, Side side, double x) {
    if (!(x > 0.0)) throw std::domain_error("tail: x must be > 0");
    if (!model.has_side(side)) return 0.0;
    return model.side(side).eval(x);
}

double inverse_tail(const TailModel& t, std::uint64_t n, double y) {
    if (!(y > 0.0)) throw std::domain_error("inverse_tail: y must be > 0");
    const double nd = static_cast<double>(n);
    const double cap = nd * t.c;  // n * tail(0+), the frozen-plateau level
    if (y > cap) return 0.0;
    if (t.slow_var == SlowVar::constant) {
        return std::pow(nd * t.c / y, 1.0 / t.index);
    }
    // Strictly decreasing and continuous on [1, inf): bisect for the unique
    // root of n*tail(s) = y, which is also the infimum of {n*tail < y}.
    double lo = 1.0;
    double hi = 2.0;
    while (nd * t.eval(hi) >= y) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("inverse_tail: bracket overflow");
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (nd * t.eval(mid) < y) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double inverse_tail(const LevyModel& model, Side side, std::uint64_t n, double y) {
    if (!(y > 0.0)) throw std::domain_error("inverse_tail: y must be > 0");
    if (!model.has_side(side)) return 0.0;
    return inverse_tail(model.side(side), n, y);
}

TruncatedMean truncated_mean(const TailModel& t) {
    TruncatedMean out;
    out.nu1 = t.c;
    if (t.slow_var == SlowVar::constant) {
        out.mu1 = t.index / (t.index - 1.0);
        return out;
    }
    // integral_1^inf tail(x) dx in log coordinates: the integrand
    // c e^(-(index-1)s) (1+s)^p is smooth and decays exponentially
    const double rate = t.index - 1.0;
    const double cutoff = std::max(80.0 / rate, 10.0);
    const double integral = adaptive_simpson(
        [&](double s) {
            return t.c * std::exp(-rate * s) * std::pow(1.0 + s, t.log_exponent);
        },
        0.0, cutoff, 1e-13);
    out.mu1 = 1.0 + integral / out.nu1;
    return out;
}

TruncatedMean truncated_mean(const LevyModel& model, Side side) {
    if (!model.has_side(side))
        throw std::invalid_argument("truncated_mean: side absent");
    return truncated_mean(model.side(side));
}

double rate_cost(double alpha, double beta, int up_jumps, int down_jumps) {
    if (!(alpha > 1.0 && beta > 1.0))
        throw std::invalid_argument("rate_cost: indices must be > 1");
    if (up_jumps < 0 || down_jumps < 0)
        throw std::invalid_argument("rate_cost: jump counts must be >= 0");
    return (alpha - 1.0) * up_jumps + (beta - 1.0) * down_jumps;
}

namespace {

// integral over (eps,1] of x^2 * index * c * x^(-index-1) dx, the pure
// power-law density with the slowly varying factor frozen at c.
double one_sided_small_variance(const TailModel& t, double eps) {
    const double a = t.index;
    if (std::abs(a - 2.0) < 1e-12) {
        return 2.0 * t.c * std::log(1.0 / eps);
    }
    return a * t.c * (1.0 - std::pow(eps, 2.0 - a)) / (2.0 - a);
}

}  // namespace

double small_jump_variance(const LevyModel& model) {
    if (model.small_jump != SmallJumpPolicy::gaussian_approx) return 0.0;
    double v = one_sided_small_variance(model.pos, model.small_jump_eps);
    if (model.neg) v += one_sided_small_variance(*model.neg, model.small_jump_eps);
    return v;
}

}  // namespace bigjump
