#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

namespace bigjump {

enum class Side { pos, neg };

enum class SlowVar { constant, log_power };

// One regularly varying tail: tail(x) = c * x^(-index) * (1 + ln x)^p for
// x >= 1, frozen at tail(1) = c on (0,1). The log exponent p must satisfy
// 0 <= p <= index so the tail is nonincreasing on [1, infinity).
struct TailModel {
    double c = 1.0;
    double index = 2.0;
    SlowVar slow_var = SlowVar::constant;
    double log_exponent = 0.0;

    static TailModel pareto(double c, double index) {
        TailModel m{c, index, SlowVar::constant, 0.0};
        m.validate();
        return m;
    }

    static TailModel log_pareto(double c, double index, double p) {
        TailModel m{c, index, SlowVar::log_power, p};
        m.validate();
        return m;
    }

    void validate() const {
        if (!(c > 0.0)) throw std::invalid_argument("TailModel: scale c must be > 0");
        if (!(index > 1.0)) throw std::invalid_argument("TailModel: index must be > 1");
        if (slow_var == SlowVar::log_power) {
            if (!(log_exponent >= 0.0))
                throw std::invalid_argument("TailModel: log exponent must be >= 0");
            if (!(log_exponent <= index))
                throw std::invalid_argument(
                    "TailModel: log exponent must be <= index (tail would not be "
                    "nonincreasing)");
        }
    }

    double eval(double x) const;
};

enum class SmallJumpPolicy { none, gaussian_approx };

// Two-sided regularly varying jump-intensity model plus drift and Brownian
// coefficient. A missing negative tail makes the process spectrally positive.
struct LevyModel {
    TailModel pos;
    std::optional<TailModel> neg;
    double drift = 0.0;
    double sigma = 0.0;
    SmallJumpPolicy small_jump = SmallJumpPolicy::none;
    double small_jump_eps = 1.0;  // cutoff for the Gaussian approximation

    void validate() const {
        pos.validate();
        if (neg) neg->validate();
        if (!(sigma >= 0.0)) throw std::invalid_argument("LevyModel: sigma must be >= 0");
        if (small_jump == SmallJumpPolicy::gaussian_approx) {
            if (!(small_jump_eps > 0.0 && small_jump_eps <= 1.0))
                throw std::invalid_argument("LevyModel: small-jump eps must be in (0,1]");
        }
    }

    bool has_side(Side s) const { return s == Side::pos || neg.has_value(); }
    const TailModel& side(Side s) const {
        if (s == Side::pos) return pos;
        if (!neg) throw std::invalid_argument("LevyModel: negative side absent");
        return *neg;
    }
};

// Upper tail mass nu[x,inf) (side=pos) or nu(-inf,-x] (side=neg);
// 0 if that side is absent. x must be > 0.
double tail(const LevyModel& model, Side side, double x);

// Generalized inverse inf{s > 0 : n * tail(s) < y}, nonincreasing in y.
// Exact for constant slowly varying part, bisection to 1e-12 otherwise.
double inverse_tail(const LevyModel& model, Side side, std::uint64_t n, double y);
double inverse_tail(const TailModel& t, std::uint64_t n, double y);

struct TruncatedMean {
    double nu1 = 0.0;  // mass at or above 1
    double mu1 = 0.0;  // mean jump size conditioned on being >= 1
};

// nu1 = tail(1); mu1 = 1 + (1/nu1) * integral_1^inf tail(x) dx.
// For a constant slowly varying part this is index/(index-1) in closed form.
TruncatedMean truncated_mean(const LevyModel& model, Side side);
TruncatedMean truncated_mean(const TailModel& t);

// Jump-budget cost (alpha-1)*j + (beta-1)*k of a path with j upward and k
// downward jumps; additive across budgets.
double rate_cost(double alpha, double beta, int up_jumps, int down_jumps);

// Variance of the sub-cutoff jump part per unit time, integral over
// eps < |x| <= 1 of x^2 against the jump measure, both sides summed.
// The slowly varying factor is frozen at its x=1 value below 1.
double small_jump_variance(const LevyModel& model);

}  // namespace bigjump
