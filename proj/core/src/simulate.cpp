#include "bigjump/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bigjump {

IncrementModel IncrementModel::make(double c_plus, double alpha, double c_minus,
                                    double beta, double x0) {
    IncrementModel m;
    m.c_plus = c_plus;
    m.alpha = alpha;
    m.c_minus = c_minus;
    m.beta = beta;
    m.x0 = x0;
    m.validate();
    return m;
}

void IncrementModel::validate() {
    if (!(alpha > 1.0 && beta > 1.0))
        throw std::invalid_argument("IncrementModel: tail indices must be > 1");
    if (!(c_plus >= 0.0 && c_minus >= 0.0))
        throw std::invalid_argument("IncrementModel: tail scales must be >= 0");
    if (!(x0 > 0.0)) throw std::invalid_argument("IncrementModel: x0 must be > 0");
    p_plus = c_plus * std::pow(x0, -alpha);
    p_minus = c_minus * std::pow(x0, -beta);
    p_mid = 1.0 - p_plus - p_minus;
    if (!(p_mid > 0.0))
        throw std::invalid_argument("IncrementModel: tail mass at x0 is >= 1");
    const double mean_plus = alpha * c_plus * std::pow(x0, 1.0 - alpha) / (alpha - 1.0);
    const double mean_minus = beta * c_minus * std::pow(x0, 1.0 - beta) / (beta - 1.0);
    mid_center = (mean_minus - mean_plus) / p_mid;
    if (!(std::abs(mid_center) < x0))
        throw std::invalid_argument(
            "IncrementModel: cannot zero the mean inside (-x0, x0)");
    mid_halfwidth = 0.9 * (x0 - std::abs(mid_center));
}

double IncrementModel::sample(RngStream& rng) const {
    const double branch = rng.uniform_co();
    if (branch < p_plus) return rng.pareto(alpha, x0);
    if (branch < p_plus + p_minus) return -rng.pareto(beta, x0);
    return mid_center + mid_halfwidth * (2.0 * rng.uniform_co() - 1.0);
}

double IncrementModel::upper_tail(double x) const {
    if (!(x >= x0)) throw std::domain_error("IncrementModel::upper_tail: x < x0");
    return c_plus * std::pow(x, -alpha);
}

double IncrementModel::lower_tail(double x) const {
    if (!(x >= x0)) throw std::domain_error("IncrementModel::lower_tail: x < x0");
    return c_minus * std::pow(x, -beta);
}

double ScaledLevySample::max_up_jump() const {
    double best = 0.0;
    for (const auto& j : jumps) best = std::max(best, j.size);
    return best;
}

namespace {

// Streams the jump representation for one side into out; returns nothing.
// Scaled sizes carry the sign of the side.
void stream_large_jumps(const TailModel& t, double sign, std::uint64_t n,
                        RngStream& rng, std::vector<Jump>& out) {
    const double nd = static_cast<double>(n);
    double gamma = 0.0;
    while (true) {
        gamma += rng.exponential();
        const double mag = inverse_tail(t, n, gamma);
        if (mag < 1.0) break;
        out.push_back({rng.uniform(), sign * mag / nd});
    }
}

}  // namespace

StepPath sample_large_jumps(const LevyModel& model, Side side, std::uint64_t n,
                            RngStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_large_jumps: n must be >= 1");
    if (!model.has_side(side)) return StepPath{};
    std::vector<Jump> jumps;
    stream_large_jumps(model.side(side), side == Side::pos ? 1.0 : -1.0, n, rng, jumps);
    return StepPath(std::move(jumps));
}

LevySampler::LevySampler(LevyModel model, std::uint64_t n, std::size_t m_grid)
    : model_(std::move(model)), n_(n), m_(m_grid) {
    if (n_ < 1) throw std::invalid_argument("LevySampler: n must be >= 1");
    if (m_ < 1) throw std::invalid_argument("LevySampler: m_grid must be >= 1");
    model_.validate();
    slope_ = model_.drift;
    {
        const auto tm = truncated_mean(model_.pos);
        slope_ -= tm.mu1 * tm.nu1;
    }
    if (model_.neg) {
        const auto tm = truncated_mean(*model_.neg);
        slope_ += tm.mu1 * tm.nu1;
    }
    var_rate_ = model_.sigma * model_.sigma + small_jump_variance(model_);
}

ScaledLevySample LevySampler::operator()(RngStream& rng) const {
    const double nd = static_cast<double>(n_);
    const std::size_t m = m_;

    ScaledLevySample out;
    out.grid = GridPath::zeros(m);
    auto& v = out.grid.values;

    stream_large_jumps(model_.pos, 1.0, n_, rng, out.jumps);
    if (model_.neg) stream_large_jumps(*model_.neg, -1.0, n_, rng, out.jumps);

    // jump contributions, snapped to the covering grid cell
    for (const auto& j : out.jumps) {
        const std::size_t cell =
            static_cast<std::size_t>(std::ceil(j.time * static_cast<double>(m)));
        v[std::min(cell, m)] += j.size;
    }
    for (std::size_t i = 1; i <= m; ++i) v[i] += v[i - 1];

    if (slope_ != 0.0) {
        for (std::size_t i = 1; i <= m; ++i)
            v[i] += slope_ * (static_cast<double>(i) / static_cast<double>(m));
    }

    // Brownian part and the Gaussian stand-in for sub-cutoff jumps
    if (var_rate_ > 0.0) {
        const double step_sd = std::sqrt(var_rate_ / (nd * static_cast<double>(m)));
        double w = 0.0;
        for (std::size_t i = 1; i <= m; ++i) {
            w += step_sd * rng.normal();
            v[i] += w;
        }
    }
    return out;
}

ScaledLevySample sample_scaled_levy_sample(const LevyModel& model, std::uint64_t n,
                                           std::size_t m_grid, RngStream& rng) {
    return LevySampler(model, n, m_grid)(rng);
}

GridPath sample_scaled_levy(const LevyModel& model, std::uint64_t n,
                            std::size_t m_grid, RngStream& rng) {
    return sample_scaled_levy_sample(model, n, m_grid, rng).grid;
}

GridPath sample_scaled_rw(const IncrementModel& inc, std::uint64_t n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_scaled_rw: n must be >= 1");
    GridPath g = GridPath::zeros(static_cast<std::size_t>(n));
    const double nd = static_cast<double>(n);
    double sum = 0.0;
    for (std::uint64_t i = 1; i <= n; ++i) {
        sum += inc.sample(rng);
        g.values[i] = sum / nd;
    }
    return g;
}

GridPath subordinated_walk(const IncrementModel& inc, std::uint64_t n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("subordinated_walk: n must be >= 1");
    GridPath g = GridPath::zeros(static_cast<std::size_t>(n));
    const double nd = static_cast<double>(n);
    double sum = 0.0;
    for (std::uint64_t i = 1; i <= n; ++i) {
        const std::uint64_t arrivals = rng.poisson(1.0);
        for (std::uint64_t k = 0; k < arrivals; ++k) sum += inc.sample(rng);
        g.values[i] = sum / nd;
    }
    return g;
}

GridPath apply_ou(const StepPath& p, double kappa, std::size_t m_grid) {
    if (!(kappa >= 0.0)) throw std::invalid_argument("apply_ou: kappa must be >= 0");
    if (m_grid < 1) throw std::invalid_argument("apply_ou: m_grid must be >= 1");
    const std::size_t m = m_grid;
    GridPath g = GridPath::zeros(m);
    const double dt = 1.0 / static_cast<double>(m);
    const double decay = std::exp(-kappa * dt);
    const auto& jumps = p.jumps();
    std::size_t next = 0;
    double value = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        const double t = static_cast<double>(i) * dt;
        value *= decay;
        while (next < jumps.size() && jumps[next].time <= t) {
            value += jumps[next].size * std::exp(-kappa * (t - jumps[next].time));
            ++next;
        }
        g.values[i] = value;
    }
    return g;
}

GridPath apply_ou(const GridPath& p, double kappa) {
    if (!(kappa >= 0.0)) throw std::invalid_argument("apply_ou: kappa must be >= 0");
    const std::size_t m = p.m;
    GridPath g = GridPath::zeros(m);
    const double dt = 1.0 / static_cast<double>(m);
    const double decay = std::exp(-kappa * dt);
    double w = 0.0;  // e^(-kappa t_i) * int_0^{t_i} e^(kappa s) xi(s) ds
    g.values[0] = p.values[0];
    for (std::size_t i = 1; i <= m; ++i) {
        w = decay * (w + 0.5 * dt * p.values[i - 1]) + 0.5 * dt * p.values[i];
        g.values[i] = p.values[i] - kappa * w;
    }
    return g;
}

OuExtrema ou_extrema(const StepPath& p, double kappa) {
    if (!(kappa >= 0.0)) throw std::invalid_argument("ou_extrema: kappa must be >= 0");
    OuExtrema out;
    double value = 0.0;
    double low = 0.0;
    double prev_t = 0.0;
    for (const auto& j : p.jumps()) {
        const double before = value * std::exp(-kappa * (j.time - prev_t));
        low = std::min(low, std::min(value, before));  // monotone between jumps
        value = before + j.size;
        low = std::min(low, value);
        prev_t = j.time;
    }
    const double at_end = value * std::exp(-kappa * (1.0 - prev_t));
    low = std::min(low, std::min(value, at_end));
    out.min = low;
    out.terminal = at_end;
    return out;
}

}  // namespace bigjump
