#include "bigjump/limit_measures.hpp"

#include <algorithm>
#include <cmath>

#include "bigjump/parallel.hpp"
#include "bigjump/quadrature.hpp"

namespace bigjump {

namespace {

double log_factorial(int n) {
    double s = 0.0;
    for (int i = 2; i <= n; ++i) s += std::log(static_cast<double>(i));
    return s;
}

// delta_plus^(-j alpha) * delta_minus^(-k beta) / (j! k!)
double proposal_weight(double alpha, double beta, int j, int k, double delta_plus,
                       double delta_minus) {
    const double log_w = -j * alpha * std::log(delta_plus) -
                         k * beta * std::log(delta_minus) - log_factorial(j) -
                         log_factorial(k);
    return std::exp(log_w);
}

void check_params(double alpha, double beta, int j, int k, double delta_plus,
                  double delta_minus) {
    if (!(alpha > 1.0 && beta > 1.0))
        throw std::invalid_argument("limit measure: indices must be > 1");
    if (j < 0 || k < 0)
        throw std::invalid_argument("limit measure: jump counts must be >= 0");
    if (j > 0 && !(delta_plus > 0.0))
        throw std::invalid_argument("limit measure: delta_plus must be > 0");
    if (k > 0 && !(delta_minus > 0.0))
        throw std::invalid_argument("limit measure: delta_minus must be > 0");
}

bool times_distinct(const LimitConfig& cfg) {
    std::vector<double> t;
    for (const auto& [s, u] : cfg.up) t.push_back(u);
    for (const auto& [s, u] : cfg.down) t.push_back(u);
    std::sort(t.begin(), t.end());
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] == t[i + 1]) return false;
    return t.empty() || (t.front() > 0.0 && t.back() < 1.0);
}

}  // namespace

StepPath LimitConfig::step_path() const {
    std::vector<Jump> jumps;
    jumps.reserve(up.size() + down.size());
    for (const auto& [size, time] : up) jumps.push_back({time, size});
    for (const auto& [size, time] : down) jumps.push_back({time, -size});
    return StepPath(std::move(jumps));
}

LimitConfig sample_limit_config(double alpha, double beta, int j, int k,
                                double delta_plus, double delta_minus,
                                RngStream& rng) {
    check_params(alpha, beta, j, k, delta_plus, delta_minus);
    LimitConfig cfg;
    do {
        cfg.up.clear();
        cfg.down.clear();
        for (int i = 0; i < j; ++i)
            cfg.up.emplace_back(rng.pareto(alpha, delta_plus), rng.uniform_co());
        for (int i = 0; i < k; ++i)
            cfg.down.emplace_back(rng.pareto(beta, delta_minus), rng.uniform_co());
    } while (!times_distinct(cfg));
    return cfg;
}

Estimate estimate_C(const TargetSet& A, double alpha, double beta, int j, int k,
                    double delta_plus, double delta_minus, std::int64_t n_samples,
                    RngStream& rng) {
    check_params(alpha, beta, j, k, delta_plus, delta_minus);
    if (n_samples < 1) throw std::invalid_argument("estimate_C: n_samples must be >= 1");
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        const auto cfg = sample_limit_config(alpha, beta, j, k, delta_plus,
                                             delta_minus, rng);
        if (A.contains(cfg.step_path())) ++hits;
    }
    const double w = proposal_weight(alpha, beta, j, k, delta_plus, delta_minus);
    const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
    Estimate e;
    e.value = w * p;
    e.stderr_value = w * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
    e.n_samples = n_samples;
    return e;
}

Estimate estimate_C_parallel(const TargetSet& A, double alpha, double beta, int j,
                             int k, double delta_plus, double delta_minus,
                             std::int64_t n_samples, std::uint64_t seed,
                             int batch_count, unsigned threads) {
    check_params(alpha, beta, j, k, delta_plus, delta_minus);
    if (n_samples < 1) throw std::invalid_argument("estimate_C: n_samples must be >= 1");
    if (batch_count < 1) throw std::invalid_argument("estimate_C: batch_count must be >= 1");
    const std::int64_t base = n_samples / batch_count;
    const std::int64_t extra = n_samples % batch_count;
    auto counts = run_batches<std::int64_t>(
        seed, batch_count,
        [&](int b, RngStream& rng) {
            const std::int64_t quota = base + (b < extra ? 1 : 0);
            std::int64_t hits = 0;
            for (std::int64_t i = 0; i < quota; ++i) {
                const auto cfg = sample_limit_config(alpha, beta, j, k, delta_plus,
                                                     delta_minus, rng);
                if (A.contains(cfg.step_path())) ++hits;
            }
            return hits;
        },
        threads);
    std::int64_t hits = 0;
    for (auto h : counts) hits += h;
    const double w = proposal_weight(alpha, beta, j, k, delta_plus, delta_minus);
    const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
    Estimate e;
    e.value = w * p;
    e.stderr_value = w * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
    e.n_samples = n_samples;
    return e;
}

StepPath conditional_sample(const TargetSet& B, double alpha, double beta, int j,
                            int k, double delta_plus, double delta_minus,
                            RngStream& rng, std::int64_t max_tries) {
    check_params(alpha, beta, j, k, delta_plus, delta_minus);
    if (max_tries < 1)
        throw std::invalid_argument("conditional_sample: max_tries must be >= 1");
    for (std::int64_t t = 0; t < max_tries; ++t) {
        const auto cfg = sample_limit_config(alpha, beta, j, k, delta_plus,
                                             delta_minus, rng);
        StepPath path = cfg.step_path();
        if (B.contains(path)) return path;
    }
    throw NoAcceptanceError(max_tries);
}

double C1_corridor_closed_form(double a, double b, double c, double alpha) {
    if (!(a > 0.0 && b > a)) throw std::invalid_argument("C1: need 0 < a < b");
    if (!(c >= 0.0)) throw std::invalid_argument("C1: need c >= 0");
    if (!(alpha > 1.0)) throw std::invalid_argument("C1: need alpha > 1");
    const double cap = std::isinf(b) ? 0.0 : std::pow(b, -alpha);
    if (c == 0.0) return std::pow(a, -alpha) - cap;
    if (a + c <= b) {
        return (std::pow(a, 1.0 - alpha) - std::pow(a + c, 1.0 - alpha)) /
                   (c * (alpha - 1.0)) -
               cap;
    }
    // the jump window closes at u* = (b-a)/c < 1
    const double u_star = (b - a) / c;
    return (std::pow(a, 1.0 - alpha) - std::pow(b, 1.0 - alpha)) / (c * (alpha - 1.0)) -
           u_star * cap;
}

double C11_ou_quadrature(double a_plus, double a_minus, double kappa, double alpha,
                         double beta, double tol) {
    if (!(a_plus > 0.0 && a_minus > 0.0))
        throw std::invalid_argument("C11: barriers must be > 0");
    if (!(kappa >= 0.0)) throw std::invalid_argument("C11: kappa must be >= 0");
    if (!(alpha > 1.0 && beta > 1.0))
        throw std::invalid_argument("C11: indices must be > 1");
    if (!(tol > 0.0)) throw std::invalid_argument("C11: tol must be > 0");

    // Budgets: inner integrals run at a fraction of the requested tolerance so
    // the nesting error stays within tol overall (integration ranges are <= 1
    // after the tail substitution).
    const double tol_v = tol / 4.0;
    const double tol_y = tol_v / 4.0;
    const double tol_u = tol_y / 4.0;

    auto inner_u = [&](double v, double y) {
        return adaptive_simpson(
            [&](double u) {
                const double g = a_plus * std::exp(kappa * (1.0 - u)) +
                                 y * std::exp(-kappa * (u - v));
                return std::pow(g, -alpha);
            },
            v, 1.0, tol_u);
    };
    auto inner_y = [&](double v) {
        return adaptive_simpson_to_inf(
            [&](double y) {
                return beta * std::pow(y, -beta - 1.0) * inner_u(v, y);
            },
            a_minus, beta + 1.0, tol_y);
    };
    return adaptive_simpson([&](double v) { return inner_y(v); }, 0.0, 1.0, tol_v);
}

}  // namespace bigjump
