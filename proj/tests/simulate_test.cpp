#include <doctest.h>

#include <cmath>

#include "bigjump/experiments.hpp"
#include "bigjump/simulate.hpp"

using namespace bigjump;

namespace {

LevyModel one_sided(double c, double alpha) {
    LevyModel m;
    m.pos = TailModel::pareto(c, alpha);
    return m;
}

LevyModel vanishing_model() {
    // c -> 0 limit: no mass above the cutoff
    return one_sided(1e-300, 2.0);
}

}  // namespace

TEST_CASE("sample_large_jumps: vanishing tail gives the empty path") {
    RngStream rng(1, 0);
    CHECK(sample_large_jumps(vanishing_model(), Side::pos, 100, rng).empty());
    // absent side
    CHECK(sample_large_jumps(one_sided(1.0, 2.0), Side::neg, 100, rng).empty());
}

TEST_CASE("sample_large_jumps: count is Poisson(n nu1)") {
    const LevyModel m = one_sided(1.0, 2.0);
    const std::uint64_t n = 100;
    const int runs = 100000;
    double total = 0.0;
    RngStream rng(2, 0);
    for (int i = 0; i < runs; ++i)
        total += static_cast<double>(sample_large_jumps(m, Side::pos, n, rng).size());
    const double mean = total / runs;
    const double sigma = std::sqrt(100.0 / runs);
    CHECK(std::abs(mean - 100.0) < 3.0 * sigma);
}

TEST_CASE("sample_large_jumps: law of the largest scaled jump") {
    // P(largest scaled jump >= x) = 1 - exp(-n tail(n x))
    const LevyModel m = one_sided(1.0, 2.0);
    const std::uint64_t n = 100;
    const int runs = 100000;
    const double x = 0.5;
    const double expect = 1.0 - std::exp(-100.0 * tail(m, Side::pos, 50.0));
    CHECK(expect == doctest::Approx(0.03921056084767682).epsilon(1e-12));
    int hits = 0;
    RngStream rng(3, 0);
    for (int i = 0; i < runs; ++i) {
        const StepPath p = sample_large_jumps(m, Side::pos, n, rng);
        double biggest = 0.0;
        for (const auto& j : p.jumps()) biggest = std::max(biggest, j.size);
        if (biggest >= x) ++hits;
    }
    const double freq = static_cast<double>(hits) / runs;
    const double sigma = std::sqrt(expect * (1.0 - expect) / runs);
    CHECK(std::abs(freq - expect) < 3.0 * sigma);
}

TEST_CASE("sample_large_jumps: negative side carries negative sizes") {
    LevyModel m = one_sided(1.0, 2.0);
    m.neg = TailModel::pareto(1.0, 2.0);
    RngStream rng(4, 0);
    const StepPath p = sample_large_jumps(m, Side::neg, 50, rng);
    for (const auto& j : p.jumps()) CHECK(j.size < 0.0);
}

TEST_CASE("sample_scaled_levy: all-zero model gives the zero path") {
    LevyModel m = vanishing_model();
    RngStream rng(5, 0);
    const GridPath g = sample_scaled_levy(m, 100, 200, rng);
    for (double v : g.values) CHECK(std::abs(v) < 1e-290);
}

TEST_CASE("sample_scaled_levy: exact centering at drift zero") {
    LevyModel m = one_sided(1.0, 2.0);
    m.neg = TailModel::pareto(0.5, 3.0);
    const std::uint64_t n = 50;
    const int runs = 100000;
    const LevySampler sampler(m, n, 64);
    RngStream rng(6, 0);
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < runs; ++i) {
        const double v = sampler(rng).grid.terminal();
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / runs;
    const double se = std::sqrt((sum_sq / runs - mean * mean) / runs);
    CHECK(std::abs(mean) < 3.0 * se);
}

TEST_CASE("sample_scaled_levy: terminal mean equals the drift") {
    LevyModel m = one_sided(1.0, 2.0);
    m.drift = 0.7;
    const LevySampler sampler(m, 50, 64);
    RngStream rng(7, 0);
    const int runs = 50000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < runs; ++i) {
        const double v = sampler(rng).grid.terminal();
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / runs;
    const double se = std::sqrt((sum_sq / runs - mean * mean) / runs);
    CHECK(std::abs(mean - 0.7) < 3.0 * se);
}

TEST_CASE("sample_scaled_levy: one-big-jump terminal benchmark") {
    // P(path(1) > 1) ~ n tail(n) for the centered one-sided model
    const LevyModel m = one_sided(1.0, 2.0);
    const std::uint64_t n = 100;
    const std::int64_t runs = 1000000;
    const Estimate e = mc_probability_parallel(m, n, 16, terminal_above(1.0), runs,
                                               99, 64);
    const double ratio = e.value / (100.0 * tail(m, Side::pos, 100.0));
    CHECK(ratio > 0.7);
    CHECK(ratio < 1.4);
}

TEST_CASE("sample_scaled_rw: degenerate increments give a near-zero path") {
    const IncrementModel inc = IncrementModel::make(0.0, 2.0, 0.0, 2.0, 1e-12);
    RngStream rng(8, 0);
    const GridPath g = sample_scaled_rw(inc, 100, rng);
    for (double v : g.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("sample_scaled_rw: symmetric increments have vanishing skewness") {
    // finite sixth moment (index 8) so the sample skewness is well-behaved
    const IncrementModel inc = IncrementModel::make(1.0, 8.0, 1.0, 8.0, 1.5);
    RngStream rng(9, 0);
    const int runs = 20000;
    std::vector<double> terminals;
    for (int i = 0; i < runs; ++i)
        terminals.push_back(sample_scaled_rw(inc, 50, rng).terminal());
    double mean = 0.0;
    for (double v : terminals) mean += v;
    mean /= runs;
    double m2 = 0.0, m3 = 0.0;
    for (double v : terminals) {
        m2 += (v - mean) * (v - mean);
        m3 += (v - mean) * (v - mean) * (v - mean);
    }
    m2 /= runs;
    m3 /= runs;
    const double skew = m3 / std::pow(m2, 1.5);
    CHECK(std::abs(skew) < 3.0 * std::sqrt(6.0 / runs));
}

TEST_CASE("sample_scaled_rw: one-big-jump benchmark") {
    // At tail index 2 the ratio approaches 1 slowly from above (the
    // fluctuation part has a log-divergent variance); n = 400 is inside the
    // +-40% band, and the excess must shrink with n.
    const IncrementModel inc = IncrementModel::make(1.0, 2.0, 1.0, 2.0, 2.0);
    const std::int64_t runs = 1000000;
    const Estimate e100 =
        mc_probability_parallel(inc, 100, terminal_above(1.0), runs, 100, 64);
    const Estimate e400 =
        mc_probability_parallel(inc, 400, terminal_above(1.0), runs, 101, 64);
    const double r100 = e100.value / (100.0 * inc.upper_tail(100.0));
    const double r400 = e400.value / (400.0 * inc.upper_tail(400.0));
    CHECK(r400 > 0.7);
    CHECK(r400 < 1.4);
    CHECK(r400 < r100);
}

TEST_CASE("IncrementModel: tails are exact beyond x0 and the mean is zero") {
    const IncrementModel inc = IncrementModel::make(1.0, 2.0, 0.5, 3.0, 2.0);
    CHECK(inc.upper_tail(10.0) == doctest::Approx(0.01));
    CHECK(inc.lower_tail(10.0) == doctest::Approx(0.0005));
    RngStream rng(10, 0);
    const int runs = 400000;
    double sum = 0.0, sum_sq = 0.0;
    int above = 0;
    for (int i = 0; i < runs; ++i) {
        const double v = inc.sample(rng);
        sum += v;
        sum_sq += v * v;
        if (v >= 4.0) ++above;
    }
    const double mean = sum / runs;
    // alpha = 2 has infinite variance, so guard the mean with a generous band
    CHECK(std::abs(mean) < 0.05);
    const double p4 = inc.upper_tail(4.0);
    const double freq = static_cast<double>(above) / runs;
    CHECK(std::abs(freq - p4) < 3.0 * std::sqrt(p4 * (1 - p4) / runs));
}

TEST_CASE("subordinated_walk: Poisson clock stays near the identity") {
    // P(sup_t |N(nt)/n - t| > 0.2) decays geometrically in n: a 0.2 deviation
    // is 2 clock standard deviations at n = 100 (measured rate ~ 0.09) but 4
    // at n = 400, where the rate drops below 1e-2.
    auto exceed_rate = [](std::uint64_t n, int runs, std::uint64_t seed) {
        RngStream rng(seed, 0);
        int exceed = 0;
        for (int r = 0; r < runs; ++r) {
            double t = 0.0;
            std::uint64_t k = 0;
            double worst = 0.0;
            while (true) {
                t += rng.exponential();
                if (t > static_cast<double>(n)) break;
                // deviation just before and at the k-th arrival
                worst = std::max(worst, std::abs(static_cast<double>(k) / n - t / n));
                ++k;
                worst = std::max(worst, std::abs(static_cast<double>(k) / n - t / n));
            }
            worst = std::max(worst, std::abs(static_cast<double>(k) / n - 1.0));
            if (worst > 0.2) ++exceed;
        }
        return static_cast<double>(exceed) / runs;
    };
    const double at_100 = exceed_rate(100, 10000, 11);
    const double at_400 = exceed_rate(400, 10000, 12);
    CHECK(at_400 < 1e-2);
    CHECK(at_400 < at_100);
}

TEST_CASE("subordinated_walk: zero increments give a zero path") {
    const IncrementModel inc = IncrementModel::make(0.0, 2.0, 0.0, 2.0, 1e-12);
    RngStream rng(12, 0);
    const GridPath g = subordinated_walk(inc, 50, rng);
    for (double v : g.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("apply_ou: kappa = 0 is the identity") {
    RngStream rng(13, 0);
    const GridPath g = sample_scaled_levy(one_sided(1.0, 2.0), 20, 100, rng);
    const GridPath h = apply_ou(g, 0.0);
    for (std::size_t i = 0; i <= g.m; ++i)
        CHECK(h.values[i] == doctest::Approx(g.values[i]).epsilon(1e-12));
    const StepPath p({{0.5, 1.0}});
    const GridPath q = apply_ou(p, 0.0, 100);
    CHECK(q.values[49] == 0.0);
    CHECK(q.values[50] == 1.0);
    CHECK(q.terminal() == 1.0);
}

TEST_CASE("apply_ou: single jump decays exponentially") {
    const StepPath p({{0.5, 1.0}});
    const GridPath g = apply_ou(p, 1.0, 1000);
    CHECK(g.terminal() == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    const OuExtrema e = ou_extrema(p, 1.0);
    CHECK(e.terminal == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(e.min == 0.0);
}

TEST_CASE("apply_ou: trapezoid grid evaluation tracks the exact formula") {
    RngStream rng(14, 0);
    const std::size_t m = 10000;
    for (int trial = 0; trial < 20; ++trial) {
        const double t1 = 0.1 + 0.4 * rng.uniform_co();
        const double t2 = 0.55 + 0.4 * rng.uniform_co();
        const double s1 = (rng.uniform() - 0.5) * 4.0;
        double s2 = (rng.uniform() - 0.5) * 4.0;
        if (s2 == 0.0) s2 = 1.0;
        const StepPath p({{t1, s1 == 0.0 ? 1.0 : s1}, {t2, s2}});
        // grid path of the step function, exact at the nodes
        GridPath g = GridPath::zeros(m);
        for (std::size_t i = 0; i <= m; ++i) g.values[i] = p.eval(g.time(i));
        const GridPath via_grid = apply_ou(g, 1.0);
        const GridPath exact = apply_ou(p, 1.0, m);
        double worst = 0.0;
        for (std::size_t i = 0; i <= m; ++i)
            worst = std::max(worst, std::abs(via_grid.values[i] - exact.values[i]));
        CHECK(worst <= 1e-3);
    }
}

TEST_CASE("ou_extrema matches a fine grid scan") {
    RngStream rng(15, 0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Jump> jumps;
        double t = 0.0;
        for (int i = 0; i < 3; ++i) {
            t += 0.05 + 0.25 * rng.uniform_co();
            if (t >= 1.0) break;
            jumps.push_back({t, (rng.uniform() - 0.5) * 4.0});
        }
        if (jumps.empty()) continue;
        for (auto& j : jumps)
            if (j.size == 0.0) j.size = 0.5;
        const StepPath p(jumps);
        const double kappa = 2.0 * rng.uniform();
        const OuExtrema e = ou_extrema(p, kappa);
        const GridPath g = apply_ou(p, kappa, 20000);
        CHECK(e.min <= g.min_value() + 1e-9);
        CHECK(e.min >= g.min_value() - 1e-3);
        CHECK(e.terminal == doctest::Approx(g.terminal()).epsilon(1e-9));
    }
}

TEST_CASE("determinism: identical stream, identical path bits") {
    LevyModel m = one_sided(1.0, 2.0);
    m.neg = TailModel::pareto(1.0, 2.5);
    m.sigma = 0.3;
    RngStream a(21, 5), b(21, 5), c(21, 6);
    const GridPath ga = sample_scaled_levy(m, 40, 128, a);
    const GridPath gb = sample_scaled_levy(m, 40, 128, b);
    const GridPath gc = sample_scaled_levy(m, 40, 128, c);
    CHECK(ga.values == gb.values);
    CHECK(ga.values != gc.values);
}
