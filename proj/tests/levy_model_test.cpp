#include <doctest.h>

#include <cmath>

#include "bigjump/levy_model.hpp"
#include "bigjump/rng.hpp"

using namespace bigjump;

namespace {

LevyModel pareto_model(double c, double alpha) {
    LevyModel m;
    m.pos = TailModel::pareto(c, alpha);
    return m;
}

// test-local integrator, independent of the library's quadrature: composite
// trapezoid with doubling until stable
template <class F>
double trapezoid_to_inf(F f, double a, double cut) {
    auto integrate = [&](std::size_t steps) {
        const double h = (cut - a) / static_cast<double>(steps);
        double s = 0.5 * (f(a) + f(cut));
        for (std::size_t i = 1; i < steps; ++i) s += f(a + h * static_cast<double>(i));
        return s * h;
    };
    double prev = integrate(1 << 10);
    for (std::size_t steps = 1 << 11; steps <= (1 << 22); steps <<= 1) {
        const double cur = integrate(steps);
        if (std::abs(cur - prev) < 1e-10) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace

TEST_CASE("tail: pure Pareto values") {
    const LevyModel m = pareto_model(1.0, 2.0);
    CHECK(tail(m, Side::pos, 10.0) == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(tail(m, Side::pos, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    // frozen below 1
    CHECK(tail(m, Side::pos, 0.25) == doctest::Approx(1.0).epsilon(1e-14));
    // absent side
    CHECK(tail(m, Side::neg, 3.0) == 0.0);
    CHECK_THROWS_AS(tail(m, Side::pos, 0.0), std::domain_error);
    CHECK_THROWS_AS(tail(m, Side::pos, -1.0), std::domain_error);
}

TEST_CASE("tail: log-power slowly varying factor") {
    LevyModel m;
    m.pos = TailModel::log_pareto(1.0, 2.0, 1.0);
    const double e = std::exp(1.0);
    // c * e^(-2) * (1 + ln e)^1 = 2 e^(-2)
    CHECK(tail(m, Side::pos, e) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("TailModel validation") {
    CHECK_THROWS_AS(TailModel::pareto(0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(TailModel::pareto(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TailModel::log_pareto(1.0, 2.0, -0.5), std::invalid_argument);
    // p > index would make the tail increase near 1
    CHECK_THROWS_AS(TailModel::log_pareto(1.0, 2.0, 2.5), std::invalid_argument);
}

TEST_CASE("inverse_tail: closed form for constant slow variation") {
    const LevyModel m = pareto_model(1.0, 2.0);
    CHECK(inverse_tail(m, Side::pos, 100, 4.0) == doctest::Approx(5.0).epsilon(1e-14));
    // above the frozen plateau the infimum is 0
    CHECK(inverse_tail(m, Side::pos, 100, 101.0) == 0.0);
    // at the plateau boundary it is 1
    CHECK(inverse_tail(m, Side::pos, 100, 100.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(inverse_tail(m, Side::pos, 100, 0.0), std::domain_error);
}

TEST_CASE("inverse_tail: bisection matches a brute-force grid inversion") {
    LevyModel m;
    m.pos = TailModel::log_pareto(1.0, 2.0, 1.0);
    const std::uint64_t n = 100;
    for (double y : {0.5, 2.0, 10.0, 60.0}) {
        const double q = inverse_tail(m, Side::pos, n, y);
        // grid oracle: first point on a 10^6-point grid where n tail < y
        const double s_max = 2.0 * q + 10.0;
        const double h = (s_max - 1.0) / 1e6;
        double grid_q = s_max;
        for (double s = 1.0; s <= s_max; s += h) {
            if (static_cast<double>(n) * tail(m, Side::pos, s) < y) {
                grid_q = s;
                break;
            }
        }
        CHECK(q == doctest::Approx(grid_q).epsilon(0.0).scale(1.0).epsilon(1e-5));
    }
}

TEST_CASE("inverse_tail: sandwich identity on random y") {
    LevyModel lp;
    lp.pos = TailModel::log_pareto(2.0, 2.5, 1.5);
    const LevyModel cm = pareto_model(1.5, 2.0);
    RngStream rng(42, 0);
    const double eta = 1e-9;
    const LevyModel* models[] = {&cm, &lp};
    for (const LevyModel* m : models) {
        const std::uint64_t n = 50;
        const double cap = static_cast<double>(n) * tail(*m, Side::pos, 1.0);
        for (int i = 0; i < 200; ++i) {
            const double y = rng.uniform() * cap;
            const double q = inverse_tail(*m, Side::pos, n, y);
            CHECK(static_cast<double>(n) * tail(*m, Side::pos, q + eta) < y + 1e-7);
            if (q - eta > 0.0) {
                CHECK(static_cast<double>(n) * tail(*m, Side::pos, q - eta) >= y - 1e-7);
            }
        }
    }
}

TEST_CASE("inverse_tail monotone nonincreasing in y; tail nonincreasing in x") {
    LevyModel m;
    m.pos = TailModel::log_pareto(1.0, 2.0, 2.0);
    RngStream rng(7, 0);
    double prev_x = 0.0;
    double prev_tail = tail(m, Side::pos, 1e-6);
    for (int i = 1; i <= 300; ++i) {
        const double x = static_cast<double>(i) * 0.37;
        if (x > prev_x) {
            const double t = tail(m, Side::pos, x);
            CHECK(t <= prev_tail + 1e-15);
            prev_tail = t;
            prev_x = x;
        }
    }
    double prev_q = inverse_tail(m, Side::pos, 100, 1e-3);
    for (double y = 2e-3; y < 50.0; y *= 1.7) {
        const double q = inverse_tail(m, Side::pos, 100, y);
        CHECK(q <= prev_q + 1e-9);
        prev_q = q;
    }
}

TEST_CASE("truncated_mean: closed forms and quadrature oracle") {
    CHECK(truncated_mean(pareto_model(1.0, 2.0), Side::pos).mu1 ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(truncated_mean(pareto_model(2.5, 3.0), Side::pos).mu1 ==
          doctest::Approx(1.5).epsilon(1e-12));
    CHECK(truncated_mean(pareto_model(1.0, 2.0), Side::pos).nu1 ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(truncated_mean(pareto_model(3.0, 2.0), Side::pos).nu1 ==
          doctest::Approx(3.0).epsilon(1e-14));

    // log-power case against the test-local trapezoid integrator, run on the
    // substituted integrand x = e^t so the rule converges
    LevyModel m;
    m.pos = TailModel::log_pareto(1.0, 2.0, 1.0);
    const auto tm = truncated_mean(m, Side::pos);
    const double integral = trapezoid_to_inf(
        [](double t) { return std::exp(-t) * (1.0 + t); }, 0.0, 45.0);
    CHECK(tm.mu1 == doctest::Approx(1.0 + integral).epsilon(1e-8));
    // exact: integral_0^inf e^(-t)(1+t) dt = 2
    CHECK(tm.mu1 == doctest::Approx(3.0).epsilon(1e-10));
    CHECK_THROWS_AS(truncated_mean(m, Side::neg), std::invalid_argument);
}

TEST_CASE("rate_cost: values and additivity") {
    CHECK(rate_cost(2.0, 3.0, 0, 0) == 0.0);
    CHECK(rate_cost(2.0, 3.0, 2, 2) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(rate_cost(1.5, 2.5, 3, 1) == doctest::Approx(3.0).epsilon(1e-14));
    RngStream rng(3, 0);
    for (int i = 0; i < 100; ++i) {
        const double alpha = 1.0 + rng.uniform() * 3.0;
        const double beta = 1.0 + rng.uniform() * 3.0;
        const int j1 = static_cast<int>(rng.uniform() * 5);
        const int k1 = static_cast<int>(rng.uniform() * 5);
        const int j2 = static_cast<int>(rng.uniform() * 5);
        const int k2 = static_cast<int>(rng.uniform() * 5);
        CHECK(rate_cost(alpha, beta, j1 + j2, k1 + k2) ==
              doctest::Approx(rate_cost(alpha, beta, j1, k1) +
                              rate_cost(alpha, beta, j2, k2)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(rate_cost(1.0, 2.0, 1, 1), std::invalid_argument);
}

TEST_CASE("small_jump_variance closed forms") {
    LevyModel m = pareto_model(1.0, 2.0);
    m.small_jump = SmallJumpPolicy::gaussian_approx;
    m.small_jump_eps = 0.1;
    // alpha = 2: integral is 2 c ln(1/eps)
    CHECK(small_jump_variance(m) == doctest::Approx(2.0 * std::log(10.0)).epsilon(1e-12));
    m.pos = TailModel::pareto(1.0, 3.0);
    // alpha = 3: 3 c (1 - eps^(-1)) / (-1) = 3 c (eps^(-1) - 1)
    CHECK(small_jump_variance(m) ==
          doctest::Approx(3.0 * (std::pow(0.1, -1.0) - 1.0)).epsilon(1e-12));
    m.small_jump = SmallJumpPolicy::none;
    CHECK(small_jump_variance(m) == 0.0);
}
