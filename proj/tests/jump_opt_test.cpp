#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bigjump/corridor.hpp"
#include "bigjump/experiments.hpp"
#include "support/corridor_gen.hpp"

using namespace bigjump;

namespace {

Corridor flat_corridor() {
    return Corridor::make({0.0, 1.0}, {-1.0, -1.0}, {1.0, 1.0});
}

// l: -0.1 until 0.4, ramps to 1 at 0.5, stays 1; u constant 2
Corridor one_up_corridor() {
    return Corridor::make({0.0, 0.4, 0.5, 1.0}, {-0.1, -0.1, 1.0, 1.0},
                          {2.0, 2.0, 2.0, 2.0});
}

// as above, l ramps back down on [0.6, 0.7]; u ramps to 0 on [0.8, 0.9]
Corridor up_down_corridor() {
    return Corridor::make({0.0, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0},
                          {-0.1, -0.1, 1.0, 1.0, -0.1, -0.1, -0.1, -0.1},
                          {2.0, 2.0, 2.0, 2.0, 2.0, 2.0, 0.0, 0.0});
}

std::vector<double> oracle_levels() { return testsupport::oracle_level_grid(); }
std::vector<double> oracle_times() { return testsupport::oracle_time_grid(); }

}  // namespace

TEST_CASE("Corridor validation and interpolation") {
    CHECK_THROWS_AS(Corridor::make({0.0, 1.0}, {0.1, -1.0}, {1.0, 1.0}),
                    std::invalid_argument);  // l(0) >= 0
    CHECK_THROWS_AS(Corridor::make({0.0, 1.0}, {-1.0, 1.5}, {1.0, 1.0}),
                    std::invalid_argument);  // l >= u at a knot
    CHECK_THROWS_AS(Corridor::make({0.0, 0.5}, {-1.0, -1.0}, {1.0, 1.0}),
                    std::invalid_argument);  // knots must end at 1
    const Corridor c = one_up_corridor();
    CHECK(c.l(0.45) == doctest::Approx(0.45));
    CHECK(c.u(0.45) == doctest::Approx(2.0));
}

TEST_CASE("corridor CSV") {
    std::stringstream ss("knot,l,u\n0,-1,1\n0.5,-0.5,0.5\n1,-1,2\n");
    const Corridor c = read_corridor_csv(ss);
    CHECK(c.knots.size() == 3);
    CHECK(c.l(0.5) == doctest::Approx(-0.5));
    CHECK(c.u(1.0) == doctest::Approx(2.0));
}

TEST_CASE("feasible_interval") {
    const Corridor flat = flat_corridor();
    const auto full = feasible_interval(flat, 0.0, 1.0);
    REQUIRE(full.has_value());
    CHECK(full->first == doctest::Approx(-1.0));
    CHECK(full->second == doctest::Approx(1.0));

    const Corridor c = one_up_corridor();
    const auto w = feasible_interval(c, 0.0, 0.5);
    REQUIRE(w.has_value());
    CHECK(w->first == doctest::Approx(1.0));   // max of l on [0, 0.5]
    CHECK(w->second == doctest::Approx(2.0));  // min of u

    // crossing case: the l peak at 0.4 exceeds the u value at 1, so the
    // running window over [0.2, 1] is empty even though l < u pointwise
    const Corridor dip = Corridor::make({0.0, 0.4, 0.6, 1.0},
                                        {-1.0, 1.0, -1.0, -1.0},
                                        {2.0, 2.0, 2.0, 0.5});
    CHECK(!feasible_interval(dip, 0.2, 1.0).has_value());
    CHECK(feasible_interval(dip, 0.5, 1.0).has_value());
    CHECK_THROWS_AS(feasible_interval(dip, 0.8, 0.2), std::invalid_argument);
}

TEST_CASE("optimal_jump_path: flat corridor needs no jumps") {
    const OptimalPathResult r = optimal_jump_path(flat_corridor());
    CHECK(r.up_jumps == 0);
    CHECK(r.down_jumps == 0);
    CHECK(r.path.empty());
    CHECK(r.breakpoints.empty());
}

TEST_CASE("optimal_jump_path: single forced up jump") {
    const OptimalPathResult r = optimal_jump_path(one_up_corridor());
    CHECK(r.up_jumps == 1);
    CHECK(r.down_jumps == 0);
    REQUIRE(r.breakpoints.size() == 1);
    // zero level exits where the ramp crosses 0: 0.4 + 0.1/11
    CHECK(r.breakpoints[0] == doctest::Approx(0.4 + 0.1 / 11.0).epsilon(1e-12));
    CHECK(r.levels[0] >= 1.0);
    CHECK(r.levels[0] <= 2.0);
}

TEST_CASE("optimal_jump_path: one up and one down") {
    const OptimalPathResult r = optimal_jump_path(up_down_corridor());
    CHECK(r.up_jumps == 1);
    CHECK(r.down_jumps == 1);
    REQUIRE(r.breakpoints.size() == 2);
    // running min of u crosses the running max of l (1.0) at 0.85
    CHECK(r.breakpoints[1] == doctest::Approx(0.85).epsilon(1e-12));
    CHECK(r.levels[1] == doctest::Approx(-0.05).epsilon(1e-12));
}

TEST_CASE("optimal_jump_path: the result lies inside the corridor") {
    RngStream rng(31, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const Corridor c = trial % 2 == 0 ? testsupport::random_free_corridor(rng)
                                          : testsupport::random_grid_corridor(rng);
        const OptimalPathResult r = optimal_jump_path(c);
        CHECK(c.contains(r.path));
        for (int i = 0; i <= 10000; ++i) {
            const double t = i / 10000.0;
            const double v = r.path.eval(t);
            CHECK(v >= c.l(t) - 1e-9);
            CHECK(v <= c.u(t) + 1e-9);
        }
        // consecutive levels differ (all jump sizes are nonzero by StepPath
        // construction); counts are consistent
        const auto [up, down] = r.path.jump_counts();
        CHECK(up == r.up_jumps);
        CHECK(down == r.down_jumps);
    }
}

TEST_CASE("brute_force_min_jumps: trivial and pinned sets") {
    const auto all = brute_force_min_jumps(all_paths_set(), 2, 2, oracle_levels(),
                                           oracle_times(), 2.0, 2.0);
    REQUIRE(all.best.has_value());
    CHECK(*all.best == std::pair<int, int>{0, 0});

    // the two-sided barrier set has both one-up and one-down optima;
    // the tie-break takes the smaller up-count
    const auto mo = brute_force_min_jumps(multiple_optima_set(), 2, 2,
                                          oracle_levels(), oracle_times(), 2.0, 2.0);
    REQUIRE(mo.best.has_value());
    CHECK(*mo.best == std::pair<int, int>{0, 1});
    REQUIRE(mo.argmin.size() == 2);
    CHECK(mo.argmin[0] == std::pair<int, int>{0, 1});
    CHECK(mo.argmin[1] == std::pair<int, int>{1, 0});

    const auto ud = brute_force_min_jumps(corridor_set(up_down_corridor()), 2, 2,
                                          oracle_levels(), oracle_times(), 2.0, 2.0);
    REQUIRE(ud.best.has_value());
    CHECK(*ud.best == std::pair<int, int>{1, 1});

    CHECK_THROWS_AS(brute_force_min_jumps(empty_set(), 2, 2, oracle_levels(),
                                          oracle_times(), 2.0, 2.0, 10),
                    std::runtime_error);  // budget guard
}

TEST_CASE("corridor-specialized brute force matches the generic search") {
    const auto levels = oracle_levels();
    const auto times = oracle_times();
    for (const Corridor& c : {flat_corridor(), one_up_corridor(), up_down_corridor()}) {
        const auto generic =
            brute_force_min_jumps(corridor_set(c), 1, 1, levels, times, 2.0, 2.0);
        const auto fast =
            brute_force_min_jumps_corridor(c, 1, 1, levels, times, 2.0, 2.0);
        CHECK(generic.best == fast.best);
        CHECK(generic.argmin == fast.argmin);
    }
}

TEST_CASE("optimizer vs brute force on randomized corridors") {
    RngStream rng(32, 0);
    const auto levels = oracle_levels();
    const auto times = oracle_times();
    for (int trial = 0; trial < 25; ++trial) {
        const Corridor c = testsupport::random_grid_corridor(rng);
        const OptimalPathResult opt = optimal_jump_path(c);
        const auto bf = brute_force_min_jumps_corridor(c, 3, 3, levels, times, 2.0, 2.0);
        REQUIRE(bf.best.has_value());
        CHECK(bf.best->first == opt.up_jumps);
        CHECK(bf.best->second == opt.down_jumps);
    }
}
