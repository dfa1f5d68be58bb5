#pragma once

#include <cstdint>
#include <vector>

#include "bigjump/levy_model.hpp"
#include "bigjump/path.hpp"
#include "bigjump/rng.hpp"

namespace bigjump {

// Two-sided Pareto-tail increment law for random walks:
// P(S1 >= x) = c_plus * x^(-alpha) and P(S1 <= -x) = c_minus * x^(-beta)
// exactly, for x >= x0; the remaining mass sits in a uniform block inside
// (-x0, x0) positioned so the increment mean is exactly zero.
struct IncrementModel {
    double c_plus = 1.0;
    double alpha = 2.0;
    double c_minus = 1.0;
    double beta = 2.0;
    double x0 = 2.0;

    // derived at validate()
    double p_plus = 0.0, p_minus = 0.0, p_mid = 0.0;
    double mid_center = 0.0, mid_halfwidth = 0.0;

    static IncrementModel make(double c_plus, double alpha, double c_minus,
                               double beta, double x0);
    void validate();

    double sample(RngStream& rng) const;
    // P(S1 >= x) resp. P(S1 <= -x); exact only for x >= x0.
    double upper_tail(double x) const;
    double lower_tail(double x) const;
};

// One sample of the scaled process: the grid path plus the exact large-jump
// skeleton (scaled sizes, signed, in draw order — not time-sorted).
struct ScaledLevySample {
    GridPath grid;
    std::vector<Jump> jumps;

    StepPath step_path() const { return StepPath(jumps); }
    double max_up_jump() const;
};

// Jumps of one side above the cutoff, scaled by 1/n: sizes are the inverse
// tail at the running exponential sums, times are iid uniform; the count is
// Poisson(n * tail(1)). Sizes are negative when side == neg.
StepPath sample_large_jumps(const LevyModel& model, Side side, std::uint64_t n,
                            RngStream& rng);

// Scaled process on {i/m}: large jumps of both sides (snapped to the covering
// grid cell, tracked exactly in .jumps), minus the truncated-mean centering
// (+ its mirror for the negative side), plus drift * t, plus a Gaussian part
// for the Brownian coefficient and, under the gaussian_approx policy, the
// sub-cutoff jump variance. The sample mean of the terminal value is drift.
// LevySampler precomputes the centering slope and variance rate once.
class LevySampler {
public:
    LevySampler(LevyModel model, std::uint64_t n, std::size_t m_grid);

    ScaledLevySample operator()(RngStream& rng) const;

    const LevyModel& model() const { return model_; }
    std::uint64_t n() const { return n_; }
    std::size_t m_grid() const { return m_; }
    double centering_slope() const { return slope_; }

private:
    LevyModel model_;
    std::uint64_t n_;
    std::size_t m_;
    double slope_;
    double var_rate_;
};

ScaledLevySample sample_scaled_levy_sample(const LevyModel& model, std::uint64_t n,
                                           std::size_t m_grid, RngStream& rng);
GridPath sample_scaled_levy(const LevyModel& model, std::uint64_t n,
                            std::size_t m_grid, RngStream& rng);

inline std::size_t default_grid(std::uint64_t n) {
    return static_cast<std::size_t>(n < 1000 ? 1000 : n);
}

// Scaled random walk S_[nt]/n on the grid {i/n}.
GridPath sample_scaled_rw(const IncrementModel& inc, std::uint64_t n, RngStream& rng);

// The walk run at an independent unit-rate Poisson clock: S_N(nt)/n on {i/n}.
GridPath subordinated_walk(const IncrementModel& inc, std::uint64_t n, RngStream& rng);

// Linear-decay map xi(t) - kappa e^(-kappa t) int_0^t e^(kappa s) xi(s) ds.
// Step-path overload is exact at the grid nodes; grid overload uses the
// trapezoid rule for the integral.
GridPath apply_ou(const StepPath& p, double kappa, std::size_t m_grid);
GridPath apply_ou(const GridPath& p, double kappa);

struct OuExtrema {
    double min = 0.0;       // exact infimum over [0,1]
    double terminal = 0.0;  // exact value at t = 1
};

// Exact extrema of the decay map of a step path: between jumps the image
// decays geometrically toward 0, so segment extremes sit at segment ends.
OuExtrema ou_extrema(const StepPath& p, double kappa);

}  // namespace bigjump
