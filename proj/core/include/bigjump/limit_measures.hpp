#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bigjump/path.hpp"
#include "bigjump/rng.hpp"

namespace bigjump {

struct Estimate {
    double value = 0.0;
    double stderr_value = 0.0;
    std::int64_t n_samples = 0;
};

// Jump sizes and times of one proposal draw for the limit measures:
// up sizes are Pareto(alpha, delta_plus), down sizes Pareto(beta, delta_minus),
// all times iid uniform; coincident times are redrawn (a null event).
struct LimitConfig {
    std::vector<std::pair<double, double>> up;    // (size, time)
    std::vector<std::pair<double, double>> down;  // (size, time)

    StepPath step_path() const;
};

LimitConfig sample_limit_config(double alpha, double beta, int j, int k,
                                double delta_plus, double delta_minus,
                                RngStream& rng);

// Importance-sampling estimate of the limit constant of A on the class with
// exactly j up and k down jumps. Valid only when every member of that class
// inside A has all up jumps >= delta_plus and down jumps >= delta_minus; the
// Pareto proposal then covers the support and the weight is the constant
// delta_plus^(-j alpha) delta_minus^(-k beta) / (j! k!), the factorials
// accounting for the proposal being unordered while the limit measure lives
// on decreasing size vectors.
Estimate estimate_C(const TargetSet& A, double alpha, double beta, int j, int k,
                    double delta_plus, double delta_minus, std::int64_t n_samples,
                    RngStream& rng);

// Deterministic multi-threaded variant: batch b uses RngStream(seed, b).
Estimate estimate_C_parallel(const TargetSet& A, double alpha, double beta, int j,
                             int k, double delta_plus, double delta_minus,
                             std::int64_t n_samples, std::uint64_t seed,
                             int batch_count, unsigned threads = 0);

struct NoAcceptanceError : std::runtime_error {
    explicit NoAcceptanceError(std::int64_t tries)
        : std::runtime_error("conditional_sample: no acceptance in " +
                             std::to_string(tries) + " proposals"),
          tries_exhausted(tries) {}
    std::int64_t tries_exhausted;
};

// Rejection sampler for the conditional limit law on B: draws proposals until
// the induced step path lands in B. Throws NoAcceptanceError after max_tries.
StepPath conditional_sample(const TargetSet& B, double alpha, double beta, int j,
                            int k, double delta_plus, double delta_minus,
                            RngStream& rng, std::int64_t max_tries);

// Single-jump level-crossing constant with a jump cap:
// integral over u in [0,1] of max(0, (a + c u)^(-alpha) - b^(-alpha)).
// b may be +infinity; c = 0 degenerates to a^(-alpha) - b^(-alpha).
double C1_corridor_closed_form(double a, double b, double c, double alpha);

// One-up-one-down constant of the decay-map barrier event by nested adaptive
// quadrature (the innermost size integral is analytic):
// int_0^1 dv int_{a_minus}^inf beta y^(-beta-1) dy
//   int_v^1 [a_plus e^(kappa(1-u)) + y e^(-kappa(u-v))]^(-alpha) du.
double C11_ou_quadrature(double a_plus, double a_minus, double kappa, double alpha,
                         double beta, double tol);

}  // namespace bigjump
