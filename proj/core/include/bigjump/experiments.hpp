#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bigjump/corridor.hpp"
#include "bigjump/levy_model.hpp"
#include "bigjump/limit_measures.hpp"
#include "bigjump/path.hpp"
#include "bigjump/simulate.hpp"

namespace bigjump {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Scenario {
    moderate_jumps,
    ou_barrier,
    multiple_optima,
    ldp_slope,
    corridor,
    subordination,
    simulate,
    estimate_c,
};

// Flat key = value config (a minimal TOML subset: scalars, quoted strings and
// one-level arrays; '#' comments). Unknown keys are hard errors.
struct ScenarioConfig {
    Scenario scenario = Scenario::multiple_optima;
    std::uint64_t seed = 1;
    std::int64_t samples_per_n = 10000;
    std::vector<std::uint64_t> n_list;
    std::string output_dir = ".";
    int batch_count = 64;
    unsigned threads = 0;       // 0 = hardware
    std::size_t m_grid = 0;     // 0 = default_grid(n)

    std::optional<LevyModel> levy;
    std::optional<IncrementModel> inc;

    // moderate_jumps
    double a = 0.0, b = 0.0, c = 0.0;
    // ou_barrier
    double kappa = 0.0, a_plus = 0.0, a_minus = 0.0;
    // ldp_slope / subordination
    std::string set_name = "terminal_above";
    double threshold = 1.0;
    // estimator cross-checks
    std::int64_t estimator_samples = 100000;
    // estimate-c parameters
    double est_alpha = 2.0, est_beta = 2.0;
    int est_j = 1, est_k = 0;
    double est_delta_plus = 1.0, est_delta_minus = 1.0;
    // corridor
    std::string corridor_csv;
    bool brute_check = false;

    // acceptance bands (engineering choices; live in the config, not in code)
    double band_lo = 0.7, band_hi = 1.4;
    double slope_lo = -1.35, slope_hi = -0.75;
    double ks_limit = 0.05;

    std::string source_path;  // where this config was read from, for reports
};

ScenarioConfig parse_config_text(const std::string& text, const std::string& origin);
ScenarioConfig parse_config_file(const std::string& path);

struct RatioRow {
    std::uint64_t n = 0;
    double p_hat = 0.0;
    double p_stderr = 0.0;
    double normalizer = 0.0;
    double ratio = 0.0;
};

struct Report {
    std::string scenario;
    std::uint64_t seed = 0;
    int batch_count = 0;
    std::vector<RatioRow> rows;
    double limit_constant = 0.0;
    std::string limit_provenance;  // closed_form | quadrature | estimator
    bool pass = false;
    std::map<std::string, double> metrics;       // scenario-specific numbers
    std::map<std::string, std::string> notes;    // warnings, flags
};

// Hit-fraction Monte Carlo of P(scaled path in A) with binomial stderr;
// membership is evaluated on the grid path. Deterministic in
// (seed, batch_count) regardless of thread count.
Estimate mc_probability(const LevyModel& model, std::uint64_t n, std::size_t m_grid,
                        const TargetSet& A, std::int64_t n_samples, RngStream& rng);
Estimate mc_probability(const IncrementModel& inc, std::uint64_t n, const TargetSet& A,
                        std::int64_t n_samples, RngStream& rng);
Estimate mc_probability_parallel(const LevyModel& model, std::uint64_t n,
                                 std::size_t m_grid, const TargetSet& A,
                                 std::int64_t n_samples, std::uint64_t seed,
                                 int batch_count, unsigned threads = 0);
Estimate mc_probability_parallel(const IncrementModel& inc, std::uint64_t n,
                                 const TargetSet& A, std::int64_t n_samples,
                                 std::uint64_t seed, int batch_count,
                                 unsigned threads = 0);

// --- target-set catalog -----------------------------------------------------

TargetSet all_paths_set();
TargetSet empty_set();
// open set {xi : xi(1) > a}
TargetSet terminal_above(double a);
// {xi : |xi(t)| >= t - 1/2 for all t}
TargetSet multiple_optima_set();
// {xi : sup_t (xi(t) - c t) >= a, every upward jump <= b}; the grid predicate
// reads cell increments as jump sizes, exact-jump checks live in the runner.
TargetSet moderate_jumps_set(double a, double b, double c);
// decay-map barrier event; step paths use the exact extrema, grid paths the
// trapezoid map at their own resolution
TargetSet ou_barrier_set(double kappa, double a_plus, double a_minus);
// membership in the corridor band l(t) <= xi(t) <= u(t)
TargetSet corridor_set(Corridor c);

// --- scenario runners --------------------------------------------------------

Report run_moderate_jumps(const ScenarioConfig& cfg);
Report run_ou_barrier(const ScenarioConfig& cfg);
Report run_multiple_optima(const ScenarioConfig& cfg);
Report run_ldp_slope(const ScenarioConfig& cfg);
Report run_subordination(const ScenarioConfig& cfg);
Report run_corridor(const ScenarioConfig& cfg);
Report run_scenario(const ScenarioConfig& cfg);

// report.json and ratios.csv; byte-stable for fixed (seed, config, batches)
std::string report_to_json(const Report& r, const ScenarioConfig& cfg);
std::string ratios_to_csv(const Report& r);
void write_report_files(const Report& r, const ScenarioConfig& cfg);

// slope of least-squares log p on log n, with a deterministic binomial
// bootstrap CI; ns and estimates must be hit-based
struct SlopeFit {
    double slope = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};
SlopeFit fit_log_slope(const std::vector<std::uint64_t>& ns,
                       const std::vector<Estimate>& estimates, std::uint64_t seed);

// two-sample Kolmogorov-Smirnov statistic
double ks_two_sample(std::vector<double> a, std::vector<double> b);
// one-sample KS against uniform on (0, upper]
double ks_uniform(std::vector<double> samples, double upper);

// `simulate`, `estimate-c`, `corridor`, `run`, `verify`
// exit codes: 0 ok, 2 config/usage error, 3 acceptance-band failure
int cli_main(const std::vector<std::string>& args);

}  // namespace bigjump
