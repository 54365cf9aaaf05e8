#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "voltlab/config.hpp"
#include "voltlab/estimators.hpp"
#include "voltlab/model.hpp"

namespace voltlab {

struct ExperimentPlan {
    ModelSpec model;
    std::vector<EstimatorConfig> estimators;
    std::vector<std::int64_t> n_grid; // strictly increasing, >= 3 entries
    std::int64_t replications = 100;
    std::uint64_t base_seed = 1;

    void validate() const;
};

struct RateCell {
    std::size_t estimator_index = 0;
    std::int64_t n = 0;
    std::int64_t count = 0; // replications aggregated (always == plan M)
    double mean_abs = 0.0;
    double median_abs = 0.0;
    double rmse = 0.0;
    double q90 = 0.0;
    std::int64_t degenerate_count = 0;
};

struct RateFit {
    double slope = 0.0;
    double stderr_value = 0.0;
    bool degenerate = false; // some median error was zero or too few points
};

struct RateExponent {
    double exponent = 0.0;
    bool log_factor = false; // rate carries a log-n power on top of n^exponent
    bool known = true;       // false: no rate statement applies (e.g. multipower, r >= 1)
};

struct RateReport {
    std::vector<RateCell> cells;      // estimator-major, n-minor order
    std::vector<RateFit> fits;        // one per estimator
    std::vector<RateExponent> theory; // one per estimator, at the model's class_r
};

// Rate exponent implied by the theory for the model class r and estimator:
// 1/2 for realized (continuous case) and spectral with r <= 1; (2-r)/2 with
// log flag for spectral with r > 1; 1/2 for truncated with r < 1 and
// varpi >= 1/(4-2r); varpi*(2-r) for truncated with r >= 1. Combinations
// without a stated rate come back with known = false.
RateExponent theoretical_exponent(double r, const EstimatorConfig& cfg);

// OLS of log(median |error|) on log n. Degenerate (flagged) when fewer than
// 3 points or any median is zero.
RateFit fit_rate(const std::vector<std::int64_t>& n_grid,
                 const std::vector<double>& medians);

// Simulate/estimate over the full (n, replication) grid. Replication m of
// sample count n uses the path seed stream_key(base_seed, n, m, 0); results
// are deterministic for any thread count. Spectral estimators using the
// frequency rule require the model to pass the class check at their (r, A).
RateReport run_experiment(const ExperimentPlan& plan, unsigned threads = 1);

ExperimentPlan plan_from_config(const Config& cfg);
void write_rate_report_csv(const std::string& path, const ExperimentPlan& plan,
                           const RateReport& report);
void write_rate_summary_json(const std::string& path, const ExperimentPlan& plan,
                             const RateReport& report);

} // namespace voltlab
