#include "voltlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>

#include "voltlab/class_check.hpp"
#include "voltlab/csv.hpp"
#include "voltlab/errors.hpp"
#include "voltlab/parallel.hpp"
#include "voltlab/rng.hpp"
#include "voltlab/simulate.hpp"

namespace voltlab {

void ExperimentPlan::validate() const {
    model.validate();
    if (estimators.empty()) throw ConfigError("plan needs at least one estimator");
    for (const auto& e : estimators) e.validate();
    if (n_grid.size() < 3) throw ConfigError("n_grid needs at least 3 entries");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 1) throw ConfigError("n_grid entries must be >= 1");
        if (i > 0 && n_grid[i] <= n_grid[i - 1])
            throw ConfigError("n_grid must be strictly increasing");
    }
    if (replications < 1) throw ConfigError("replications must be >= 1");
}

RateExponent theoretical_exponent(double r, const EstimatorConfig& cfg) {
    if (!(r >= 0.0 && r < 2.0)) throw ConfigError("r must lie in [0,2)");
    switch (cfg.variant) {
        case EstimatorVariant::realized:
            return {0.5, false, true}; // continuous-case CLT rate
        case EstimatorVariant::truncated:
            if (r < 1.0) {
                if (cfg.varpi >= 1.0 / (4.0 - 2.0 * r)) return {0.5, false, true};
                return {0.0, false, false}; // threshold too permissive: no statement
            }
            return {cfg.varpi * (2.0 - r), false, true};
        case EstimatorVariant::spectral:
            if (r <= 1.0) return {0.5, false, true};
            return {(2.0 - r) / 2.0, true, true};
        case EstimatorVariant::multipower:
            if (r < 1.0) return {0.5, false, true};
            return {0.0, false, false}; // nothing known at this activity
    }
    throw ConfigError("unknown estimator variant");
}

RateFit fit_rate(const std::vector<std::int64_t>& n_grid,
                 const std::vector<double>& medians) {
    if (n_grid.size() != medians.size()) throw ConfigError("fit_rate size mismatch");
    RateFit fit;
    if (n_grid.size() < 3) {
        fit.degenerate = true;
        return fit;
    }
    for (double m : medians)
        if (!(m > 0.0)) {
            fit.degenerate = true;
            return fit;
        }
    const std::size_t m = n_grid.size();
    std::vector<double> x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
        x[i] = std::log(static_cast<double>(n_grid[i]));
        y[i] = std::log(medians[i]);
    }
    double xbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        xbar += x[i];
        ybar += y[i];
    }
    xbar /= static_cast<double>(m);
    ybar /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * (y[i] - ybar);
    }
    fit.slope = sxy / sxx;
    const double intercept = ybar - fit.slope * xbar;
    double ssr = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double resid = y[i] - intercept - fit.slope * x[i];
        ssr += resid * resid;
    }
    fit.stderr_value = std::sqrt(ssr / static_cast<double>(m - 2) / sxx);
    return fit;
}

namespace {

struct CellScratch {
    std::vector<double> abs_errors;
    std::vector<bool> degenerate;
};

double percentile_sorted(const std::vector<double>& sorted, double q) {
    // nearest-rank on the sorted sample
    const auto m = sorted.size();
    const auto rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(m)));
    return sorted[std::min(m - 1, std::max<std::size_t>(rank, 1) - 1)];
}

RateCell summarize(std::size_t est_index, std::int64_t n, const CellScratch& scratch) {
    RateCell cell;
    cell.estimator_index = est_index;
    cell.n = n;
    cell.count = static_cast<std::int64_t>(scratch.abs_errors.size());
    std::vector<double> sorted = scratch.abs_errors;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    double sum = 0.0, sumsq = 0.0;
    for (double e : sorted) {
        sum += e;
        sumsq += e * e;
    }
    cell.mean_abs = sum / static_cast<double>(m);
    cell.rmse = std::sqrt(sumsq / static_cast<double>(m));
    cell.median_abs = m % 2 == 1 ? sorted[m / 2]
                                 : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    cell.q90 = percentile_sorted(sorted, 0.9);
    for (bool d : scratch.degenerate) cell.degenerate_count += d ? 1 : 0;
    return cell;
}

} // namespace

RateReport run_experiment(const ExperimentPlan& plan, unsigned threads) {
    plan.validate();
    // Frequency-rule spectral estimators are only meaningful on models that
    // actually satisfy the class bound their tuning assumes.
    for (const auto& e : plan.estimators) {
        if (e.variant == EstimatorVariant::spectral && !e.freq_explicit) {
            const ClassReport rep =
                verify_class_membership(plan.model, e.freq_r, e.freq_a);
            if (!rep.pass)
                throw ConfigError(
                    "model fails the class check at the spectral rule's (r, A)");
        }
    }

    const std::size_t n_est = plan.estimators.size();
    const auto reps = static_cast<std::size_t>(plan.replications);
    RateReport report;

    std::vector<std::vector<CellScratch>> per_n; // [n_index][estimator]
    per_n.resize(plan.n_grid.size());
    for (auto& v : per_n) {
        v.resize(n_est);
        for (auto& s : v) {
            s.abs_errors.resize(reps);
            s.degenerate.resize(reps);
        }
    }

    for (std::size_t ni = 0; ni < plan.n_grid.size(); ++ni) {
        const std::int64_t n = plan.n_grid[ni];
        auto& cells = per_n[ni];
        parallel_for(reps, threads, [&](std::size_t m) {
            const std::uint64_t seed =
                stream_key(plan.base_seed, static_cast<std::uint64_t>(n), m, 0);
            const SamplePath path = simulate_path(plan.model, n, seed);
            for (std::size_t e = 0; e < n_est; ++e) {
                const EstimateResult res = estimate(path, plan.estimators[e]);
                cells[e].abs_errors[m] = std::fabs(res.value - path.true_c1);
                cells[e].degenerate[m] = res.degenerate;
            }
        });
    }

    for (std::size_t e = 0; e < n_est; ++e) {
        std::vector<double> medians;
        for (std::size_t ni = 0; ni < plan.n_grid.size(); ++ni) {
            report.cells.push_back(summarize(e, plan.n_grid[ni], per_n[ni][e]));
            medians.push_back(report.cells.back().median_abs);
        }
        report.fits.push_back(fit_rate(plan.n_grid, medians));
        report.theory.push_back(theoretical_exponent(plan.model.class_r,
                                                     plan.estimators[e]));
    }
    return report;
}

ExperimentPlan plan_from_config(const Config& cfg) {
    ExperimentPlan plan;
    plan.model = model_from_config(cfg, "model");
    const auto count = cfg.get_int("estimators.count", 1);
    if (count < 1) throw ConfigError("estimators.count must be >= 1");
    for (std::int64_t i = 0; i < count; ++i)
        plan.estimators.push_back(
            estimator_from_config(cfg, "estimators." + std::to_string(i)));
    plan.n_grid = cfg.get_int_list("n_grid");
    plan.replications = cfg.get_int("replications", 100);
    plan.base_seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
    plan.validate();
    return plan;
}

void write_rate_report_csv(const std::string& path, const ExperimentPlan& plan,
                           const RateReport& report) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& cell : report.cells) {
        const auto& est = plan.estimators[cell.estimator_index];
        rows.push_back({std::to_string(cell.estimator_index), to_string(est.variant),
                        std::to_string(cell.n), std::to_string(cell.count),
                        format_real(cell.mean_abs), format_real(cell.median_abs),
                        format_real(cell.rmse), format_real(cell.q90),
                        std::to_string(cell.degenerate_count)});
    }
    write_csv(path,
              {"estimator_index", "estimator", "n", "count", "mean_abs_error",
               "median_abs_error", "rmse", "q90_abs_error", "degenerate_count"},
              rows);
}

void write_rate_summary_json(const std::string& path, const ExperimentPlan& plan,
                             const RateReport& report) {
    nlohmann::json j;
    j["replications"] = plan.replications;
    j["base_seed"] = plan.base_seed;
    j["class_r"] = plan.model.class_r;
    j["class_a"] = plan.model.class_a;
    j["n_grid"] = plan.n_grid;
    j["estimators"] = nlohmann::json::array();
    for (std::size_t e = 0; e < plan.estimators.size(); ++e) {
        nlohmann::json je;
        je["index"] = e;
        je["variant"] = to_string(plan.estimators[e].variant);
        je["fitted_slope"] = report.fits[e].slope;
        je["slope_stderr"] = report.fits[e].stderr_value;
        je["fit_degenerate"] = report.fits[e].degenerate;
        je["theory_exponent"] = report.theory[e].exponent;
        je["theory_log_factor"] = report.theory[e].log_factor;
        je["theory_known"] = report.theory[e].known;
        j["estimators"].push_back(je);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

} // namespace voltlab
