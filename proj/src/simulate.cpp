#include "voltlab/simulate.hpp"

#include <cmath>
#include <cstdint>

#include "voltlab/errors.hpp"

namespace voltlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Stream component ids inside one path simulation.
enum : std::uint64_t { kDiffusion = 0, kVolDriver = 1, kJumpBase = 2 };

double sample_jump_size(const JumpLaw& law, Rng& rng) {
    switch (law.kind) {
        case JumpLawKind::two_point:
            return rng.uniform01() < 0.5 ? -law.param : law.param;
        case JumpLawKind::gaussian:
            return law.param * rng.gaussian();
        case JumpLawKind::uniform:
            return rng.uniform(-law.param, law.param);
    }
    throw ConfigError("unknown jump law");
}

// Exact integral of the deterministic squared volatility over [t0, t1].
double vol_integral(const VolSpec& v, double t0, double t1) {
    switch (v.kind) {
        case VolKind::constant:
            return v.value * (t1 - t0);
        case VolKind::sine:
            return v.value * ((t1 - t0) + v.mod_amp *
                                               (std::cos(2.0 * kPi * t0) -
                                                std::cos(2.0 * kPi * t1)) /
                                               (2.0 * kPi));
        case VolKind::ou:
            break;
    }
    throw ConfigError("vol_integral needs deterministic volatility");
}

double drift_integral(const DriftSpec& d, double t0, double t1) {
    switch (d.kind) {
        case DriftKind::constant:
            return d.value * (t1 - t0);
        case DriftKind::sine:
            return d.value * (std::cos(2.0 * kPi * t0) - std::cos(2.0 * kPi * t1)) /
                   (2.0 * kPi);
    }
    throw ConfigError("unknown drift kind");
}

// Per-interval integrated squared volatility for the ou kind: exact
// Ornstein-Uhlenbeck transitions for log c on a 64x refinement grid, then a
// left-endpoint Riemann sum per observation interval. The same numbers feed
// both the Gaussian increment variances and true_c1, so the estimation
// target matches what was simulated.
std::vector<double> ou_interval_variances(const VolSpec& v, std::int64_t n, Rng& rng) {
    const int refine = 64;
    const double h = 1.0 / (static_cast<double>(n) * refine);
    const double mu = std::log(v.value);
    const double decay = std::exp(-v.kappa * h);
    const double stat_sd = v.xi / std::sqrt(2.0 * v.kappa);
    const double step_sd = stat_sd * std::sqrt(1.0 - decay * decay);
    double y = mu + stat_sd * rng.gaussian(); // stationary start
    std::vector<double> variances(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = 0; k < refine; ++k) {
            acc += std::min(std::exp(y), v.cap);
            y = mu + (y - mu) * decay + step_sd * rng.gaussian();
        }
        variances[static_cast<std::size_t>(i)] = acc * h;
    }
    return variances;
}

// Truncated-stable simulation strategy, frozen once per (component, n).
struct TruncatedPlan {
    bool exact_minus_tail = false; // CMS increment minus an independent tail draw
    // compound-poisson branch: jumps in [eps, trunc] exactly, smaller ones as
    // a matching-variance Gaussian
    double eps = 0.0;
    double cp_rate = 0.0;     // per unit time
    double gauss_var = 0.0;   // per unit time
    double tail_rate = 0.0;   // per unit time (exact_minus_tail branch)
};

TruncatedPlan plan_truncated(const JumpComponent& j, double dt) {
    const double beta = j.stable_index;
    const double c = stable_levy_constant(beta, j.scale);
    TruncatedPlan plan;
    if (c == 0.0) { // zero scale: nothing to simulate
        plan.exact_minus_tail = false;
        return plan;
    }
    // Variance of jumps below eps is 2c*eps^{2-beta}/(2-beta) per unit time;
    // solve for the eps that makes the per-increment variance 1e-10.
    const double var_budget = 1e-10;
    double eps = std::pow(var_budget * (2.0 - beta) / (2.0 * c * dt), 1.0 / (2.0 - beta));
    eps = std::min(eps, j.truncation);
    const double cp_rate = 2.0 * c / beta *
                           (std::pow(eps, -beta) - std::pow(j.truncation, -beta));
    if (cp_rate <= 1e5) {
        plan.eps = eps;
        plan.cp_rate = cp_rate;
        plan.gauss_var = 2.0 * c * std::pow(eps, 2.0 - beta) / (2.0 - beta);
        return plan;
    }
    plan.exact_minus_tail = true;
    plan.tail_rate = 2.0 * c / beta * std::pow(j.truncation, -beta);
    return plan;
}

// Size of one jump conditioned on eps <= |x| <= hi under density ~ x^{-1-beta}.
double bounded_power_law(double beta, double lo, double hi, Rng& rng) {
    const double a = std::pow(lo, -beta);
    const double b = std::pow(hi, -beta);
    const double x = std::pow(a - rng.uniform01() * (a - b), -1.0 / beta);
    return rng.uniform01() < 0.5 ? -x : x;
}

// Size of one tail jump |x| > lo under density ~ x^{-1-beta}.
double pareto_tail(double beta, double lo, Rng& rng) {
    const double x = lo * std::pow(rng.uniform01(), -1.0 / beta);
    return rng.uniform01() < 0.5 ? -x : x;
}

} // namespace

double sample_stable_increment(double beta, double scale, double dt, Rng& rng) {
    if (!(beta > 0.0 && beta < 2.0)) throw ConfigError("stable_index must lie in (0,2)");
    if (!(scale >= 0.0)) throw ConfigError("stable scale must be >= 0");
    if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
    if (scale == 0.0) return 0.0;
    const double v = rng.uniform(-kPi / 2.0, kPi / 2.0);
    const double e = rng.exponential();
    const double x = std::sin(beta * v) / std::pow(std::cos(v), 1.0 / beta) *
                     std::pow(std::cos((1.0 - beta) * v) / e, (1.0 - beta) / beta);
    return scale * std::pow(dt, 1.0 / beta) * x;
}

SamplePath simulate_path(const ModelSpec& model, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw ConfigError("n must be >= 1");
    model.validate();
    const auto un = static_cast<std::uint64_t>(n);
    const double dt = 1.0 / static_cast<double>(n);

    // Per-interval integrated squared volatility.
    std::vector<double> variances(static_cast<std::size_t>(n));
    if (model.vol.stochastic()) {
        Rng vol_rng(seed, un, 0, kVolDriver);
        variances = ou_interval_variances(model.vol, n, vol_rng);
    } else {
        for (std::int64_t i = 0; i < n; ++i)
            variances[static_cast<std::size_t>(i)] =
                vol_integral(model.vol, i * dt, (i + 1) * dt);
    }

    std::vector<double> increments(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t i = 0; i < n; ++i)
        increments[static_cast<std::size_t>(i)] =
            drift_integral(model.drift, i * dt, (i + 1) * dt);

    {
        Rng diff_rng(seed, un, 0, kDiffusion);
        for (std::int64_t i = 0; i < n; ++i)
            increments[static_cast<std::size_t>(i)] +=
                std::sqrt(variances[static_cast<std::size_t>(i)]) * diff_rng.gaussian();
    }

    for (std::size_t jidx = 0; jidx < model.jumps.size(); ++jidx) {
        const auto& j = model.jumps[jidx];
        Rng rng(seed, un, 0, kJumpBase + jidx);
        switch (j.kind) {
            case JumpKind::compound_poisson: {
                for (std::int64_t i = 0; i < n; ++i) {
                    const std::uint64_t count = rng.poisson(j.intensity * dt);
                    double sum = 0.0;
                    for (std::uint64_t k = 0; k < count; ++k)
                        sum += sample_jump_size(j.law, rng);
                    increments[static_cast<std::size_t>(i)] += sum;
                }
                break;
            }
            case JumpKind::symmetric_stable: {
                if (j.scale == 0.0) break;
                for (std::int64_t i = 0; i < n; ++i)
                    increments[static_cast<std::size_t>(i)] +=
                        sample_stable_increment(j.stable_index, j.scale, dt, rng);
                break;
            }
            case JumpKind::truncated_stable: {
                if (j.scale == 0.0) break;
                const TruncatedPlan plan = plan_truncated(j, dt);
                for (std::int64_t i = 0; i < n; ++i) {
                    double inc = 0.0;
                    if (plan.exact_minus_tail) {
                        inc = sample_stable_increment(j.stable_index, j.scale, dt, rng);
                        const std::uint64_t count = rng.poisson(plan.tail_rate * dt);
                        for (std::uint64_t k = 0; k < count; ++k)
                            inc -= pareto_tail(j.stable_index, j.truncation, rng);
                    } else {
                        const std::uint64_t count = rng.poisson(plan.cp_rate * dt);
                        for (std::uint64_t k = 0; k < count; ++k)
                            inc += bounded_power_law(j.stable_index, plan.eps,
                                                     j.truncation, rng);
                        inc += std::sqrt(plan.gauss_var * dt) * rng.gaussian();
                    }
                    increments[static_cast<std::size_t>(i)] += inc;
                }
                break;
            }
        }
    }

    SamplePath path;
    path.n = n;
    path.seed = seed;
    path.values.resize(static_cast<std::size_t>(n) + 1, 0.0);
    double acc = 0.0;
    double c1 = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        acc += increments[static_cast<std::size_t>(i)];
        path.values[static_cast<std::size_t>(i) + 1] = acc;
        c1 += variances[static_cast<std::size_t>(i)];
    }
    path.true_c1 = c1;
    return path;
}

} // namespace voltlab
