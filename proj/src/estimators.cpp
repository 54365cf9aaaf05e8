#include "voltlab/estimators.hpp"

#include <cmath>

#include "voltlab/errors.hpp"
#include "voltlab/quadrature.hpp"

namespace voltlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCfDegenerate = 1e-12; // |cf| below this counts as zero

void require_path(const SamplePath& path) {
    if (path.n < 1 || path.values.size() != static_cast<std::size_t>(path.n) + 1)
        throw ConfigError("malformed sample path");
}

} // namespace

void EstimatorConfig::validate() const {
    switch (variant) {
        case EstimatorVariant::realized:
            return;
        case EstimatorVariant::truncated:
            if (!(varpi > 0.0 && varpi < 0.5))
                throw ConfigError("truncation exponent must lie in (0, 1/2)");
            if (!(trunc_scale > 0.0)) throw ConfigError("trunc_scale must be > 0");
            return;
        case EstimatorVariant::multipower:
            if (k < 2) throw ConfigError("multipower order must be >= 2");
            return;
        case EstimatorVariant::spectral:
            if (freq_explicit) {
                if (!(freq_value > 0.0)) throw ConfigError("frequency must be > 0");
            } else {
                if (!(freq_r >= 0.0 && freq_r < 2.0))
                    throw ConfigError("frequency rule needs r in [0,2)");
                if (!(freq_a > 0.0)) throw ConfigError("frequency rule needs A > 0");
            }
            return;
    }
    throw ConfigError("unknown estimator variant");
}

EstimateResult realized_volatility(const SamplePath& path) {
    require_path(path);
    double sum = 0.0;
    for (std::int64_t i = 1; i <= path.n; ++i) {
        const double d = path.values[static_cast<std::size_t>(i)] -
                         path.values[static_cast<std::size_t>(i) - 1];
        sum += d * d;
    }
    return {sum, 0.0, false};
}

EstimateResult truncated_rv(const SamplePath& path, const EstimatorConfig& cfg) {
    require_path(path);
    if (cfg.variant != EstimatorVariant::truncated)
        throw ConfigError("config variant is not truncated");
    cfg.validate();
    const double vn =
        cfg.trunc_scale * std::pow(static_cast<double>(path.n), -cfg.varpi);
    double sum = 0.0;
    for (std::int64_t i = 1; i <= path.n; ++i) {
        const double d = path.values[static_cast<std::size_t>(i)] -
                         path.values[static_cast<std::size_t>(i) - 1];
        if (std::fabs(d) <= vn) sum += d * d;
    }
    return {sum, vn, false};
}

EstimateResult multipower(const SamplePath& path, const EstimatorConfig& cfg) {
    require_path(path);
    if (cfg.variant != EstimatorVariant::multipower)
        throw ConfigError("config variant is not multipower");
    cfg.validate();
    const std::int64_t k = cfg.k;
    if (path.n < k) throw ConfigError("path shorter than multipower order");
    const double p = 2.0 / static_cast<double>(k);
    std::vector<double> pow_inc(static_cast<std::size_t>(path.n));
    for (std::int64_t i = 1; i <= path.n; ++i) {
        const double d = path.values[static_cast<std::size_t>(i)] -
                         path.values[static_cast<std::size_t>(i) - 1];
        pow_inc[static_cast<std::size_t>(i) - 1] = std::pow(std::fabs(d), p);
    }
    double sum = 0.0;
    for (std::int64_t i = 0; i + k <= path.n; ++i) {
        double prod = 1.0;
        for (std::int64_t j = 0; j < k; ++j)
            prod *= pow_inc[static_cast<std::size_t>(i + j)];
        sum += prod;
    }
    const double norm = std::pow(gaussian_abs_moment(p), static_cast<double>(k));
    return {sum / norm, static_cast<double>(k), false};
}

double gaussian_abs_moment(double p) {
    if (!(p > 0.0)) throw ConfigError("moment order must be > 0");
    return std::pow(2.0, p / 2.0) * std::tgamma((p + 1.0) / 2.0) / std::sqrt(kPi);
}

std::complex<double> empirical_cf(const SamplePath& path, double u) {
    require_path(path);
    double re = 0.0, im = 0.0;
    for (std::int64_t i = 1; i <= path.n; ++i) {
        const double d = path.values[static_cast<std::size_t>(i)] -
                         path.values[static_cast<std::size_t>(i) - 1];
        re += std::cos(u * d);
        im += std::sin(u * d);
    }
    const double inv_n = 1.0 / static_cast<double>(path.n);
    return {re * inv_n, im * inv_n};
}

EstimateResult spectral_estimator(const SamplePath& path, double u) {
    require_path(path);
    if (!(u > 0.0)) throw ConfigError("frequency must be > 0");
    const double mod = std::abs(empirical_cf(path, u));
    if (mod < kCfDegenerate) return {0.0, u, true};
    const double value =
        -2.0 * static_cast<double>(path.n) / (u * u) * std::log(mod);
    return {value, u, false};
}

double spectral_frequency(std::int64_t n, double r, double a) {
    if (n < 2) throw ConfigError("frequency rule needs n >= 2");
    if (!(r >= 0.0 && r < 2.0)) throw ConfigError("r must lie in [0,2)");
    if (!(a > 0.0)) throw ConfigError("A must be > 0");
    const double dn = static_cast<double>(n);
    if (r <= 1.0) return std::sqrt(dn);
    return std::sqrt((r - 1.0) * dn * std::log(dn) / a);
}

// ---------------------------------------------------------------------------
// Spectral bias gamma(u)/u^2
// ---------------------------------------------------------------------------

namespace {

// \int_lo^\infty cos(u x) x^{-s} dx for s > 1, u > 0, lo > 0, evaluated on
// the rotated contour x = lo + i t/u where the integrand decays like e^{-t}
// and stops oscillating:
//   \int_lo^inf e^{iux} x^{-s} dx = (i e^{iu lo}/u) \int_0^inf e^{-t} (lo + it/u)^{-s} dt.
double cosine_tail(double s, double lo, double u) {
    const auto z_pow = [s, lo, u](double t) {
        return std::pow(std::complex<double>(lo, t / u), -s);
    };
    const double re = integrate_semi_infinite(
        [&](double t) { return std::exp(-t) * z_pow(t).real(); }, 0.0);
    const double im = integrate_semi_infinite(
        [&](double t) { return std::exp(-t) * z_pow(t).imag(); }, 0.0);
    const std::complex<double> rot(0.0, 1.0);
    const std::complex<double> val =
        rot * std::exp(std::complex<double>(0.0, u * lo)) *
        std::complex<double>(re, im) / u;
    return val.real();
}

// \int_0^\infty (1 - cos y) y^{-1-beta} dy by quadrature: singular part on
// (0,1], exact power tail, oscillatory cosine tail via cosine_tail.
double one_minus_cos_integral(double beta) {
    const double body = integrate_singular(
        [beta](double y) {
            // sin^2(y/2)/y^2 stays ~1/4 down to the underflow threshold, so
            // the product below never hits 0 * inf as y -> 0
            const double s = std::sin(0.5 * y) / y;
            return 2.0 * s * s * std::pow(y, 1.0 - beta);
        },
        0.0, 1.0);
    return body + 1.0 / beta - cosine_tail(1.0 + beta, 1.0, 1.0);
}

// \int (1-cos(ux)) against one component's Lévy measure.
double half_gamma(const JumpComponent& j, double u) {
    switch (j.kind) {
        case JumpKind::compound_poisson: {
            // lambda * (1 - E cos(uJ)), E cos closed-form per law.
            double mean_cos = 0.0;
            switch (j.law.kind) {
                case JumpLawKind::two_point:
                    mean_cos = std::cos(u * j.law.param);
                    break;
                case JumpLawKind::gaussian:
                    mean_cos = std::exp(-0.5 * j.law.param * j.law.param * u * u);
                    break;
                case JumpLawKind::uniform: {
                    const double a = u * j.law.param;
                    mean_cos = a == 0.0 ? 1.0 : std::sin(a) / a;
                    break;
                }
            }
            return j.intensity * (1.0 - mean_cos);
        }
        case JumpKind::symmetric_stable:
        case JumpKind::truncated_stable: {
            if (j.scale == 0.0) return 0.0;
            const double beta = j.stable_index;
            const double c = stable_levy_constant(beta, j.scale);
            // substitution y = ux maps the full integral to u^beta * J(beta)
            double total = std::pow(u, beta) * one_minus_cos_integral(beta);
            if (j.kind == JumpKind::truncated_stable) {
                // remove the |x| > truncation tail
                const double tau = j.truncation;
                total -= std::pow(tau, -beta) / beta -
                         cosine_tail(1.0 + beta, tau, u);
            }
            return 2.0 * c * total;
        }
    }
    throw ConfigError("unknown jump kind");
}

} // namespace

double spectral_bias(const std::vector<JumpComponent>& jumps, double u) {
    if (!(u > 0.0)) throw ConfigError("frequency must be > 0");
    double gamma = 0.0;
    for (const auto& j : jumps) gamma += 2.0 * half_gamma(j, u);
    return gamma / (u * u);
}

// ---------------------------------------------------------------------------
// Dispatch / config
// ---------------------------------------------------------------------------

EstimateResult estimate(const SamplePath& path, const EstimatorConfig& cfg) {
    cfg.validate();
    switch (cfg.variant) {
        case EstimatorVariant::realized: return realized_volatility(path);
        case EstimatorVariant::truncated: return truncated_rv(path, cfg);
        case EstimatorVariant::multipower: return multipower(path, cfg);
        case EstimatorVariant::spectral: {
            const double u = cfg.freq_explicit
                                 ? cfg.freq_value
                                 : spectral_frequency(path.n, cfg.freq_r, cfg.freq_a);
            return spectral_estimator(path, u);
        }
    }
    throw ConfigError("unknown estimator variant");
}

std::string to_string(EstimatorVariant v) {
    switch (v) {
        case EstimatorVariant::realized: return "realized";
        case EstimatorVariant::truncated: return "truncated";
        case EstimatorVariant::multipower: return "multipower";
        case EstimatorVariant::spectral: return "spectral";
    }
    return "?";
}

EstimatorVariant parse_variant(const std::string& s) {
    if (s == "realized") return EstimatorVariant::realized;
    if (s == "truncated") return EstimatorVariant::truncated;
    if (s == "multipower") return EstimatorVariant::multipower;
    if (s == "spectral") return EstimatorVariant::spectral;
    throw ConfigError("unknown estimator variant: " + s);
}

EstimatorConfig estimator_from_config(const Config& cfg, const std::string& prefix) {
    const std::string p = prefix.empty() ? "" : prefix + ".";
    EstimatorConfig e;
    e.variant = parse_variant(cfg.get_string(p + "variant"));
    e.varpi = cfg.get_double(p + "varpi", e.varpi);
    e.trunc_scale = cfg.get_double(p + "trunc_scale", e.trunc_scale);
    e.k = static_cast<int>(cfg.get_int(p + "k", e.k));
    if (cfg.has(p + "freq.value")) {
        e.freq_explicit = true;
        e.freq_value = cfg.get_double(p + "freq.value");
    } else {
        e.freq_r = cfg.get_double(p + "freq.r", e.freq_r);
        e.freq_a = cfg.get_double(p + "freq.a", e.freq_a);
    }
    e.validate();
    return e;
}

} // namespace voltlab
