#include "voltlab/model.hpp"

#include <cmath>
#include <cstdio>

#include "voltlab/errors.hpp"

namespace voltlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double DriftSpec::at(double t) const {
    switch (kind) {
        case DriftKind::constant: return value;
        case DriftKind::sine: return value * std::sin(2.0 * kPi * t);
    }
    throw ConfigError("unreachable drift kind");
}

double DriftSpec::sup_abs() const { return std::fabs(value); }

double VolSpec::deterministic_at(double t) const {
    switch (kind) {
        case VolKind::constant: return value;
        case VolKind::sine: return value * (1.0 + mod_amp * std::sin(2.0 * kPi * t));
        case VolKind::ou: break;
    }
    throw ConfigError("volatility is stochastic; no deterministic value");
}

double VolSpec::sup() const {
    switch (kind) {
        case VolKind::constant: return value;
        case VolKind::sine: return value * (1.0 + std::fabs(mod_amp));
        case VolKind::ou: return cap;
    }
    throw ConfigError("unreachable volatility kind");
}

void JumpComponent::validate() const {
    switch (kind) {
        case JumpKind::compound_poisson:
            if (!(intensity > 0.0)) throw ConfigError("compound-poisson intensity must be > 0");
            if (!(law.param > 0.0)) throw ConfigError("jump-law parameter must be > 0");
            return;
        case JumpKind::symmetric_stable:
        case JumpKind::truncated_stable:
            if (!(stable_index > 0.0 && stable_index < 2.0))
                throw ConfigError("stable_index must lie in (0,2)");
            if (!(scale >= 0.0)) throw ConfigError("stable scale must be >= 0");
            if (kind == JumpKind::truncated_stable && !(truncation > 0.0))
                throw ConfigError("truncation must be > 0");
            return;
    }
    throw ConfigError("unknown jump kind");
}

void ModelSpec::validate() const {
    if (!(class_r >= 0.0 && class_r < 2.0)) throw ConfigError("class_r must lie in [0,2)");
    if (!(class_a > 0.0)) throw ConfigError("class_a must be > 0");
    switch (vol.kind) {
        case VolKind::constant:
            if (!(vol.value >= 0.0)) throw ConfigError("volatility must be >= 0");
            break;
        case VolKind::sine:
            if (!(vol.value >= 0.0)) throw ConfigError("volatility level must be >= 0");
            if (std::fabs(vol.mod_amp) > 1.0)
                throw ConfigError("sine volatility modulation must have |amplitude| <= 1");
            break;
        case VolKind::ou:
            if (!(vol.value > 0.0)) throw ConfigError("ou mean level must be > 0");
            if (!(vol.kappa > 0.0)) throw ConfigError("ou kappa must be > 0");
            if (!(vol.xi >= 0.0)) throw ConfigError("ou xi must be >= 0");
            if (!(vol.cap >= vol.value)) throw ConfigError("ou cap must be >= mean level");
            break;
    }
    for (const auto& j : jumps) j.validate();
}

double stable_levy_constant(double beta, double scale) {
    if (!(beta > 0.0 && beta < 2.0)) throw ConfigError("stable_index must lie in (0,2)");
    if (!(scale >= 0.0)) throw ConfigError("stable scale must be >= 0");
    // \int_0^inf (1-cos y) y^{-1-beta} dy = pi / (2*Gamma(1+beta)*sin(pi*beta/2));
    // with density C/|x|^{1+beta} the exponent is 2*C*K*|u|^beta = scale^beta*|u|^beta.
    const double k_beta = kPi / (2.0 * std::tgamma(1.0 + beta) * std::sin(kPi * beta / 2.0));
    return std::pow(scale, beta) / (2.0 * k_beta);
}

// ---------------------------------------------------------------------------
// enum <-> string
// ---------------------------------------------------------------------------

std::string to_string(JumpKind k) {
    switch (k) {
        case JumpKind::compound_poisson: return "compound-poisson";
        case JumpKind::symmetric_stable: return "symmetric-stable";
        case JumpKind::truncated_stable: return "truncated-stable";
    }
    return "?";
}

std::string to_string(JumpLawKind k) {
    switch (k) {
        case JumpLawKind::two_point: return "two-point";
        case JumpLawKind::gaussian: return "gaussian";
        case JumpLawKind::uniform: return "uniform";
    }
    return "?";
}

std::string to_string(VolKind k) {
    switch (k) {
        case VolKind::constant: return "constant";
        case VolKind::sine: return "sine";
        case VolKind::ou: return "ou";
    }
    return "?";
}

std::string to_string(DriftKind k) {
    switch (k) {
        case DriftKind::constant: return "constant";
        case DriftKind::sine: return "sine";
    }
    return "?";
}

namespace {

JumpKind parse_jump_kind(const std::string& s) {
    if (s == "compound-poisson") return JumpKind::compound_poisson;
    if (s == "symmetric-stable") return JumpKind::symmetric_stable;
    if (s == "truncated-stable") return JumpKind::truncated_stable;
    throw ConfigError("unknown jump kind: " + s);
}

JumpLawKind parse_law_kind(const std::string& s) {
    if (s == "two-point") return JumpLawKind::two_point;
    if (s == "gaussian") return JumpLawKind::gaussian;
    if (s == "uniform") return JumpLawKind::uniform;
    throw ConfigError("unknown jump law: " + s);
}

VolKind parse_vol_kind(const std::string& s) {
    if (s == "constant") return VolKind::constant;
    if (s == "sine") return VolKind::sine;
    if (s == "ou") return VolKind::ou;
    throw ConfigError("unknown volatility kind: " + s);
}

DriftKind parse_drift_kind(const std::string& s) {
    if (s == "constant") return DriftKind::constant;
    if (s == "sine") return DriftKind::sine;
    throw ConfigError("unknown drift kind: " + s);
}

} // namespace

ModelSpec model_from_config(const Config& cfg, const std::string& prefix) {
    const std::string p = prefix.empty() ? "" : prefix + ".";
    ModelSpec m;
    m.drift.kind = parse_drift_kind(cfg.get_string(p + "drift.kind", "constant"));
    m.drift.value = cfg.get_double(p + "drift.value", 0.0);
    m.vol.kind = parse_vol_kind(cfg.get_string(p + "volatility.kind", "constant"));
    m.vol.value = cfg.get_double(p + "volatility.value", 1.0);
    m.vol.mod_amp = cfg.get_double(p + "volatility.mod_amp", 0.0);
    m.vol.kappa = cfg.get_double(p + "volatility.kappa", 4.0);
    m.vol.xi = cfg.get_double(p + "volatility.xi", 0.5);
    m.vol.cap = cfg.get_double(p + "volatility.cap", 4.0);
    const auto count = cfg.get_int(p + "jumps.count", 0);
    if (count < 0) throw ConfigError("jumps.count must be >= 0");
    for (std::int64_t i = 0; i < count; ++i) {
        const std::string jp = p + "jumps." + std::to_string(i) + ".";
        JumpComponent j;
        j.kind = parse_jump_kind(cfg.get_string(jp + "kind"));
        if (j.kind == JumpKind::compound_poisson) {
            j.intensity = cfg.get_double(jp + "intensity");
            j.law.kind = parse_law_kind(cfg.get_string(jp + "law.kind", "two-point"));
            j.law.param = cfg.get_double(jp + "law.param", 1.0);
        } else {
            j.stable_index = cfg.get_double(jp + "stable_index");
            j.scale = cfg.get_double(jp + "scale");
            if (j.kind == JumpKind::truncated_stable)
                j.truncation = cfg.get_double(jp + "truncation");
        }
        m.jumps.push_back(j);
    }
    m.class_r = cfg.get_double(p + "class_r", 0.0);
    m.class_a = cfg.get_double(p + "class_a", 1.0);
    m.validate();
    return m;
}

void model_to_config(const ModelSpec& model, Config& cfg, const std::string& prefix) {
    const std::string p = prefix.empty() ? "" : prefix + ".";
    auto put = [&cfg](const std::string& key, double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        cfg.set(key, buf);
    };
    cfg.set(p + "drift.kind", to_string(model.drift.kind));
    put(p + "drift.value", model.drift.value);
    cfg.set(p + "volatility.kind", to_string(model.vol.kind));
    put(p + "volatility.value", model.vol.value);
    if (model.vol.kind == VolKind::sine) put(p + "volatility.mod_amp", model.vol.mod_amp);
    if (model.vol.kind == VolKind::ou) {
        put(p + "volatility.kappa", model.vol.kappa);
        put(p + "volatility.xi", model.vol.xi);
        put(p + "volatility.cap", model.vol.cap);
    }
    cfg.set(p + "jumps.count", std::to_string(model.jumps.size()));
    for (std::size_t i = 0; i < model.jumps.size(); ++i) {
        const std::string jp = p + "jumps." + std::to_string(i) + ".";
        const auto& j = model.jumps[i];
        cfg.set(jp + "kind", to_string(j.kind));
        if (j.kind == JumpKind::compound_poisson) {
            put(jp + "intensity", j.intensity);
            cfg.set(jp + "law.kind", to_string(j.law.kind));
            put(jp + "law.param", j.law.param);
        } else {
            put(jp + "stable_index", j.stable_index);
            put(jp + "scale", j.scale);
            if (j.kind == JumpKind::truncated_stable) put(jp + "truncation", j.truncation);
        }
    }
    put(p + "class_r", model.class_r);
    put(p + "class_a", model.class_a);
}

} // namespace voltlab
