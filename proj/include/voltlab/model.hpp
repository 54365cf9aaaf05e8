#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "voltlab/config.hpp"

namespace voltlab {

// ---------------------------------------------------------------------------
// Process description: drift + squared-volatility process + jump components,
// tagged with the activity/size class parameters (r, A) it claims to satisfy.
// ---------------------------------------------------------------------------

enum class DriftKind { constant, sine };

struct DriftSpec {
    DriftKind kind = DriftKind::constant;
    double value = 0.0; // level (constant) or amplitude of value*sin(2*pi*t)

    double at(double t) const;
    double sup_abs() const;
};

enum class VolKind { constant, sine, ou };

// Squared volatility c(t). `constant`: c = value. `sine`: value*(1 +
// mod_amp*sin(2*pi*t)) with |mod_amp| <= 1. `ou`: exp of a mean-reverting
// Ornstein-Uhlenbeck process clipped above at `cap`, so sup c <= cap by
// construction.
struct VolSpec {
    VolKind kind = VolKind::constant;
    double value = 1.0;   // level (constant/sine) or stationary mean of c (ou)
    double mod_amp = 0.0; // sine only
    double kappa = 4.0;   // ou mean-reversion speed
    double xi = 0.5;      // ou volatility of log c
    double cap = 4.0;     // ou clip level

    double deterministic_at(double t) const; // constant/sine kinds only
    double sup() const;
    bool stochastic() const { return kind == VolKind::ou; }
};

enum class JumpKind { compound_poisson, symmetric_stable, truncated_stable };

enum class JumpLawKind { two_point, gaussian, uniform };

// Jump-size law of a compound-poisson component: two_point = +/-param with
// probability 1/2 each; gaussian = N(0, param^2); uniform = U(-param, param).
struct JumpLaw {
    JumpLawKind kind = JumpLawKind::two_point;
    double param = 1.0;
};

struct JumpComponent {
    JumpKind kind = JumpKind::compound_poisson;
    double intensity = 0.0; // compound-poisson rate per unit time
    JumpLaw law;
    double stable_index = 0.0; // beta in (0,2), stable kinds
    double scale = 0.0;        // stable kinds
    double truncation = 0.0;   // truncated-stable: levy measure cut at |x| > truncation

    void validate() const;
};

struct ModelSpec {
    DriftSpec drift;
    VolSpec vol;
    std::vector<JumpComponent> jumps;
    double class_r = 0.0;
    double class_a = 1.0;

    void validate() const; // throws ConfigError on malformed fields
};

struct SamplePath {
    std::int64_t n = 0;
    std::vector<double> values; // n+1 entries, X_0 .. X_1
    double true_c1 = 0.0;       // integrated squared volatility of this realization
    std::uint64_t seed = 0;
};

// Lévy density normalization for the stable kinds: the density is
// C(beta, scale)/|x|^{1+beta}, with C chosen so the characteristic function
// of the untruncated process at time t is exp(-t*scale^beta*|u|^beta).
double stable_levy_constant(double beta, double scale);

// Flat-config (de)serialization under `prefix` ("model" by default):
// keys drift.kind/value, volatility.kind/value/..., jumps.count,
// jumps.<i>.kind/..., class_r, class_a.
ModelSpec model_from_config(const Config& cfg, const std::string& prefix = "model");
void model_to_config(const ModelSpec& model, Config& cfg,
                     const std::string& prefix = "model");

std::string to_string(JumpKind k);
std::string to_string(JumpLawKind k);
std::string to_string(VolKind k);
std::string to_string(DriftKind k);

} // namespace voltlab
