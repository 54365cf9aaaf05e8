#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "voltlab/config.hpp"
#include "voltlab/model.hpp"

namespace voltlab {

enum class EstimatorVariant { realized, truncated, multipower, spectral };

struct EstimatorConfig {
    EstimatorVariant variant = EstimatorVariant::realized;

    // truncated: threshold v_n = trunc_scale * n^{-varpi}
    double varpi = 0.49;
    double trunc_scale = 1.0;

    // multipower: order k >= 2, powers 2/k on consecutive increments
    int k = 2;

    // spectral frequency: explicit value, or the (r, A) rule
    // u_n = sqrt(n) for r <= 1, sqrt((r-1)*n*ln n / A) for r > 1.
    bool freq_explicit = false;
    double freq_value = 0.0;
    double freq_r = 0.0;
    double freq_a = 1.0;

    void validate() const;
};

struct EstimateResult {
    double value = 0.0;
    double tuning_used = 0.0; // resolved v_n, u_n or k (0 for realized)
    bool degenerate = false;  // spectral only: |cf| below the log cutoff
};

EstimateResult realized_volatility(const SamplePath& path);
EstimateResult truncated_rv(const SamplePath& path, const EstimatorConfig& cfg);
EstimateResult multipower(const SamplePath& path, const EstimatorConfig& cfg);
EstimateResult spectral_estimator(const SamplePath& path, double u);

// p-th absolute moment of a standard normal, 2^{p/2} Gamma((p+1)/2) / sqrt(pi).
double gaussian_abs_moment(double p);

// (1/n) sum_j exp(i u (X_{j/n} - X_{(j-1)/n})).
std::complex<double> empirical_cf(const SamplePath& path, double u);

double spectral_frequency(std::int64_t n, double r, double a);

// Deterministic spectral bias gamma(u)/u^2 of a time-homogeneous jump part,
// gamma(u) = 2 * integral of (1 - cos(u x)) against the summed Lévy measure;
// closed forms for compound-poisson laws, adaptive quadrature for the
// power-law densities.
double spectral_bias(const std::vector<JumpComponent>& jumps, double u);

// Dispatch on cfg.variant (resolves the spectral frequency from the rule).
EstimateResult estimate(const SamplePath& path, const EstimatorConfig& cfg);

EstimatorConfig estimator_from_config(const Config& cfg, const std::string& prefix);
std::string to_string(EstimatorVariant v);
EstimatorVariant parse_variant(const std::string& s);

} // namespace voltlab
