#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "voltlab/config.hpp"
#include "voltlab/errors.hpp"
#include "voltlab/estimators.hpp"
#include "voltlab/model.hpp"
#include "voltlab/quadrature.hpp"
#include "voltlab/rng.hpp"
#include "voltlab/simulate.hpp"

using namespace voltlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

SamplePath make_path(std::vector<double> values) {
    SamplePath p;
    p.n = static_cast<std::int64_t>(values.size()) - 1;
    p.values = std::move(values);
    return p;
}

SamplePath random_path(Rng& rng, std::int64_t n, double scale = 1.0) {
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t i = 1; i < v.size(); ++i)
        v[i] = v[i - 1] + scale * rng.gaussian();
    return make_path(std::move(v));
}

EstimatorConfig truncated_cfg(double varpi, double scale) {
    EstimatorConfig c;
    c.variant = EstimatorVariant::truncated;
    c.varpi = varpi;
    c.trunc_scale = scale;
    return c;
}

EstimatorConfig multipower_cfg(int k) {
    EstimatorConfig c;
    c.variant = EstimatorVariant::multipower;
    c.k = k;
    return c;
}

JumpComponent two_point_jump(double intensity, double param) {
    JumpComponent j;
    j.kind = JumpKind::compound_poisson;
    j.intensity = intensity;
    j.law.kind = JumpLawKind::two_point;
    j.law.param = param;
    return j;
}

} // namespace

TEST_CASE("realized volatility sums squared increments") {
    CHECK(realized_volatility(make_path({0, 1, 0, 2})).value == 6.0);
    CHECK(realized_volatility(make_path({0, 1})).value == 1.0);
    CHECK_THROWS_AS((void)realized_volatility(SamplePath{}), ConfigError);
}

TEST_CASE("truncated rv drops increments above the threshold") {
    // pick trunc_scale so the resolved threshold at n = 3 is exactly 1.5
    const double varpi = 0.49;
    const auto cfg = truncated_cfg(varpi, 1.5 * std::pow(3.0, varpi));
    const auto res = truncated_rv(make_path({0, 1, 0, 2}), cfg);
    CHECK(res.value == 2.0);
    CHECK(res.tuning_used == doctest::Approx(1.5).epsilon(1e-12));

    // huge threshold: equals realized volatility
    const auto loose = truncated_rv(make_path({0, 1, 0, 2}), truncated_cfg(0.49, 100.0));
    CHECK(loose.value == 6.0);
}

TEST_CASE("multipower matches hand-computed bipower and tripower values") {
    const auto bi = multipower(make_path({0, 1, 2, 4}), multipower_cfg(2));
    CHECK(bi.value == doctest::Approx(3.0 * kPi / 2.0).epsilon(1e-12));
    CHECK(bi.value == doctest::Approx(4.71238898038469).epsilon(1e-12));

    const auto tri = multipower(make_path({0, 1, 3, 2, 4}), multipower_cfg(3));
    CHECK(tri.value == doctest::Approx(7.950770098169855).epsilon(1e-12));

    CHECK_THROWS_AS((void)multipower(make_path({0, 1}), multipower_cfg(3)), ConfigError);
}

TEST_CASE("gaussian absolute moments: closed forms and a monte carlo check") {
    CHECK(gaussian_abs_moment(2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gaussian_abs_moment(4.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(gaussian_abs_moment(6.0) == doctest::Approx(15.0).epsilon(1e-13));
    CHECK(gaussian_abs_moment(1.0) == doctest::Approx(0.7978845608028654).epsilon(1e-14));
    CHECK(gaussian_abs_moment(3.0) ==
          doctest::Approx(2.0 * 0.7978845608028654).epsilon(1e-14));
    CHECK(gaussian_abs_moment(2.0 / 3.0) ==
          doctest::Approx(0.8023805748753307).epsilon(1e-14));
    CHECK_THROWS_AS((void)gaussian_abs_moment(0.0), ConfigError);

    Rng rng(601);
    double sum = 0.0;
    const int m = 200000;
    for (int i = 0; i < m; ++i) sum += std::pow(std::fabs(rng.gaussian()), 2.0 / 3.0);
    CHECK(sum / m == doctest::Approx(0.8023805748753307).epsilon(0.005));
}

TEST_CASE("empirical cf: unit modulus bound and exact value at zero") {
    // randomized property: >= 1000 cases
    Rng rng(602);
    int cases = 0;
    for (int p = 0; p < 100; ++p) {
        const auto path = random_path(rng, 32);
        CHECK(empirical_cf(path, 0.0) == std::complex<double>(1.0, 0.0));
        for (int q = 0; q < 10; ++q) {
            const double u = rng.uniform(-50.0, 50.0);
            CHECK(std::abs(empirical_cf(path, u)) <= 1.0 + 1e-12);
            ++cases;
        }
    }
    CHECK(cases >= 1000);
}

TEST_CASE("spectral estimator reproduces its defining formula") {
    const auto path = make_path({0, 1, 0, 2});
    const double u = 1.0;
    const std::complex<double> cf =
        (std::exp(std::complex<double>(0, u * 1.0)) +
         std::exp(std::complex<double>(0, u * -1.0)) +
         std::exp(std::complex<double>(0, u * 2.0))) /
        3.0;
    const double expected = -2.0 * 3.0 / (u * u) * std::log(std::abs(cf));
    const auto res = spectral_estimator(path, u);
    CHECK(res.value == doctest::Approx(expected).epsilon(1e-13));
    CHECK(res.tuning_used == u);
    CHECK_FALSE(res.degenerate);
}

TEST_CASE("spectral estimator flags a vanishing empirical cf as degenerate") {
    // increments pi and 0 at u = 1: cf = (e^{i pi} + 1)/2 = 0
    const auto res = spectral_estimator(make_path({0, kPi, kPi}), 1.0);
    CHECK(res.degenerate);
    CHECK(res.value == 0.0);
}

TEST_CASE("spectral estimator is consistent on a brownian path") {
    ModelSpec m;
    m.vol.value = 1.0;
    double sum = 0.0;
    const int reps = 50;
    for (int p = 0; p < reps; ++p) {
        const auto sp = simulate_path(m, 4096, stream_key(603, 4096, p, 0));
        sum += spectral_estimator(sp, 32.0).value;
    }
    CHECK(sum / reps == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("frequency rule: sqrt n below r = 1, scaled log rule above") {
    CHECK(spectral_frequency(100, 1.0, 7.0) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(spectral_frequency(100, 0.3, 1.0) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(spectral_frequency(100, 1.5, 1.0) ==
          doctest::Approx(15.174271293851464).epsilon(1e-12));
    // quadrupling A halves the frequency
    CHECK(spectral_frequency(100, 1.5, 4.0) ==
          doctest::Approx(15.174271293851464 / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)spectral_frequency(1, 1.5, 1.0), ConfigError);
    CHECK_THROWS_AS((void)spectral_frequency(100, 2.0, 1.0), ConfigError);
    CHECK_THROWS_AS((void)spectral_frequency(100, 1.5, 0.0), ConfigError);
}

TEST_CASE("bias closed forms: two-point, gaussian, uniform laws") {
    // two-point at 1, intensity 1: bias(pi) = 2(1-cos(pi))/pi^2 = 4/pi^2
    const double atom = spectral_bias({two_point_jump(1.0, 1.0)}, kPi);
    CHECK(std::fabs(atom - 0.4052847345693511) < 1e-10);

    JumpComponent g;
    g.kind = JumpKind::compound_poisson;
    g.intensity = 2.0;
    g.law.kind = JumpLawKind::gaussian;
    g.law.param = 0.7;
    const double u1 = 1.3;
    const double g_expected =
        2.0 * 2.0 * (1.0 - std::exp(-0.7 * 0.7 * u1 * u1 / 2.0)) / (u1 * u1);
    CHECK(spectral_bias({g}, u1) == doctest::Approx(g_expected).epsilon(1e-12));

    JumpComponent un;
    un.kind = JumpKind::compound_poisson;
    un.intensity = 1.5;
    un.law.kind = JumpLawKind::uniform;
    un.law.param = 2.0;
    const double u2 = 0.9;
    const double u_expected =
        2.0 * 1.5 * (1.0 - std::sin(u2 * 2.0) / (u2 * 2.0)) / (u2 * u2);
    CHECK(spectral_bias({un}, u2) == doctest::Approx(u_expected).epsilon(1e-12));

    // additivity over components
    CHECK(spectral_bias({g, un}, 1.1) ==
          doctest::Approx(spectral_bias({g}, 1.1) + spectral_bias({un}, 1.1))
              .epsilon(1e-12));
}

TEST_CASE("stable bias quadrature matches 2 sigma^b |u|^b") {
    for (const double beta : {0.5, 1.0, 1.5, 1.9}) {
        for (const double u : {1.0, 5.0, 20.0}) {
            JumpComponent j;
            j.kind = JumpKind::symmetric_stable;
            j.stable_index = beta;
            j.scale = 0.5;
            const double gamma = u * u * spectral_bias({j}, u);
            CHECK(gamma == doctest::Approx(2.0 * std::pow(0.5, beta) * std::pow(u, beta))
                               .epsilon(1e-7));
        }
    }
}

TEST_CASE("truncated stable bias matches a direct singular quadrature") {
    struct Case {
        double beta, tau, u;
    };
    for (const auto& c : {Case{1.5, 1.0, 7.3}, Case{0.8, 0.5, 3.1}, Case{1.2, 2.0, 1.7}}) {
        JumpComponent j;
        j.kind = JumpKind::truncated_stable;
        j.stable_index = c.beta;
        j.scale = 0.6;
        j.truncation = c.tau;
        const double cc = stable_levy_constant(c.beta, 0.6);
        const double direct =
            2.0 * 2.0 * cc *
            integrate_singular(
                [&c](double x) {
                    // 2 sin^2(ux/2)/x^2 form avoids 0 * inf near the origin
                    const double s = std::sin(0.5 * c.u * x) / x;
                    return 2.0 * s * s * std::pow(x, 1.0 - c.beta);
                },
                0.0, c.tau, 1e-12);
        CHECK(c.u * c.u * spectral_bias({j}, c.u) ==
              doctest::Approx(direct).epsilon(1e-6));
    }
}

TEST_CASE("estimators are translation invariant and scale quadratically") {
    // randomized property: >= 1000 cases
    Rng rng(604);
    int cases = 0;
    for (int p = 0; p < 250; ++p) {
        // values and shift live on a 2^-20 lattice so v + shift is exact in
        // floating point and translated increments are bit-identical
        auto path = random_path(rng, 24);
        for (auto& v : path.values) v = std::round(v * 1048576.0) / 1048576.0;
        const double shift = std::round(rng.uniform(-5.0, 5.0) * 1048576.0) / 1048576.0;
        auto shifted = path;
        for (auto& v : shifted.values) v += shift;

        CHECK(realized_volatility(shifted).value == realized_volatility(path).value);
        const auto tc = truncated_cfg(0.3, 2.0);
        CHECK(truncated_rv(shifted, tc).value == truncated_rv(path, tc).value);
        CHECK(multipower(shifted, multipower_cfg(2)).value ==
              multipower(path, multipower_cfg(2)).value);
        CHECK(spectral_estimator(shifted, 3.0).value ==
              spectral_estimator(path, 3.0).value);

        const double s = rng.uniform(0.5, 2.0);
        auto scaled = path;
        for (auto& v : scaled.values) v *= s;
        CHECK(realized_volatility(scaled).value ==
              doctest::Approx(s * s * realized_volatility(path).value).epsilon(1e-12));
        CHECK(multipower(scaled, multipower_cfg(2)).value ==
              doctest::Approx(s * s * multipower(path, multipower_cfg(2)).value)
                  .epsilon(1e-12));
        cases += 6;
    }
    CHECK(cases >= 1000);
}

TEST_CASE("truncation only ever removes mass") {
    // randomized property: >= 1000 cases
    Rng rng(605);
    for (int p = 0; p < 1000; ++p) {
        const auto path = random_path(rng, 16, rng.uniform(0.1, 3.0));
        const double rv = realized_volatility(path).value;
        const double tight = truncated_rv(path, truncated_cfg(0.45, 0.5)).value;
        const double loose = truncated_rv(path, truncated_cfg(0.45, 1.5)).value;
        CHECK(tight <= loose);
        CHECK(loose <= rv);
    }
}

TEST_CASE("estimate() dispatches and resolves the rule frequency") {
    const auto path = make_path({0, 1, 0, 2});
    EstimatorConfig cfg;
    cfg.variant = EstimatorVariant::realized;
    CHECK(estimate(path, cfg).value == 6.0);

    cfg.variant = EstimatorVariant::spectral;
    cfg.freq_explicit = true;
    cfg.freq_value = 1.0;
    CHECK(estimate(path, cfg).value ==
          doctest::Approx(spectral_estimator(path, 1.0).value).epsilon(1e-14));

    cfg.freq_explicit = false;
    cfg.freq_r = 0.5;
    cfg.freq_a = 1.0;
    const auto ruled = estimate(path, cfg);
    CHECK(ruled.tuning_used == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("estimator config: parsing, defaults and validation") {
    CHECK(parse_variant("realized") == EstimatorVariant::realized);
    CHECK(parse_variant("truncated") == EstimatorVariant::truncated);
    CHECK(parse_variant("multipower") == EstimatorVariant::multipower);
    CHECK(parse_variant("spectral") == EstimatorVariant::spectral);
    CHECK_THROWS_AS((void)parse_variant("nope"), ConfigError);
    for (const auto v : {EstimatorVariant::realized, EstimatorVariant::truncated,
                         EstimatorVariant::multipower, EstimatorVariant::spectral})
        CHECK(parse_variant(to_string(v)) == v);

    const auto cfg = Config::from_string("est.variant = truncated\n"
                                         "est.varpi = 0.3\n"
                                         "est.trunc_scale = 2.5\n");
    const auto ec = estimator_from_config(cfg, "est");
    CHECK(ec.variant == EstimatorVariant::truncated);
    CHECK(ec.varpi == 0.3);
    CHECK(ec.trunc_scale == 2.5);

    const auto cfg2 = Config::from_string("e.variant = spectral\ne.freq.value = 7\n");
    const auto sc = estimator_from_config(cfg2, "e");
    CHECK(sc.freq_explicit);
    CHECK(sc.freq_value == 7.0);

    EstimatorConfig bad;
    bad.variant = EstimatorVariant::truncated;
    bad.varpi = 0.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.varpi = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = EstimatorConfig{};
    bad.variant = EstimatorVariant::multipower;
    bad.k = 1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = EstimatorConfig{};
    bad.variant = EstimatorVariant::spectral;
    bad.freq_explicit = true;
    bad.freq_value = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}
