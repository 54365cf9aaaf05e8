#include <doctest.h>

#include <cmath>
#include <vector>

#include "voltlab/class_check.hpp"
#include "voltlab/errors.hpp"
#include "voltlab/model.hpp"
#include "voltlab/quadrature.hpp"
#include "voltlab/rng.hpp"

using namespace voltlab;

namespace {

JumpComponent cp_jump(JumpLawKind law, double intensity, double param) {
    JumpComponent j;
    j.kind = JumpKind::compound_poisson;
    j.intensity = intensity;
    j.law.kind = law;
    j.law.param = param;
    return j;
}

JumpComponent stable_jump(double beta, double scale, double truncation = 0.0) {
    JumpComponent j;
    j.kind = truncation > 0.0 ? JumpKind::truncated_stable : JumpKind::symmetric_stable;
    j.stable_index = beta;
    j.scale = scale;
    j.truncation = truncation;
    return j;
}

} // namespace

TEST_CASE("quadrature plumbing: smooth, endpoint-singular, semi-infinite") {
    CHECK(integrate_finite([](double x) { return std::sin(x); }, 0.0, 3.14159) ==
          doctest::Approx(1.0 - std::cos(3.14159)).epsilon(1e-12));
    CHECK(integrate_singular([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0) ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }, 2.0) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
    // a wildly oscillatory integrand the fixed-depth rule cannot certify
    CHECK_THROWS_AS(
        (void)integrate_finite([](double x) { return std::cos(3.0e8 * x); }, 0.0, 1.0),
        NumericError);
}

TEST_CASE("compound-poisson capped moments") {
    // two-point at 1: E(|J|^r cap 1) = 1 for any r
    CHECK(levy_r_integral(cp_jump(JumpLawKind::two_point, 1.0, 1.0), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(levy_r_integral(cp_jump(JumpLawKind::two_point, 2.0, 0.5), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12)); // 2 * 0.5
    // standard gaussian law, r = 1/2
    CHECK(levy_r_integral(cp_jump(JumpLawKind::gaussian, 1.0, 1.0), 0.5) ==
          doctest::Approx(0.7513692910660526).epsilon(1e-9));
    // uniform on [-2,2], r = 1/2: (1/2)Int_0^1 sqrt(x) dx + 1/2 = 5/6
    CHECK(levy_r_integral(cp_jump(JumpLawKind::uniform, 1.0, 2.0), 0.5) ==
          doctest::Approx(5.0 / 6.0).epsilon(1e-9));
}

TEST_CASE("stable r-integral: divergence, closed form, truncation") {
    CHECK(std::isinf(levy_r_integral(stable_jump(1.5, 0.5), 1.4)));
    CHECK(std::isinf(levy_r_integral(stable_jump(1.5, 0.5), 1.5)));
    CHECK(std::isinf(levy_r_integral(stable_jump(0.8, 0.3, 0.5), 0.8)));

    // untruncated, r > beta: 2C (1/(r-beta) + 1/beta)
    const double c = stable_levy_constant(1.5, 0.5);
    CHECK(c == doctest::Approx(0.105785546915204).epsilon(1e-12));
    CHECK(levy_r_integral(stable_jump(1.5, 0.5), 1.6) ==
          doctest::Approx(2.256758334191025).epsilon(1e-8));
    CHECK(levy_r_integral(stable_jump(1.5, 0.5), 1.6) ==
          doctest::Approx(2.0 * c * (1.0 / 0.1 + 1.0 / 1.5)).epsilon(1e-8));

    // truncation below 1 keeps only the |x|^r part: 2C tau^{r-beta}/(r-beta)
    const double tau = 0.5, beta = 1.5, r = 1.7;
    const double expected = 2.0 * c * std::pow(tau, r - beta) / (r - beta);
    CHECK(levy_r_integral(stable_jump(beta, 0.5, tau), r) ==
          doctest::Approx(expected).epsilon(1e-8));

    // truncation above 1 includes a flat part on [1, tau]
    const double tau2 = 2.0;
    const double expected2 =
        2.0 * c * (1.0 / (r - beta) + (1.0 - std::pow(tau2, -beta)) / beta);
    CHECK(levy_r_integral(stable_jump(beta, 0.5, tau2), r) ==
          doctest::Approx(expected2).epsilon(1e-8));
}

TEST_CASE("frozen calibration: sigma tuned so the 1.6-integral is 0.5") {
    CHECK(levy_r_integral(stable_jump(1.5, 0.18307398594519041), 1.6) ==
          doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("quadrature r-integral matches the closed form across the class") {
    // randomized property: >= 1000 cases
    Rng rng(501);
    int cases = 0;
    while (cases < 1000) {
        const double beta = rng.uniform(0.3, 1.8);
        const double sigma = rng.uniform(0.1, 1.5);
        const double r = rng.uniform(beta + 0.05, 1.95);
        if (!(r > beta)) continue;
        const double c0 = stable_levy_constant(beta, sigma);
        const double closed = 2.0 * c0 * (1.0 / (r - beta) + 1.0 / beta);
        CHECK(levy_r_integral(stable_jump(beta, sigma), r) ==
              doctest::Approx(closed).epsilon(1e-6));
        // sigma -> 2 sigma multiplies the integral by 2^beta
        const double ratio = stable_levy_constant(beta, 2.0 * sigma) / c0;
        CHECK(ratio == doctest::Approx(std::pow(2.0, beta)).epsilon(1e-10));
        cases += 2;
    }
}

TEST_CASE("class membership report aggregates the three bounds") {
    ModelSpec m;
    m.vol.value = 0.25;
    m.jumps.push_back(stable_jump(1.5, 0.18307398594519041));
    m.class_r = 1.6;
    m.class_a = 0.501; // headroom above the tuned integral value 0.5
    const auto rep = verify_class_membership(m, 1.6, 0.501);
    REQUIRE(rep.checks.size() == 3);
    CHECK(rep.pass);
    for (const auto& chk : rep.checks) CHECK(chk.value <= chk.bound);

    // drift bound violation flips the verdict
    ModelSpec bad = m;
    bad.drift.value = 0.75;
    const auto rep2 = verify_class_membership(bad, 1.6, 0.501);
    CHECK_FALSE(rep2.pass);
    bool drift_flagged = false;
    for (const auto& chk : rep2.checks)
        if (!chk.pass) drift_flagged = true;
    CHECK(drift_flagged);

    // infinite r-integral can never pass
    ModelSpec inf_model = m;
    inf_model.jumps[0].stable_index = 1.7;
    CHECK_FALSE(verify_class_membership(inf_model, 1.6, 100.0).pass);
}
