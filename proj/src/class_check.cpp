#include "voltlab/class_check.hpp"

#include <cmath>
#include <limits>

#include "voltlab/errors.hpp"
#include "voltlab/quadrature.hpp"

namespace voltlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// E(|J|^r ∧ 1) for one compound-poisson jump.
double capped_moment(const JumpLaw& law, double r) {
    switch (law.kind) {
        case JumpLawKind::two_point:
            return std::min(std::pow(law.param, r), 1.0);
        case JumpLawKind::gaussian: {
            const double sd = law.param;
            const double body = integrate_singular(
                [r, sd](double x) {
                    const double z = x / sd;
                    return std::pow(x, r) * std::sqrt(2.0 / kPi) / sd *
                           std::exp(-0.5 * z * z);
                },
                0.0, 1.0);
            const double tail = std::erfc(1.0 / (sd * std::sqrt(2.0)));
            return body + tail;
        }
        case JumpLawKind::uniform: {
            const double a = law.param;
            const double hi = std::min(a, 1.0);
            const double body =
                integrate_singular([r](double x) { return std::pow(x, r); }, 0.0, hi) / a;
            const double flat = a > 1.0 ? (a - 1.0) / a : 0.0;
            return body + flat;
        }
    }
    throw ConfigError("unknown jump law");
}

} // namespace

double levy_r_integral(const JumpComponent& j, double r) {
    if (!(r >= 0.0 && r < 2.0)) throw ConfigError("r must lie in [0,2)");
    switch (j.kind) {
        case JumpKind::compound_poisson:
            return j.intensity * capped_moment(j.law, r);
        case JumpKind::symmetric_stable:
        case JumpKind::truncated_stable: {
            if (j.scale == 0.0) return 0.0;
            const double beta = j.stable_index;
            if (r <= beta) return kInf; // x^{r-1-beta} non-integrable at 0
            const double c = stable_levy_constant(beta, j.scale);
            const double cut =
                j.kind == JumpKind::truncated_stable ? j.truncation : kInf;
            const double inner_hi = std::min(cut, 1.0);
            double total = integrate_singular(
                [r, beta](double x) { return std::pow(x, r - 1.0 - beta); }, 0.0,
                inner_hi);
            if (cut > 1.0) {
                auto tail = [beta](double x) { return std::pow(x, -1.0 - beta); };
                total += std::isinf(cut) ? integrate_semi_infinite(tail, 1.0)
                                         : integrate_finite(tail, 1.0, cut);
            }
            return 2.0 * c * total;
        }
    }
    throw ConfigError("unknown jump kind");
}

ClassReport verify_class_membership(const ModelSpec& model, double r, double a) {
    if (!(a > 0.0)) throw ConfigError("class bound A must be > 0");
    model.validate();
    ClassReport report;
    report.r = r;
    report.a = a;

    const double sup_b = model.drift.sup_abs();
    report.checks.push_back({"sup |drift|", sup_b, a, sup_b <= a});

    const double sup_c = model.vol.sup();
    report.checks.push_back({"sup volatility", sup_c, a, sup_c <= a});

    double levy = 0.0;
    for (const auto& j : model.jumps) levy += levy_r_integral(j, r);
    report.checks.push_back({"levy r-integral", levy, a, levy <= a});

    report.pass = true;
    for (const auto& c : report.checks) report.pass = report.pass && c.pass;
    return report;
}

} // namespace voltlab
