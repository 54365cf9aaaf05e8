#include "voltlab/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "voltlab/errors.hpp"

namespace voltlab {

namespace {

// Error estimates come back relative to the L1 norm; accept when they are
// small against max(L1, 1) so integrals that are legitimately ~0 (odd
// integrands, cancelling tails) do not spuriously fail a relative test.
void require_converged(double err, double l1, double rel_tol, const char* what) {
    const double scale = std::max(l1, 1.0);
    if (!(err <= 100.0 * rel_tol * scale) || !std::isfinite(err))
        throw NumericError(std::string("quadrature failed to converge (") + what + ")");
}

} // namespace

double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        double rel_tol) {
    double error = 0.0, l1 = 0.0;
    double value = 0.0;
    try {
        value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            f, a, b, 15, rel_tol, &error, &l1);
    } catch (const std::exception& e) {
        throw NumericError(std::string("gauss-kronrod: ") + e.what());
    }
    require_converged(error, l1, rel_tol, "gauss-kronrod");
    return value;
}

double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0, l1 = 0.0;
    double value = 0.0;
    try {
        value = integrator.integrate(f, a, b, rel_tol, &error, &l1);
    } catch (const std::exception& e) {
        throw NumericError(std::string("tanh-sinh: ") + e.what());
    }
    require_converged(error * std::max(l1, 1.0), l1, rel_tol, "tanh-sinh");
    return value;
}

double integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               double rel_tol) {
    boost::math::quadrature::exp_sinh<double> integrator;
    double error = 0.0, l1 = 0.0;
    double value = 0.0;
    try {
        // exp_sinh integrates over (0, inf); shift so the caller's origin is a.
        value = integrator.integrate([&f, a](double t) { return f(a + t); }, rel_tol,
                                     &error, &l1);
    } catch (const std::exception& e) {
        throw NumericError(std::string("exp-sinh: ") + e.what());
    }
    require_converged(error * std::max(l1, 1.0), l1, rel_tol, "exp-sinh");
    return value;
}

} // namespace voltlab
