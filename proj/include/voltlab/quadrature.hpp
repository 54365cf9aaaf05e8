#pragma once

#include <functional>

namespace voltlab {

// Thin adaptive-quadrature wrappers. Each returns the integral and throws
// NumericError when the estimated error exceeds what the requested
// tolerance allows (non-convergence is reported, never silently passed).

// Smooth integrand on a finite interval (adaptive Gauss-Kronrod).
double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10);

// Finite interval with possible integrable endpoint singularities
// (tanh-sinh; nodes never touch the endpoints).
double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10);

// [a, +inf) with decaying integrand (exp-sinh).
double integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               double rel_tol = 1e-10);

} // namespace voltlab
