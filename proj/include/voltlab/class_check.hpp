#pragma once

#include <string>
#include <vector>

#include "voltlab/model.hpp"

namespace voltlab {

struct BoundCheck {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct ClassReport {
    double r = 0.0;
    double a = 0.0;
    std::vector<BoundCheck> checks;
    bool pass = false;
};

// Integral of (|x|^r ∧ 1) against one component's Lévy measure: closed form
// lambda*E(|J|^r ∧ 1) for compound-poisson (expectation by quadrature for
// continuous laws), adaptive quadrature of the power-law density for the
// stable kinds. Returns +inf when the small-jump mass diverges (r <= beta).
double levy_r_integral(const JumpComponent& j, double r);

// Checks sup|b| <= A, sup c <= A and the summed Lévy r-integral <= A;
// quadrature failures propagate as NumericError rather than passing silently.
ClassReport verify_class_membership(const ModelSpec& model, double r, double a);

} // namespace voltlab
