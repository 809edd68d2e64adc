#pragma once

#include <boost/multiprecision/cpp_complex.hpp>

#include "kleinian/relations.hpp"

namespace kleinian {

using Complex = boost::multiprecision::cpp_complex_50;

// Evaluate a polynomial at complex values, one value per ring symbol.
Complex eval_poly(const GradedPoly& p, const std::vector<Complex>& values);

struct PoleProbeOptions {
    uint64_t seed = 7;
    int trials = 3;
    double xi_radius = 0.05;    // strata sample size
    double eps_lo = 1e-7;       // ladder bottom
    double eps_hi = 1e-2;       // ladder top
    int points_per_decade = 2;  // half-decade steps
    std::map<int, Rational> lambda_values;  // random small rationals when empty
};

struct PoleProbeResult {
    double estimated_order = 0.0;  // = -fitted slope
    double fitted_slope = 0.0;
    double fit_residual = 0.0;     // rms residual of the log-log fit
    int decades = 0;
    std::vector<double> eps;       // sample ladder of the reported trial
    std::vector<double> log_values;
    std::vector<double> per_trial_order;
    nlohmann::json to_json() const;
};

// Sample u on the (g-1)-strata at small random complex xi, step off the
// divisor along a random direction, evaluate the cleared form numerically and
// fit log|value| against log eps.
PoleProbeResult pole_order_probe(const WpExpr& e, Compiler& compiler, const PoleProbeOptions& opts);

}  // namespace kleinian
