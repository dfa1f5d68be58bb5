#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace bigjump {

// Adaptive Simpson on [a,b] with absolute tolerance.
// Throws if the recursion budget is exhausted before the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48);

// Integral of f over [a, infinity), a > 0, for integrands decaying at least as
// fast as x^(-decay_index) with decay_index > 1. Substituting
// x = a * u^(-1/(decay_index-1)) maps the tail to a bounded integrand on (0,1].
double adaptive_simpson_to_inf(const std::function<double(double)>& f, double a,
                               double decay_index, double tol, int max_depth = 48);

}  // namespace bigjump
