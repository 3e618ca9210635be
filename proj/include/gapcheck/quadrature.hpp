#pragma once

#include <functional>

namespace gapcheck {

// Adaptive Simpson with Richardson correction. tol is absolute; subdivision
// stops once the local error estimate is below the interval's share of it.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-10,
                 int max_depth = 60);

// Same integrand sampled in t = log(rho): int_a^b f(rho) drho with
// a > 0. Used where the radial range spans many decades.
double integrate_log(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-10);

}  // namespace gapcheck
