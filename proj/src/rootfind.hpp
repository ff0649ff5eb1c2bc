#pragma once

#include <functional>

namespace qve {

// Bracketed root finding: bisection with a safeguarded secant step.
// f(a) and f(b) must have opposite signs. Converges to relative width
// rel_tol on the bracket; the returned abscissa is the final midpoint.
double find_root(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13);

}  // namespace qve
