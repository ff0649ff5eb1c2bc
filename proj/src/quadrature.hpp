#pragma once

#include <functional>

namespace qve {

// Adaptive Gauss-Kronrod panels; absolute/relative target 1e-9 by default.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-9);

}  // namespace qve
