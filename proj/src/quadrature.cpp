#include "quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qve {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 15, rel_tol);
}

}  // namespace qve
