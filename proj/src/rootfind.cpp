#include "rootfind.hpp"

#include <algorithm>
#include <cmath>

#include "types.hpp"

namespace qve {

double find_root(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw Error(ErrorCode::numerical, "find_root: root not bracketed");

  for (int it = 0; it < 400; ++it) {
    double mid = 0.5 * (a + b);
    double width = b - a;
    if (width <= rel_tol * std::abs(mid) || width <= 1e-300) return mid;

    // Secant candidate, accepted only if it lands safely inside the bracket.
    double x = mid;
    double denom = fb - fa;
    if (denom != 0.0) {
      double s = b - fb * (b - a) / denom;
      double guard = 0.01 * width;
      if (s > a + guard && s < b - guard) x = s;
    }
    double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace qve
