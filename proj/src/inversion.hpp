#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dielectric.hpp"
#include "types.hpp"

namespace qve {

// A (possibly synthetic) measured ratio spectrum; sigma may be empty.
struct MeasuredTrace {
  std::vector<double> omega;
  std::vector<double> ratio;
  std::vector<double> sigma;
  double eps_r = 1.0;
};

struct GapInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct InversionResult {
  std::vector<double> omega;
  std::vector<double> eps;
  std::vector<std::uint8_t> gapped;
  std::vector<GapInterval> gaps;
};

struct FitResult {
  double eps_r = 1.0;
  double omega_x = 0.0;
  double g = 0.0;
  double rss = 0.0;
  int iterations = 0;
  bool converged = false;
  double stderr_omega_x = 0.0;
  double stderr_g = 0.0;
};

struct FitBounds {
  double omega_x_lo, omega_x_hi;
  double g_lo, g_hi;
};

// Algebraic inversion eps(omega) = eps_r / ratio^2 wherever ratio exceeds the
// gap threshold; contiguous below-threshold runs reported as gap intervals.
InversionResult invert_ratio(const MeasuredTrace& trace,
                             double gap_threshold = 0.02);

// Damped Gauss-Newton weighted least squares of the single-oscillator ratio
// model against the trace; analytic Jacobian; deterministic.
FitResult fit_lorentz(const MeasuredTrace& trace, double guess_omega_x,
                      double guess_g, const FitBounds& bounds,
                      double gap_threshold = 0.02, int max_iterations = 200);

// Forward model plus multiplicative Gaussian noise, clipped at zero;
// reproducible per seed.
MeasuredTrace synthesize_measurement(const DielectricModel& model,
                                     std::span<const double> omega_grid,
                                     double noise_sigma, std::uint64_t seed);

}  // namespace qve
