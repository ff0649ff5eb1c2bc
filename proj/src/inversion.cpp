#include "inversion.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "eos.hpp"

namespace qve {

namespace {

void validate_trace(const MeasuredTrace& trace) {
  if (trace.omega.empty())
    throw Error(ErrorCode::empty_trace, "trace has no samples");
  if (trace.omega.size() != trace.ratio.size())
    throw Error(ErrorCode::invalid_argument,
                "omega and ratio grids differ in length");
  if (!trace.sigma.empty() && trace.sigma.size() != trace.omega.size())
    throw Error(ErrorCode::invalid_argument, "sigma grid length mismatch");
  for (std::size_t i = 1; i < trace.omega.size(); ++i)
    if (!(trace.omega[i] > trace.omega[i - 1]))
      throw Error(ErrorCode::invalid_argument,
                  "frequency grid must be strictly increasing");
  for (double s : trace.sigma)
    if (!(s >= 0.0))
      throw Error(ErrorCode::invalid_argument, "sigma must be >= 0");
  if (!(trace.eps_r > 0.0))
    throw Error(ErrorCode::invalid_argument, "eps_r must be > 0");
}

// Single-oscillator ratio model and its analytic Jacobian. Returns 0 with a
// zero gradient for frequencies inside the model's gap.
double model_ratio(double omega, double omega_x, double g, double* d_omega_x,
                   double* d_g) {
  double den = omega * omega - omega_x * omega_x;
  double u = 4.0 * g * g / den;
  double e = 1.0 - u;
  if (!(e > 1e-12) || den == 0.0) {
    if (d_omega_x) *d_omega_x = 0.0;
    if (d_g) *d_g = 0.0;
    return 0.0;
  }
  double r = 1.0 / std::sqrt(e);
  double r3 = r * r * r;
  if (d_omega_x) *d_omega_x = 0.5 * r3 * 8.0 * g * g * omega_x / (den * den);
  if (d_g) *d_g = 0.5 * r3 * 8.0 * g / den;
  return r;
}

bool solve2x2(double a11, double a12, double a22, double b1, double b2,
              double* x1, double* x2) {
  double det = a11 * a22 - a12 * a12;
  double scale = std::max(std::abs(a11), std::abs(a22));
  if (scale == 0.0 || std::abs(det) < 1e-300 * scale) return false;
  *x1 = (b1 * a22 - b2 * a12) / det;
  *x2 = (a11 * b2 - a12 * b1) / det;
  return true;
}

}  // namespace

InversionResult invert_ratio(const MeasuredTrace& trace, double gap_threshold) {
  validate_trace(trace);
  InversionResult res;
  res.omega = trace.omega;
  res.eps.resize(trace.omega.size(), 0.0);
  res.gapped.resize(trace.omega.size(), 0);

  std::size_t n_gapped = 0;
  for (std::size_t i = 0; i < trace.omega.size(); ++i) {
    if (trace.ratio[i] > gap_threshold) {
      res.eps[i] = trace.eps_r / (trace.ratio[i] * trace.ratio[i]);
    } else {
      res.gapped[i] = 1;
      ++n_gapped;
    }
  }
  if (n_gapped == trace.omega.size())
    throw Error(ErrorCode::all_gapped, "no sample exceeds the gap threshold");

  // Contiguous below-threshold runs; edges estimated at the run boundaries.
  std::size_t i = 0;
  while (i < res.gapped.size()) {
    if (!res.gapped[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < res.gapped.size() && res.gapped[j + 1]) ++j;
    res.gaps.push_back({trace.omega[i], trace.omega[j]});
    i = j + 1;
  }
  return res;
}

FitResult fit_lorentz(const MeasuredTrace& trace, double guess_omega_x,
                      double guess_g, const FitBounds& bounds,
                      double gap_threshold, int max_iterations) {
  validate_trace(trace);
  if (!(bounds.omega_x_lo < bounds.omega_x_hi) ||
      !(bounds.g_lo < bounds.g_hi))
    throw Error(ErrorCode::invalid_argument, "invalid parameter bounds");
  if (guess_omega_x < bounds.omega_x_lo || guess_omega_x > bounds.omega_x_hi ||
      guess_g < bounds.g_lo || guess_g > bounds.g_hi)
    throw Error(ErrorCode::invalid_argument, "initial guess outside bounds");

  // Usable points and weights. Band-edge-adjacent samples are down-weighted
  // by their distance to the nearest detected gap boundary.
  InversionResult inv = invert_ratio(trace, gap_threshold);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < trace.omega.size(); ++i)
    if (!inv.gapped[i]) idx.push_back(i);
  if (idx.size() < 3)
    throw Error(ErrorCode::invalid_argument,
                "need at least 3 non-gapped samples");

  double span = trace.omega.back() - trace.omega.front();
  double step = span / static_cast<double>(trace.omega.size() - 1);
  std::vector<double> weight(idx.size(), 1.0);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    std::size_t i = idx[j];
    if (!trace.sigma.empty() && trace.sigma[i] > 0.0)
      weight[j] = 1.0 / trace.sigma[i];
    double d = span;
    for (const auto& gap : inv.gaps) {
      d = std::min(d, std::abs(trace.omega[i] - gap.lo));
      d = std::min(d, std::abs(trace.omega[i] - gap.hi));
    }
    if (!inv.gaps.empty()) weight[j] *= d / (d + step);
  }

  double wx = guess_omega_x;
  double g = guess_g;

  auto residual_sum = [&](double pwx, double pg) {
    double s = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      std::size_t i = idx[j];
      double r = weight[j] *
                 (model_ratio(trace.omega[i], pwx, pg, nullptr, nullptr) -
                  trace.ratio[i]);
      s += r * r;
    }
    return s;
  };

  double rss = residual_sum(wx, g);
  double lambda = 1e-3;
  bool converged = false;
  int it = 0;
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;

  for (; it < max_iterations; ++it) {
    a11 = a12 = a22 = 0.0;
    double g1 = 0.0, g2 = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      std::size_t i = idx[j];
      double dwx, dg;
      double m = model_ratio(trace.omega[i], wx, g, &dwx, &dg);
      double r = weight[j] * (m - trace.ratio[i]);
      dwx *= weight[j];
      dg *= weight[j];
      a11 += dwx * dwx;
      a12 += dwx * dg;
      a22 += dg * dg;
      g1 += dwx * r;
      g2 += dg * r;
    }
    double gnorm = std::max(std::abs(g1), std::abs(g2));
    if (gnorm < 1e-10 * std::max(1.0, rss)) {
      converged = true;
      break;
    }
    if (a11 == 0.0 && a22 == 0.0)
      throw Error(ErrorCode::singular_jacobian,
                  "Jacobian vanishes at the current iterate");

    // Levenberg-damped step; accepted only if the objective decreases.
    bool accepted = false;
    for (int inner = 0; inner < 40; ++inner) {
      double s1, s2;
      if (!solve2x2(a11 * (1.0 + lambda), a12, a22 * (1.0 + lambda), -g1, -g2,
                    &s1, &s2)) {
        lambda *= 4.0;
        continue;
      }
      double twx = std::clamp(wx + s1, bounds.omega_x_lo, bounds.omega_x_hi);
      double tg = std::clamp(g + s2, bounds.g_lo, bounds.g_hi);
      double trial = residual_sum(twx, tg);
      if (trial < rss) {
        wx = twx;
        g = tg;
        rss = trial;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e14) break;
    }
    if (!accepted) {
      // No descent direction left: stationary within numerical precision.
      converged = true;
      break;
    }
  }

  if (!converged)
    throw Error(ErrorCode::non_convergence,
                "fit did not converge within the iteration limit");

  FitResult out;
  out.eps_r = trace.eps_r;
  out.omega_x = wx;
  out.g = g;
  out.rss = rss;
  out.iterations = it;
  out.converged = converged;

  // Parameter standard errors from the local quadratic model.
  double det = a11 * a22 - a12 * a12;
  if (det > 0.0 && idx.size() > 2) {
    double s2 = rss / static_cast<double>(idx.size() - 2);
    out.stderr_omega_x = std::sqrt(std::max(0.0, s2 * a22 / det));
    out.stderr_g = std::sqrt(std::max(0.0, s2 * a11 / det));
  }
  return out;
}

MeasuredTrace synthesize_measurement(const DielectricModel& model,
                                     std::span<const double> omega_grid,
                                     double noise_sigma, std::uint64_t seed) {
  if (!(noise_sigma >= 0.0))
    throw Error(ErrorCode::invalid_argument, "noise sigma must be >= 0");
  MeasuredTrace trace;
  trace.eps_r = model.eps_r();
  trace.omega.assign(omega_grid.begin(), omega_grid.end());
  trace.ratio.reserve(omega_grid.size());
  if (noise_sigma > 0.0)
    trace.sigma.assign(omega_grid.size(), noise_sigma);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double w : omega_grid) {
    double r = ratio_value(model, w, nullptr);
    if (noise_sigma > 0.0) r *= 1.0 + noise_sigma * normal(rng);
    trace.ratio.push_back(std::max(0.0, r));
  }
  return trace;
}

}  // namespace qve
