#include "eos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quadrature.hpp"

namespace qve {

FilterModel FilterModel::gaussian(double t_p) {
  if (!(t_p > 0.0))
    throw Error(ErrorCode::invalid_argument, "t_p must be > 0");
  return FilterModel(Kind::gaussian_autocorrelation, t_p);
}

FilterModel FilterModel::rect(double omega_c) {
  if (!(omega_c > 0.0))
    throw Error(ErrorCode::invalid_argument, "omega_c must be > 0");
  return FilterModel(Kind::rect_lowpass, omega_c);
}

double FilterModel::response(double omega) const {
  switch (kind_) {
    case Kind::identity:
      return 1.0;
    case Kind::gaussian_autocorrelation:
      return std::exp(-omega * omega * param_ * param_ / 4.0);
    case Kind::rect_lowpass:
      return std::abs(omega) <= param_ ? 1.0 : 0.0;
  }
  return 1.0;
}

double FilterModel::cutoff(double floor) const {
  switch (kind_) {
    case Kind::identity:
      throw Error(ErrorCode::divergent_integral,
                  "identity filter does not decay");
    case Kind::gaussian_autocorrelation:
      return std::sqrt(-2.0 * std::log(floor)) / param_;
    case Kind::rect_lowpass:
      return param_;
  }
  return 0.0;
}

double vacuum_spectrum(const PhysicalConstants& pc, const Geometry& geom,
                       double eps_r, const FilterModel& filter, double omega) {
  pc.validate();
  geom.validate();
  if (!(eps_r > 0.0))
    throw Error(ErrorCode::invalid_argument, "eps_r must be > 0");
  double r = filter.response(omega);
  return pc.hbar * std::abs(omega) * r * r /
         (4.0 * pc.eps0 * std::sqrt(eps_r) * pc.c * geom.surface);
}

double polariton_spectrum(const DielectricModel& model,
                          const PhysicalConstants& pc, const Geometry& geom,
                          const FilterModel& filter, double omega) {
  pc.validate();
  geom.validate();
  double eps;
  try {
    eps = model.epsilon(omega);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::pole_proximity) return 0.0;  // gap edge
    throw;
  }
  if (eps <= 0.0) return 0.0;  // gapped: no propagative modes
  if (eps < 1e-9 * model.eps_r())
    throw Error(ErrorCode::band_edge,
                "eps(omega) below positivity floor at a band edge");
  double r = filter.response(omega);
  return pc.hbar * std::abs(omega) * r * r /
         (4.0 * pc.eps0 * std::sqrt(eps) * pc.c * geom.surface);
}

std::vector<DiscreteWeight> discrete_spectrum_weights(
    const DielectricModel& model, const PhysicalConstants& pc,
    const Geometry& geom, const FilterModel& filter,
    std::span<const double> ks) {
  pc.validate();
  geom.validate();
  std::vector<DiscreteWeight> out;
  for (double k : ks) {
    for (const ModeSolution& m : mode_solutions(model, pc, k)) {
      double eps = model.epsilon(m.omega);
      double r = filter.response(m.omega);
      double w = std::numbers::pi * pc.hbar * m.bare_frequency *
                 m.group_velocity * r * r /
                 (2.0 * pc.eps0 * eps * pc.c * geom.volume());
      out.push_back({k, m.branch, m.omega, w});
    }
  }
  return out;
}

namespace {

// Integration intervals in (0, omega_max): whole interval for the vacuum,
// propagative bands with gaps excised for the polariton case.
std::vector<Band> integration_domain(const DielectricModel* model,
                                     double omega_max) {
  if (!model || model->is_constant()) return {{0.0, omega_max}};
  double top = model->oscillators().back().omega;
  double hi = std::max(omega_max, 2.0 * top);
  BandStructure bs = model->propagative_bands(hi);
  std::vector<Band> out;
  for (const auto& b : bs.bands) {
    if (b.lo >= omega_max) continue;
    out.push_back({b.lo, std::min(b.hi, omega_max)});
  }
  return out;
}

}  // namespace

TimeTrace time_correlation(const DielectricModel* model, double eps_r,
                           const PhysicalConstants& pc, const Geometry& geom,
                           const FilterModel& filter,
                           std::span<const double> tau_grid,
                           double omega_max) {
  pc.validate();
  geom.validate();
  if (!filter.decays())
    throw Error(ErrorCode::divergent_integral,
                "time correlation requires a decaying filter");
  if (!(omega_max > 0.0))
    throw Error(ErrorCode::invalid_argument, "omega_max must be > 0");
  double rmax = filter.response(omega_max);
  if (rmax * rmax >= 1e-12)
    throw Error(ErrorCode::invalid_argument,
                "omega_max too small: |R(omega_max)|^2 must be < 1e-12");

  auto density = [&](double w) {
    return model ? polariton_spectrum(*model, pc, geom, filter, w)
                 : vacuum_spectrum(pc, geom, eps_r, filter, w);
  };

  std::vector<Band> domain = integration_domain(model, omega_max);
  double rel = model ? model->pole_exclusion() : 0.0;

  TimeTrace trace;
  trace.tau.assign(tau_grid.begin(), tau_grid.end());
  trace.value.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    double acc = 0.0;
    for (const auto& band : domain) {
      double a = band.lo;
      double b = band.hi * (band.hi == omega_max ? 1.0 : 1.0 - 2.0 * rel);
      if (!(a < b)) continue;
      if (a == 0.0) {
        acc += integrate(
            [&](double w) { return density(w) * std::cos(w * tau); }, a, b);
      } else {
        // Lower band edges sit at zeros of eps where the density diverges as
        // an inverse square root; omega = a + u^2 regularizes the endpoint.
        // The density is evaluated inline (not via polariton_spectrum, whose
        // band-edge guard would reject quadrature nodes arbitrarily close to
        // the edge where the substituted integrand is perfectly finite).
        double u1 = std::sqrt(b - a);
        double prefac =
            pc.hbar / (4.0 * pc.eps0 * pc.c * geom.surface);
        acc += integrate(
            [&](double u) {
              double w = a + u * u;
              double eps;
              try {
                eps = model->epsilon(w);
              } catch (const Error& e) {
                // A band edge at an isolated pole (g = 0): eps -> +inf there,
                // the density vanishes.
                if (e.code() == ErrorCode::pole_proximity) return 0.0;
                throw;
              }
              double r = filter.response(w);
              return 2.0 * u * prefac * w * r * r / std::sqrt(eps) *
                     std::cos(w * tau);
            },
            0.0, u1);
      }
    }
    trace.value.push_back(2.0 * acc / std::numbers::pi);
  }
  return trace;
}

double ratio_value(const DielectricModel& model, double omega, int* status) {
  int st = 0;
  double value = 0.0;
  double eps;
  bool at_pole = false;
  try {
    eps = model.epsilon(omega);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::pole_proximity) throw;
    at_pole = true;
    eps = 0.0;
  }
  if (at_pole || eps <= 0.0) {
    st = 1;  // gap
  } else if (eps < 1e-9 * model.eps_r()) {
    st = 2;  // band edge: genuinely divergent, reported missing
  } else {
    value = std::sqrt(model.eps_r() / eps);
  }
  if (status) *status = st;
  return value;
}

SpectrumTrace ratio_spectrum(const DielectricModel& model,
                             std::span<const double> omega_grid) {
  SpectrumTrace trace;
  trace.quantity = TraceQuantity::ratio;
  trace.omega.assign(omega_grid.begin(), omega_grid.end());
  trace.value.reserve(omega_grid.size());
  trace.missing.reserve(omega_grid.size());
  for (double w : omega_grid) {
    int st = 0;
    double v = ratio_value(model, w, &st);
    trace.value.push_back(v);
    trace.missing.push_back(st == 2 ? 1 : 0);
  }
  return trace;
}

}  // namespace qve
