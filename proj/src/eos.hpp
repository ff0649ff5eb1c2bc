#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dielectric.hpp"
#include "polariton.hpp"
#include "types.hpp"

namespace qve {

// Low-pass detection response R(omega) of the electro-optic sampling,
// phenomenological; R is even with R(0) = 1.
class FilterModel {
 public:
  enum class Kind { identity, gaussian_autocorrelation, rect_lowpass };

  static FilterModel identity() { return FilterModel(Kind::identity, 0.0); }
  static FilterModel gaussian(double t_p);
  static FilterModel rect(double omega_c);

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }

  double response(double omega) const;
  bool decays() const { return kind_ != Kind::identity; }
  // Smallest omega with |R(omega)|^2 <= floor.
  double cutoff(double floor) const;

 private:
  FilterModel(Kind kind, double param) : kind_(kind), param_(param) {}
  Kind kind_;
  double param_;
};

enum class TraceQuantity { vacuum_g, polariton_g, ratio };

struct SpectrumTrace {
  TraceQuantity quantity = TraceQuantity::ratio;
  std::vector<double> omega;
  std::vector<double> value;
  std::vector<std::uint8_t> missing;  // band-edge points, reported as missing
};

struct TimeTrace {
  std::vector<double> tau;
  std::vector<double> value;
};

// Vacuum correlation spectral density
//   G0(omega) = hbar |omega| / (4 eps0 sqrt(eps_r) c S) |R(omega)|^2.
double vacuum_spectrum(const PhysicalConstants& pc, const Geometry& geom,
                       double eps_r, const FilterModel& filter, double omega);

// Polariton ground-state spectral density; identical form with eps(omega)
// and the propagative-band indicator; exactly zero in gaps.
double polariton_spectrum(const DielectricModel& model,
                          const PhysicalConstants& pc, const Geometry& geom,
                          const FilterModel& filter, double omega);

// Delta-function weights of the discrete mode sum: per mode
//   w = pi hbar Omega_k v_g |R(omega)|^2 / (2 eps0 eps(omega) c V).
struct DiscreteWeight {
  double k = 0.0;
  int branch = 0;
  double omega = 0.0;
  double weight = 0.0;
};
std::vector<DiscreteWeight> discrete_spectrum_weights(
    const DielectricModel& model, const PhysicalConstants& pc,
    const Geometry& geom, const FilterModel& filter, std::span<const double> ks);

// Continuum time-domain correlation: the cosine transform
//   G(tau) = (1/pi) Integral_{-omega_max}^{omega_max} G(omega) cos(omega tau)
// with gap intervals excised analytically. model == nullptr selects the
// uncoupled vacuum with background eps_r; otherwise eps_r is ignored.
TimeTrace time_correlation(const DielectricModel* model, double eps_r,
                           const PhysicalConstants& pc, const Geometry& geom,
                           const FilterModel& filter,
                           std::span<const double> tau_grid, double omega_max);

// Ellipsometry observable sqrt(eps_r / eps(omega)) I(omega); zero inside
// gaps. status: 0 valid, 1 gap, 2 band edge (value undefined, reported as
// missing rather than infinite).
double ratio_value(const DielectricModel& model, double omega, int* status);

SpectrumTrace ratio_spectrum(const DielectricModel& model,
                             std::span<const double> omega_grid);

}  // namespace qve
