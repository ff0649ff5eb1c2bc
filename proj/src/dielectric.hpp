#pragma once

#include <vector>

#include "types.hpp"

namespace qve {

struct LorentzOscillator {
  double omega;  // resonance frequency omega_j > 0
  double g;      // vacuum Rabi frequency g_j >= 0
};

// Open frequency interval with eps(omega) > 0 (band) or < 0 (gap).
struct Band {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double omega) const { return omega > lo && omega < hi; }
};

struct BandStructure {
  std::vector<Band> bands;
  std::vector<Band> gaps;

  bool in_band(double omega) const {
    for (const auto& b : bands)
      if (b.contains(omega)) return true;
    return false;
  }
};

// Lossless, real, even dielectric function: a constant background eps_r
// times any finite number of Lorentz oscillator terms,
//   eps(omega) = eps_r * (1 - sum_j 4 g_j^2 / (omega^2 - omega_j^2)).
class DielectricModel {
 public:
  static DielectricModel constant(double eps_r);
  static DielectricModel lorentz(double eps_r, double omega_x, double g);
  static DielectricModel multi_lorentz(double eps_r,
                                       std::vector<LorentzOscillator> osc);

  double eps_r() const { return eps_r_; }
  const std::vector<LorentzOscillator>& oscillators() const { return osc_; }
  bool is_constant() const { return osc_.empty(); }

  // Relative pole-exclusion radius; evaluation within radius*omega_j of a
  // pole raises pole_proximity.
  double pole_exclusion() const { return pole_rel_radius_; }
  void set_pole_exclusion(double rel) { pole_rel_radius_ = rel; }

  // A convenient frequency scale (first resonance, or 1 for constants).
  double frequency_scale() const {
    return osc_.empty() ? 1.0 : osc_.front().omega;
  }

  double epsilon(double omega) const;
  double epsilon_derivative(double omega) const;

  // Maximal positive-eps intervals in (0, omega_max) and their complement.
  // Requires omega_max above the highest pole.
  BandStructure propagative_bands(double omega_max) const;

 private:
  DielectricModel(double eps_r, std::vector<LorentzOscillator> osc);
  void check_pole_proximity(double omega) const;

  double eps_r_ = 1.0;
  std::vector<LorentzOscillator> osc_;
  double pole_rel_radius_ = 1e-9;
};

}  // namespace qve
