#pragma once

#include <vector>

#include "dielectric.hpp"
#include "types.hpp"

namespace qve {

// One polariton branch at fixed wavevector. Branch indices ascend with
// frequency; X > 0 fixes the overall phase; all coefficients are real for a
// real lossless dielectric.
struct ModeSolution {
  double k = 0.0;
  int branch = 0;
  double omega = 0.0;
  double x = 0.0;
  double z = 0.0;
  double group_velocity = 0.0;
  double bare_frequency = 0.0;  // Omega_k = c k / sqrt(eps_r)
};

// All positive roots of omega^2 eps(omega) = c^2 k^2, one per propagative
// band crossed by the dispersion, ascending.
std::vector<double> branch_frequencies(const DielectricModel& model,
                                       const PhysicalConstants& pc, double k);

// k = omega sqrt(eps(omega)) / c; requires omega inside a propagative band.
double wavevector_of(const DielectricModel& model, const PhysicalConstants& pc,
                     double omega);

// d omega / d k by implicit differentiation of the dispersion relation.
double group_velocity(const DielectricModel& model,
                      const PhysicalConstants& pc, double omega);

// (X, Z) from (X+Z)^2 = v_g / (c eps(omega)) and the gauge condition
// Omega_k (X+Z) = omega (X-Z). (k, omega) must lie on a branch.
struct HopfieldPair {
  double x = 0.0;
  double z = 0.0;
};
HopfieldPair hopfield_coefficients(const DielectricModel& model,
                                   const PhysicalConstants& pc, double k,
                                   double omega);

std::vector<ModeSolution> mode_solutions(const DielectricModel& model,
                                         const PhysicalConstants& pc,
                                         double k);

// 1 iff omega lies inside a propagative band (eps > 0).
int indicator(const DielectricModel& model, double omega);

}  // namespace qve
