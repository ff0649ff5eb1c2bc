#pragma once

#include <span>
#include <vector>

#include "dielectric.hpp"
#include "polariton.hpp"
#include "types.hpp"

namespace qve {

// Both sides of the partition identity
//   sum_mu (v_g / 4c) [1 + 1/eps(omega_mu)] = N_k + 1/2
// at a single wavevector. lhs is built purely from (v_g, eps) at the
// polariton frequencies, rhs from the Hopfield Z's. The identity balances
// for eps_r = 1 backgrounds; the report computes both sides either way.
struct PartitionReport {
  double k = 0.0;
  double n_k = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  std::vector<double> branch_lhs;
  std::vector<double> branch_z2;
};

// Ground-state virtual photon population N_k = sum_mu Z_{k,mu}^2.
double virtual_photon_population(const DielectricModel& model,
                                 const PhysicalConstants& pc, double k);

PartitionReport partition_identity(const DielectricModel& model,
                                   const PhysicalConstants& pc, double k);

struct PopulationPoint {
  double k = 0.0;
  double n_k = 0.0;
};
std::vector<PopulationPoint> population_profile(const DielectricModel& model,
                                                const PhysicalConstants& pc,
                                                std::span<const double> ks);

}  // namespace qve
