#include "vacuum.hpp"

namespace qve {

double virtual_photon_population(const DielectricModel& model,
                                 const PhysicalConstants& pc, double k) {
  double n = 0.0;
  for (const ModeSolution& m : mode_solutions(model, pc, k)) n += m.z * m.z;
  return n;
}

PartitionReport partition_identity(const DielectricModel& model,
                                   const PhysicalConstants& pc, double k) {
  PartitionReport rep;
  rep.k = k;
  for (const ModeSolution& m : mode_solutions(model, pc, k)) {
    double eps = model.epsilon(m.omega);
    double lhs = m.group_velocity / (4.0 * pc.c) * (1.0 + 1.0 / eps);
    rep.branch_lhs.push_back(lhs);
    rep.branch_z2.push_back(m.z * m.z);
    rep.lhs += lhs;
    rep.n_k += m.z * m.z;
  }
  rep.rhs = rep.n_k + 0.5;
  rep.residual = rep.lhs - rep.rhs;
  return rep;
}

std::vector<PopulationPoint> population_profile(const DielectricModel& model,
                                                const PhysicalConstants& pc,
                                                std::span<const double> ks) {
  std::vector<PopulationPoint> out;
  out.reserve(ks.size());
  for (double k : ks)
    out.push_back({k, virtual_photon_population(model, pc, k)});
  return out;
}

}  // namespace qve
