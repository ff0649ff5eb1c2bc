#include "dielectric.hpp"

#include <algorithm>
#include <cmath>

#include "rootfind.hpp"

namespace qve {

DielectricModel::DielectricModel(double eps_r,
                                 std::vector<LorentzOscillator> osc)
    : eps_r_(eps_r), osc_(std::move(osc)) {
  if (!(eps_r_ > 0.0))
    throw Error(ErrorCode::invalid_argument, "eps_r must be > 0");
  double prev = 0.0;
  for (const auto& o : osc_) {
    if (!(o.omega > prev))
      throw Error(ErrorCode::invalid_argument,
                  "oscillator frequencies must be strictly increasing and > 0");
    if (!(o.g >= 0.0))
      throw Error(ErrorCode::invalid_argument, "coupling g must be >= 0");
    prev = o.omega;
  }
}

DielectricModel DielectricModel::constant(double eps_r) {
  return DielectricModel(eps_r, {});
}

DielectricModel DielectricModel::lorentz(double eps_r, double omega_x,
                                         double g) {
  return DielectricModel(eps_r, {{omega_x, g}});
}

DielectricModel DielectricModel::multi_lorentz(
    double eps_r, std::vector<LorentzOscillator> osc) {
  return DielectricModel(eps_r, std::move(osc));
}

void DielectricModel::check_pole_proximity(double omega) const {
  double w = std::abs(omega);
  for (const auto& o : osc_) {
    if (std::abs(w - o.omega) < pole_rel_radius_ * o.omega)
      throw Error(ErrorCode::pole_proximity,
                  "frequency within pole-exclusion radius of omega_j");
  }
}

double DielectricModel::epsilon(double omega) const {
  check_pole_proximity(omega);
  double w2 = omega * omega;
  double s = 0.0;
  for (const auto& o : osc_) s += 4.0 * o.g * o.g / (w2 - o.omega * o.omega);
  return eps_r_ * (1.0 - s);
}

double DielectricModel::epsilon_derivative(double omega) const {
  check_pole_proximity(omega);
  double w2 = omega * omega;
  double s = 0.0;
  for (const auto& o : osc_) {
    double d = w2 - o.omega * o.omega;
    s += 8.0 * o.g * o.g * omega / (d * d);
  }
  return eps_r_ * s;
}

BandStructure DielectricModel::propagative_bands(double omega_max) const {
  if (!(omega_max > 0.0))
    throw Error(ErrorCode::invalid_argument, "omega_max must be > 0");
  BandStructure bs;
  if (osc_.empty()) {
    bs.bands.push_back({0.0, omega_max});
    return bs;
  }
  if (!(omega_max > osc_.back().omega))
    throw Error(ErrorCode::invalid_argument,
                "omega_max must exceed the highest pole");

  // Interval edges: 0, every pole, omega_max. eps is monotone increasing in
  // omega between consecutive poles (for omega > 0), so each interval holds
  // at most one zero, located by bisection.
  std::vector<double> edges{0.0};
  for (const auto& o : osc_) edges.push_back(o.omega);
  edges.push_back(omega_max);

  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double lo = edges[i];
    double hi = edges[i + 1];
    double inset_lo = (i == 0) ? 1e-12 * frequency_scale()
                               : 2.0 * pole_rel_radius_ * lo;
    double inset_hi =
        (i + 2 == edges.size()) ? 0.0 : 2.0 * pole_rel_radius_ * hi;
    double a = lo + inset_lo;
    double b = hi - inset_hi;
    if (!(a < b)) continue;
    double ea = epsilon(a);
    double eb = epsilon(b);
    if (ea > 0.0 && eb > 0.0) {
      bs.bands.push_back({lo, hi});
    } else if (ea < 0.0 && eb < 0.0) {
      bs.gaps.push_back({lo, hi});
    } else {
      double z = find_root([this](double w) { return epsilon(w); }, a, b,
                           1e-12);
      if (ea < 0.0) {
        bs.gaps.push_back({lo, z});
        bs.bands.push_back({z, hi});
      } else {
        bs.bands.push_back({lo, z});
        bs.gaps.push_back({z, hi});
      }
    }
  }
  return bs;
}

}  // namespace qve
