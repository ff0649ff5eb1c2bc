#include "polariton.hpp"

#include <algorithm>
#include <cmath>

#include "rootfind.hpp"

namespace qve {

namespace {

double dispersion_residual(const DielectricModel& model,
                           const PhysicalConstants& pc, double omega,
                           double k) {
  return omega * omega * model.epsilon(omega) - pc.c * pc.c * k * k;
}

// Upper bound guaranteed above every dispersion root: the top band starts at
// the highest zero of eps, bounded by sqrt(omega_n^2 + 4 sum g_j^2), and the
// root in that band is bracketed by geometric expansion.
double upper_bracket(const DielectricModel& model, const PhysicalConstants& pc,
                     double k) {
  double g2 = 0.0;
  double top = 0.0;
  for (const auto& o : model.oscillators()) {
    g2 += 4.0 * o.g * o.g;
    top = o.omega;
  }
  double zbound = std::sqrt(top * top + g2);
  double photon = pc.c * k / std::sqrt(model.eps_r());
  double hi = 2.0 * std::max({zbound, photon, model.frequency_scale()});
  while (dispersion_residual(model, pc, hi, k) <= 0.0) hi *= 2.0;
  return hi;
}

}  // namespace

std::vector<double> branch_frequencies(const DielectricModel& model,
                                       const PhysicalConstants& pc, double k) {
  if (!(k > 0.0))
    throw Error(ErrorCode::invalid_wavevector, "wavevector must be > 0");
  pc.validate();

  if (model.is_constant())
    return {pc.c * k / std::sqrt(model.eps_r())};

  double hi = upper_bracket(model, pc, k);
  BandStructure bs = model.propagative_bands(hi);

  auto f = [&](double w) { return dispersion_residual(model, pc, w, k); };

  std::vector<double> roots;
  double rel = model.pole_exclusion();
  for (const auto& band : bs.bands) {
    double a = band.lo == 0.0 ? 1e-12 * model.frequency_scale()
                              : band.lo * (1.0 + 2.0 * rel);
    double b = band.hi == hi ? hi : band.hi * (1.0 - 2.0 * rel);
    if (!(a < b)) continue;
    double fa = f(a);
    double fb = f(b);
    if ((fa > 0.0) == (fb > 0.0)) continue;  // dispersion misses this band
    double w = find_root(f, a, b, 1e-13);
    // Newton polish; f' = 2 w eps + w^2 eps' is positive on a band.
    for (int i = 0; i < 2; ++i) {
      double fp = 2.0 * w * model.epsilon(w) +
                  w * w * model.epsilon_derivative(w);
      double step = f(w) / fp;
      double wn = w - step;
      if (wn > band.lo && wn < band.hi) w = wn;
    }
    roots.push_back(w);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double wavevector_of(const DielectricModel& model, const PhysicalConstants& pc,
                     double omega) {
  if (!(omega > 0.0))
    throw Error(ErrorCode::invalid_argument, "omega must be > 0");
  double eps = model.epsilon(omega);
  if (!(eps > 0.0))
    throw Error(ErrorCode::gapped_frequency,
                "frequency lies in a polaritonic gap (eps <= 0)");
  return omega * std::sqrt(eps) / pc.c;
}

double group_velocity(const DielectricModel& model,
                      const PhysicalConstants& pc, double omega) {
  double eps = model.epsilon(omega);
  if (!(eps > 0.0))
    throw Error(ErrorCode::gapped_frequency,
                "frequency lies in a polaritonic gap (eps <= 0)");
  double k = omega * std::sqrt(eps) / pc.c;
  double denom = 2.0 * omega * eps + omega * omega *
                 model.epsilon_derivative(omega);
  return 2.0 * pc.c * pc.c * k / denom;
}

HopfieldPair hopfield_coefficients(const DielectricModel& model,
                                   const PhysicalConstants& pc, double k,
                                   double omega) {
  if (k == 0.0 || std::abs(k) < 1e-300)
    throw Error(ErrorCode::degenerate_point,
                "Hopfield coefficients are singular at k = 0");
  if (!(k > 0.0))
    throw Error(ErrorCode::invalid_wavevector, "wavevector must be > 0");
  double eps = model.epsilon(omega);
  double target = pc.c * pc.c * k * k;
  double res = std::abs(omega * omega * eps - target);
  if (res > 1e-6 * target)
    throw Error(ErrorCode::not_on_branch,
                "(k, omega) does not satisfy the dispersion relation");

  double vg = group_velocity(model, pc, omega);
  double bare = pc.c * k / std::sqrt(model.eps_r());
  double sum = std::sqrt(vg / (pc.c * eps));        // X + Z
  double diff = (bare / omega) * sum;               // X - Z
  return {0.5 * (sum + diff), 0.5 * (sum - diff)};
}

std::vector<ModeSolution> mode_solutions(const DielectricModel& model,
                                         const PhysicalConstants& pc,
                                         double k) {
  std::vector<double> freqs = branch_frequencies(model, pc, k);
  std::vector<ModeSolution> out;
  out.reserve(freqs.size());
  int idx = 0;
  for (double w : freqs) {
    HopfieldPair hz = hopfield_coefficients(model, pc, k, w);
    ModeSolution m;
    m.k = k;
    m.branch = idx++;
    m.omega = w;
    m.x = hz.x;
    m.z = hz.z;
    m.group_velocity = group_velocity(model, pc, w);
    m.bare_frequency = pc.c * k / std::sqrt(model.eps_r());
    out.push_back(m);
  }
  return out;
}

int indicator(const DielectricModel& model, double omega) {
  if (!(omega > 0.0))
    throw Error(ErrorCode::invalid_argument, "omega must be > 0");
  try {
    return model.epsilon(omega) > 0.0 ? 1 : 0;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::pole_proximity) return 0;
    throw;
  }
}

}  // namespace qve
