#include "qve/qve.h"

#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "dielectric.hpp"
#include "eos.hpp"
#include "inversion.hpp"
#include "polariton.hpp"
#include "types.hpp"
#include "vacuum.hpp"

struct qve_model {
  qve::DielectricModel model;
};

struct qve_filter {
  qve::FilterModel filter;
};

namespace {

thread_local std::string g_last_error;

qve_status to_status(qve::ErrorCode code) {
  using EC = qve::ErrorCode;
  switch (code) {
    case EC::invalid_argument: return QVE_ERR_INVALID_ARGUMENT;
    case EC::pole_proximity: return QVE_ERR_POLE_PROXIMITY;
    case EC::gapped_frequency: return QVE_ERR_GAPPED_FREQUENCY;
    case EC::invalid_wavevector: return QVE_ERR_INVALID_WAVEVECTOR;
    case EC::not_on_branch: return QVE_ERR_NOT_ON_BRANCH;
    case EC::degenerate_point: return QVE_ERR_DEGENERATE_POINT;
    case EC::band_edge: return QVE_ERR_BAND_EDGE;
    case EC::divergent_integral: return QVE_ERR_DIVERGENT_INTEGRAL;
    case EC::non_convergence: return QVE_ERR_NON_CONVERGENCE;
    case EC::singular_jacobian: return QVE_ERR_SINGULAR_JACOBIAN;
    case EC::empty_trace: return QVE_ERR_EMPTY_TRACE;
    case EC::all_gapped: return QVE_ERR_ALL_GAPPED;
    case EC::numerical: return QVE_ERR_NUMERICAL;
  }
  return QVE_ERR_NUMERICAL;
}

template <typename Fn>
qve_status guarded(Fn&& fn) {
  try {
    fn();
    return QVE_OK;
  } catch (const qve::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QVE_ERR_NUMERICAL;
  }
}

qve_status invalid(const char* msg) {
  g_last_error = msg;
  return QVE_ERR_INVALID_ARGUMENT;
}

qve::PhysicalConstants to_pc(const qve_constants* c) {
  if (!c) return qve::PhysicalConstants::reduced();
  return {c->hbar, c->eps0, c->c};
}

qve::Geometry to_geom(const qve_geometry* g) {
  if (!g) return {};
  return {g->surface, g->length, g->conversion};
}

}  // namespace

extern "C" {

const char* qve_version(void) { return "0.1.0"; }

const char* qve_last_error(void) { return g_last_error.c_str(); }

qve_constants qve_constants_reduced(void) { return {1.0, 1.0, 1.0}; }

qve_constants qve_constants_si(void) {
  auto pc = qve::PhysicalConstants::si();
  return {pc.hbar, pc.eps0, pc.c};
}

qve_status qve_model_create_constant(double eps_r, qve_model** out) {
  if (!out) return invalid("out is null");
  return guarded([&] {
    *out = new qve_model{qve::DielectricModel::constant(eps_r)};
  });
}

qve_status qve_model_create_lorentz(double eps_r, double omega_x, double g,
                                    qve_model** out) {
  if (!out) return invalid("out is null");
  return guarded([&] {
    *out = new qve_model{qve::DielectricModel::lorentz(eps_r, omega_x, g)};
  });
}

qve_status qve_model_create_multi_lorentz(double eps_r, size_t n_osc,
                                          const double* omega_j,
                                          const double* g_j, qve_model** out) {
  if (!out || (n_osc && (!omega_j || !g_j))) return invalid("null argument");
  return guarded([&] {
    std::vector<qve::LorentzOscillator> osc;
    osc.reserve(n_osc);
    for (size_t i = 0; i < n_osc; ++i) osc.push_back({omega_j[i], g_j[i]});
    *out = new qve_model{
        qve::DielectricModel::multi_lorentz(eps_r, std::move(osc))};
  });
}

void qve_model_free(qve_model* model) { delete model; }

qve_status qve_model_eps_r(const qve_model* model, double* out) {
  if (!model || !out) return invalid("null argument");
  *out = model->model.eps_r();
  return QVE_OK;
}

qve_status qve_epsilon(const qve_model* model, double omega, double* out) {
  if (!model || !out) return invalid("null argument");
  return guarded([&] { *out = model->model.epsilon(omega); });
}

qve_status qve_epsilon_derivative(const qve_model* model, double omega,
                                  double* out) {
  if (!model || !out) return invalid("null argument");
  return guarded([&] { *out = model->model.epsilon_derivative(omega); });
}

qve_status qve_propagative_bands(const qve_model* model, double omega_max,
                                 double* edges, size_t capacity,
                                 size_t* n_bands) {
  if (!model || !n_bands) return invalid("null argument");
  return guarded([&] {
    qve::BandStructure bs = model->model.propagative_bands(omega_max);
    *n_bands = bs.bands.size();
    if (edges) {
      if (capacity < 2 * bs.bands.size())
        throw qve::Error(qve::ErrorCode::invalid_argument,
                         "edge buffer too small");
      for (size_t i = 0; i < bs.bands.size(); ++i) {
        edges[2 * i] = bs.bands[i].lo;
        edges[2 * i + 1] = bs.bands[i].hi;
      }
    }
  });
}

qve_status qve_branch_frequencies(const qve_model* model,
                                  const qve_constants* constants, double k,
                                  double* out, size_t capacity, size_t* n) {
  if (!model || !n) return invalid("null argument");
  return guarded([&] {
    auto freqs = qve::branch_frequencies(model->model, to_pc(constants), k);
    *n = freqs.size();
    if (out) {
      if (capacity < freqs.size())
        throw qve::Error(qve::ErrorCode::invalid_argument,
                         "frequency buffer too small");
      std::memcpy(out, freqs.data(), freqs.size() * sizeof(double));
    }
  });
}

qve_status qve_wavevector_of(const qve_model* model,
                             const qve_constants* constants, double omega,
                             double* out) {
  if (!model || !out) return invalid("null argument");
  return guarded(
      [&] { *out = qve::wavevector_of(model->model, to_pc(constants), omega); });
}

qve_status qve_group_velocity(const qve_model* model,
                              const qve_constants* constants, double omega,
                              double* out) {
  if (!model || !out) return invalid("null argument");
  return guarded(
      [&] { *out = qve::group_velocity(model->model, to_pc(constants), omega); });
}

qve_status qve_hopfield(const qve_model* model, const qve_constants* constants,
                        double k, double omega, double* x, double* z) {
  if (!model || !x || !z) return invalid("null argument");
  return guarded([&] {
    auto hz = qve::hopfield_coefficients(model->model, to_pc(constants), k,
                                         omega);
    *x = hz.x;
    *z = hz.z;
  });
}

qve_status qve_mode_solutions(const qve_model* model,
                              const qve_constants* constants, double k,
                              qve_mode* out, size_t capacity, size_t* n) {
  if (!model || !n) return invalid("null argument");
  return guarded([&] {
    auto modes = qve::mode_solutions(model->model, to_pc(constants), k);
    *n = modes.size();
    if (out) {
      if (capacity < modes.size())
        throw qve::Error(qve::ErrorCode::invalid_argument,
                         "mode buffer too small");
      for (size_t i = 0; i < modes.size(); ++i) {
        const auto& m = modes[i];
        out[i] = {m.k, m.branch, m.omega, m.x, m.z, m.group_velocity,
                  m.bare_frequency};
      }
    }
  });
}

qve_status qve_indicator(const qve_model* model, double omega, int* out) {
  if (!model || !out) return invalid("null argument");
  return guarded([&] { *out = qve::indicator(model->model, omega); });
}

qve_status qve_filter_identity(qve_filter** out) {
  if (!out) return invalid("out is null");
  *out = new qve_filter{qve::FilterModel::identity()};
  return QVE_OK;
}

qve_status qve_filter_gaussian(double t_p, qve_filter** out) {
  if (!out) return invalid("out is null");
  return guarded([&] { *out = new qve_filter{qve::FilterModel::gaussian(t_p)}; });
}

qve_status qve_filter_rect(double omega_c, qve_filter** out) {
  if (!out) return invalid("out is null");
  return guarded([&] { *out = new qve_filter{qve::FilterModel::rect(omega_c)}; });
}

void qve_filter_free(qve_filter* filter) { delete filter; }

qve_status qve_filter_response(const qve_filter* filter, double omega,
                               double* out) {
  if (!filter || !out) return invalid("null argument");
  *out = filter->filter.response(omega);
  return QVE_OK;
}

qve_status qve_filter_cutoff(const qve_filter* filter, double floor,
                             double* out) {
  if (!filter || !out) return invalid("null argument");
  if (!(floor > 0.0) || !(floor < 1.0)) return invalid("floor must be in (0,1)");
  return guarded([&] { *out = filter->filter.cutoff(floor); });
}

qve_status qve_vacuum_spectrum(const qve_constants* constants,
                               const qve_geometry* geometry, double eps_r,
                               const qve_filter* filter, double omega,
                               double* out) {
  if (!filter || !out) return invalid("null argument");
  return guarded([&] {
    *out = qve::vacuum_spectrum(to_pc(constants), to_geom(geometry), eps_r,
                                filter->filter, omega);
  });
}

qve_status qve_polariton_spectrum(const qve_model* model,
                                  const qve_constants* constants,
                                  const qve_geometry* geometry,
                                  const qve_filter* filter, double omega,
                                  double* out) {
  if (!model || !filter || !out) return invalid("null argument");
  return guarded([&] {
    *out = qve::polariton_spectrum(model->model, to_pc(constants),
                                   to_geom(geometry), filter->filter, omega);
  });
}

qve_status qve_discrete_weights(const qve_model* model,
                                const qve_constants* constants,
                                const qve_geometry* geometry,
                                const qve_filter* filter, const double* ks,
                                size_t n_k, double* omegas, double* weights,
                                size_t capacity, size_t* n) {
  if (!model || !filter || !ks || !n) return invalid("null argument");
  return guarded([&] {
    auto w = qve::discrete_spectrum_weights(
        model->model, to_pc(constants), to_geom(geometry), filter->filter,
        std::span<const double>(ks, n_k));
    *n = w.size();
    if (omegas && weights) {
      if (capacity < w.size())
        throw qve::Error(qve::ErrorCode::invalid_argument,
                         "weight buffer too small");
      for (size_t i = 0; i < w.size(); ++i) {
        omegas[i] = w[i].omega;
        weights[i] = w[i].weight;
      }
    }
  });
}

qve_status qve_time_correlation(const qve_model* model, double eps_r,
                                const qve_constants* constants,
                                const qve_geometry* geometry,
                                const qve_filter* filter, const double* tau,
                                size_t n_tau, double omega_max, double* out) {
  if (!filter || !tau || !out) return invalid("null argument");
  return guarded([&] {
    auto trace = qve::time_correlation(
        model ? &model->model : nullptr, eps_r, to_pc(constants),
        to_geom(geometry), filter->filter,
        std::span<const double>(tau, n_tau), omega_max);
    std::memcpy(out, trace.value.data(), n_tau * sizeof(double));
  });
}

qve_status qve_ratio(const qve_model* model, double omega, double* value,
                     int* flag) {
  if (!model || !value) return invalid("null argument");
  return guarded([&] { *value = qve::ratio_value(model->model, omega, flag); });
}

qve_status qve_virtual_photon_population(const qve_model* model,
                                         const qve_constants* constants,
                                         double k, double* out) {
  if (!model || !out) return invalid("null argument");
  return guarded([&] {
    *out = qve::virtual_photon_population(model->model, to_pc(constants), k);
  });
}

qve_status qve_partition_identity(const qve_model* model,
                                  const qve_constants* constants, double k,
                                  qve_partition_report* out) {
  if (!model || !out) return invalid("null argument");
  return guarded([&] {
    auto rep = qve::partition_identity(model->model, to_pc(constants), k);
    *out = {rep.k, rep.n_k, rep.lhs, rep.rhs, rep.residual};
  });
}

qve_status qve_synthesize_ratio(const qve_model* model, const double* omega,
                                size_t n, double noise_sigma, uint64_t seed,
                                double* out) {
  if (!model || !omega || !out) return invalid("null argument");
  return guarded([&] {
    auto trace = qve::synthesize_measurement(
        model->model, std::span<const double>(omega, n), noise_sigma, seed);
    std::memcpy(out, trace.ratio.data(), n * sizeof(double));
  });
}

qve_status qve_invert_ratio(const double* omega, const double* ratio, size_t n,
                            double eps_r, double gap_threshold,
                            double* eps_out, int* gap_flag_out,
                            double* gap_edges, size_t gap_capacity,
                            size_t* n_gaps) {
  if (!omega || !ratio || !eps_out || !gap_flag_out || !n_gaps)
    return invalid("null argument");
  return guarded([&] {
    qve::MeasuredTrace trace;
    trace.omega.assign(omega, omega + n);
    trace.ratio.assign(ratio, ratio + n);
    trace.eps_r = eps_r;
    auto res = qve::invert_ratio(trace, gap_threshold);
    for (size_t i = 0; i < n; ++i) {
      eps_out[i] = res.eps[i];
      gap_flag_out[i] = res.gapped[i];
    }
    *n_gaps = res.gaps.size();
    if (gap_edges) {
      if (gap_capacity < 2 * res.gaps.size())
        throw qve::Error(qve::ErrorCode::invalid_argument,
                         "gap edge buffer too small");
      for (size_t i = 0; i < res.gaps.size(); ++i) {
        gap_edges[2 * i] = res.gaps[i].lo;
        gap_edges[2 * i + 1] = res.gaps[i].hi;
      }
    }
  });
}

qve_status qve_fit_lorentz(const double* omega, const double* ratio,
                           const double* sigma, size_t n, double eps_r,
                           double guess_omega_x, double guess_g,
                           const double bounds[4], qve_fit_result* out) {
  if (!omega || !ratio || !bounds || !out) return invalid("null argument");
  return guarded([&] {
    qve::MeasuredTrace trace;
    trace.omega.assign(omega, omega + n);
    trace.ratio.assign(ratio, ratio + n);
    if (sigma) trace.sigma.assign(sigma, sigma + n);
    trace.eps_r = eps_r;
    qve::FitBounds fb{bounds[0], bounds[1], bounds[2], bounds[3]};
    auto fit = qve::fit_lorentz(trace, guess_omega_x, guess_g, fb);
    *out = {fit.eps_r,      fit.omega_x,        fit.g,
            fit.rss,        fit.iterations,     fit.converged ? 1 : 0,
            fit.stderr_omega_x, fit.stderr_g};
  });
}

}  // extern "C"
