/* Quantum-vacuum ellipsometry library: C API.
 *
 * Every function returns a qve_status; results go through out parameters.
 * Handles are opaque and freed with the matching *_free call. Error details
 * for the last failing call on the current thread are available from
 * qve_last_error().
 */
#ifndef QVE_H
#define QVE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qve_status {
  QVE_OK = 0,
  QVE_ERR_INVALID_ARGUMENT = 1,
  QVE_ERR_POLE_PROXIMITY = 2,
  QVE_ERR_GAPPED_FREQUENCY = 3,
  QVE_ERR_INVALID_WAVEVECTOR = 4,
  QVE_ERR_NOT_ON_BRANCH = 5,
  QVE_ERR_DEGENERATE_POINT = 6,
  QVE_ERR_BAND_EDGE = 7,
  QVE_ERR_DIVERGENT_INTEGRAL = 8,
  QVE_ERR_NON_CONVERGENCE = 9,
  QVE_ERR_SINGULAR_JACOBIAN = 10,
  QVE_ERR_EMPTY_TRACE = 11,
  QVE_ERR_ALL_GAPPED = 12,
  QVE_ERR_BUFFER_TOO_SMALL = 13,
  QVE_ERR_NUMERICAL = 14
} qve_status;

typedef struct qve_model qve_model;
typedef struct qve_filter qve_filter;

typedef struct qve_constants {
  double hbar;
  double eps0;
  double c;
} qve_constants;

typedef struct qve_geometry {
  double surface;    /* S  */
  double length;     /* L  */
  double conversion; /* C; cancels out of every exported observable */
} qve_geometry;

typedef struct qve_mode {
  double k;
  int branch;
  double omega;
  double x;
  double z;
  double group_velocity;
  double bare_frequency;
} qve_mode;

typedef struct qve_partition_report {
  double k;
  double n_k;
  double lhs;
  double rhs;
  double residual;
} qve_partition_report;

typedef struct qve_fit_result {
  double eps_r;
  double omega_x;
  double g;
  double rss;
  int iterations;
  int converged;
  double stderr_omega_x;
  double stderr_g;
} qve_fit_result;

const char* qve_version(void);
const char* qve_last_error(void);

/* Reduced units (all ones) and 2018 CODATA SI values. */
qve_constants qve_constants_reduced(void);
qve_constants qve_constants_si(void);

/* ---- dielectric models ---- */
qve_status qve_model_create_constant(double eps_r, qve_model** out);
qve_status qve_model_create_lorentz(double eps_r, double omega_x, double g,
                                    qve_model** out);
qve_status qve_model_create_multi_lorentz(double eps_r, size_t n_osc,
                                          const double* omega_j,
                                          const double* g_j, qve_model** out);
void qve_model_free(qve_model* model);
qve_status qve_model_eps_r(const qve_model* model, double* out);

qve_status qve_epsilon(const qve_model* model, double omega, double* out);
qve_status qve_epsilon_derivative(const qve_model* model, double omega,
                                  double* out);
/* edges receives (lo, hi) pairs per band; *n_bands is the band count. */
qve_status qve_propagative_bands(const qve_model* model, double omega_max,
                                 double* edges, size_t capacity,
                                 size_t* n_bands);

/* ---- polariton dispersion ---- */
qve_status qve_branch_frequencies(const qve_model* model,
                                  const qve_constants* constants, double k,
                                  double* out, size_t capacity, size_t* n);
qve_status qve_wavevector_of(const qve_model* model,
                             const qve_constants* constants, double omega,
                             double* out);
qve_status qve_group_velocity(const qve_model* model,
                              const qve_constants* constants, double omega,
                              double* out);
qve_status qve_hopfield(const qve_model* model, const qve_constants* constants,
                        double k, double omega, double* x, double* z);
qve_status qve_mode_solutions(const qve_model* model,
                              const qve_constants* constants, double k,
                              qve_mode* out, size_t capacity, size_t* n);
qve_status qve_indicator(const qve_model* model, double omega, int* out);

/* ---- detection filters ---- */
qve_status qve_filter_identity(qve_filter** out);
qve_status qve_filter_gaussian(double t_p, qve_filter** out);
qve_status qve_filter_rect(double omega_c, qve_filter** out);
void qve_filter_free(qve_filter* filter);
qve_status qve_filter_response(const qve_filter* filter, double omega,
                               double* out);
/* Smallest omega with |R|^2 <= floor; fails for non-decaying filters. */
qve_status qve_filter_cutoff(const qve_filter* filter, double floor,
                             double* out);

/* ---- electro-optic sampling observables ---- */
qve_status qve_vacuum_spectrum(const qve_constants* constants,
                               const qve_geometry* geometry, double eps_r,
                               const qve_filter* filter, double omega,
                               double* out);
qve_status qve_polariton_spectrum(const qve_model* model,
                                  const qve_constants* constants,
                                  const qve_geometry* geometry,
                                  const qve_filter* filter, double omega,
                                  double* out);
/* Flattened (omega, weight) per mode over all supplied wavevectors. */
qve_status qve_discrete_weights(const qve_model* model,
                                const qve_constants* constants,
                                const qve_geometry* geometry,
                                const qve_filter* filter, const double* ks,
                                size_t n_k, double* omegas, double* weights,
                                size_t capacity, size_t* n);
/* model may be NULL for the uncoupled vacuum with background eps_r. */
qve_status qve_time_correlation(const qve_model* model, double eps_r,
                                const qve_constants* constants,
                                const qve_geometry* geometry,
                                const qve_filter* filter, const double* tau,
                                size_t n_tau, double omega_max, double* out);
/* flag: 0 valid, 1 gap (value 0), 2 band edge (value missing). */
qve_status qve_ratio(const qve_model* model, double omega, double* value,
                     int* flag);

/* ---- ground-state virtual photons ---- */
qve_status qve_virtual_photon_population(const qve_model* model,
                                         const qve_constants* constants,
                                         double k, double* out);
qve_status qve_partition_identity(const qve_model* model,
                                  const qve_constants* constants, double k,
                                  qve_partition_report* out);

/* ---- synthesis, inversion, fitting ---- */
qve_status qve_synthesize_ratio(const qve_model* model, const double* omega,
                                size_t n, double noise_sigma, uint64_t seed,
                                double* out);
/* eps_out[i] and gap_flag_out[i] per sample; gap_edges receives (lo, hi)
 * pairs of detected gap intervals. */
qve_status qve_invert_ratio(const double* omega, const double* ratio, size_t n,
                            double eps_r, double gap_threshold,
                            double* eps_out, int* gap_flag_out,
                            double* gap_edges, size_t gap_capacity,
                            size_t* n_gaps);
/* sigma may be NULL. bounds: {omega_x_lo, omega_x_hi, g_lo, g_hi}. */
qve_status qve_fit_lorentz(const double* omega, const double* ratio,
                           const double* sigma, size_t n, double eps_r,
                           double guess_omega_x, double guess_g,
                           const double bounds[4], qve_fit_result* out);

#ifdef __cplusplus
}
#endif

#endif /* QVE_H */
