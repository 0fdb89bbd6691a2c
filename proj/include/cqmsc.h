/* cqmsc — semiclassical toolkit for the symmetry generators of conformal
 * quantum mechanics on causal diamonds.
 *
 * C API of the shared library. All entry points return a status code;
 * results travel through out-parameters or opaque handles. On any status
 * other than CQMSC_OK, cqmsc_last_error() returns a human-readable message
 * for the calling thread.
 */

#ifndef CQMSC_H
#define CQMSC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CQMSC_API __declspec(dllexport)
#else
#define CQMSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cqmsc_status {
  CQMSC_OK = 0,
  CQMSC_ERR_INVALID_ARGUMENT = 1,
  CQMSC_ERR_DOMAIN = 2,            /* input outside the mathematical domain */
  CQMSC_ERR_BELOW_MINIMUM = 3,     /* energy below the R potential minimum */
  CQMSC_ERR_BARRIER_STIFFNESS = 4, /* step collapse against the 1/q^3 barrier */
  CQMSC_ERR_REGIME_NOT_REACHED = 5,/* asymptotic fit window too short */
  CQMSC_ERR_QUADRATURE = 6,        /* quadrature failed to meet tolerance */
  CQMSC_ERR_POLE = 7,              /* evaluation too close to a pole */
  CQMSC_ERR_NUMERICAL = 8,         /* other numerical failure */
  CQMSC_ERR_INTERNAL = 9
} cqmsc_status;

typedef enum cqmsc_generator {
  CQMSC_GEN_H = 0,
  CQMSC_GEN_D = 1,
  CQMSC_GEN_K = 2,
  CQMSC_GEN_R = 3,
  CQMSC_GEN_S = 4
} cqmsc_generator;

typedef enum cqmsc_family {
  CQMSC_FAMILY_ELLIPTIC = 0,
  CQMSC_FAMILY_HYPERBOLIC = 1,
  CQMSC_FAMILY_PARABOLIC = 2
} cqmsc_family;

CQMSC_API const char* cqmsc_version(void);
CQMSC_API const char* cqmsc_status_name(cqmsc_status status);
/* Message for the most recent failure on the calling thread ("" if none). */
CQMSC_API const char* cqmsc_last_error(void);

/* ---- parameters ------------------------------------------------------- */

typedef struct cqmsc_params cqmsc_params;

CQMSC_API cqmsc_status cqmsc_params_create(double g, double alpha, double hbar, double mass,
                                           cqmsc_params** out);
CQMSC_API void cqmsc_params_destroy(cqmsc_params* params);
CQMSC_API double cqmsc_params_omega(const cqmsc_params* params);
/* Conformal index mu = sqrt((l + d/2 - 1)^2 + g). */
CQMSC_API cqmsc_status cqmsc_conformal_index(const cqmsc_params* params, int l, int d,
                                             double* mu);

/* ---- generator algebra ------------------------------------------------ */

CQMSC_API cqmsc_status cqmsc_generator_coefficients(const cqmsc_params* params,
                                                    cqmsc_generator gen, double* u, double* v,
                                                    double* w);
CQMSC_API cqmsc_status cqmsc_classify(double u, double v, double w, cqmsc_family* family,
                                      double* discriminant);

/* ---- effective dynamics ------------------------------------------------ */

CQMSC_API cqmsc_status cqmsc_potential(const cqmsc_params* params, cqmsc_generator gen,
                                       double q, double* value);
CQMSC_API cqmsc_status cqmsc_hamiltonian(const cqmsc_params* params, cqmsc_generator gen,
                                         double q, double p, double* value);
CQMSC_API cqmsc_status cqmsc_rhs(const cqmsc_params* params, cqmsc_generator gen, double q,
                                 double p, double* dq_dtau, double* dp_dtau);
CQMSC_API cqmsc_status cqmsc_tau_of_t(const cqmsc_params* params, cqmsc_generator gen,
                                      double t, double* tau);
CQMSC_API cqmsc_status cqmsc_map_lab_to_gen(const cqmsc_params* params, cqmsc_generator gen,
                                            double Q, double P, double t, double* q, double* p,
                                            double* tau);

/* Closed-form turning points of the R orbit at energy E. */
CQMSC_API cqmsc_status cqmsc_turning_points(const cqmsc_params* params, double E,
                                            double* q_minus, double* q_plus);
/* |p(q; E)|; *allowed is 0 and *p_abs NaN where E < V(q). */
CQMSC_API cqmsc_status cqmsc_level_curve(const cqmsc_params* params, cqmsc_generator gen,
                                         double E, double q, int* allowed, double* p_abs);

typedef struct cqmsc_integrate_opts {
  double energy_drift_tol; /* relative; <= 0 selects the default 1e-8 */
  double rel_tol;          /* <= 0 derives it from the drift tolerance */
  double q_escape;         /* <= 0 selects 1e6 * (g alpha^2 / M)^(1/4) for S */
  double max_step;         /* <= 0 means unlimited */
  double sample_dtau;      /* <= 0 records the natural steps */
  uint64_t max_steps;      /* 0 selects the default */
} cqmsc_integrate_opts;

CQMSC_API void cqmsc_integrate_opts_init(cqmsc_integrate_opts* opts);

typedef struct cqmsc_trajectory cqmsc_trajectory;

CQMSC_API cqmsc_status cqmsc_integrate(const cqmsc_params* params, cqmsc_generator gen,
                                       double q0, double p0, double tau_end,
                                       const cqmsc_integrate_opts* opts,
                                       cqmsc_trajectory** out);
CQMSC_API void cqmsc_trajectory_destroy(cqmsc_trajectory* traj);
CQMSC_API size_t cqmsc_trajectory_size(const cqmsc_trajectory* traj);
CQMSC_API cqmsc_status cqmsc_trajectory_sample(const cqmsc_trajectory* traj, size_t index,
                                               double* tau, double* q, double* p);
CQMSC_API double cqmsc_trajectory_energy(const cqmsc_trajectory* traj);
/* Relative energy drift of one sample (normalized by max(|E0|, 1, local
 * energy magnitude)); NaN for an out-of-range index. */
CQMSC_API double cqmsc_trajectory_drift(const cqmsc_trajectory* traj, size_t index);
CQMSC_API double cqmsc_trajectory_max_drift(const cqmsc_trajectory* traj);
/* 1 if the run was truncated by the escape cutoff (S only). */
CQMSC_API int cqmsc_trajectory_escaped(const cqmsc_trajectory* traj);

/* Period, closure distance and enclosed phase-space area of one R orbit. */
CQMSC_API cqmsc_status cqmsc_orbit_closure(const cqmsc_params* params, double E,
                                           double* period, double* distance, double* area);

/* ---- instability ------------------------------------------------------- */

typedef enum cqmsc_lyapunov_method {
  CQMSC_LYAPUNOV_TWO_TRAJECTORY = 0,
  CQMSC_LYAPUNOV_TANGENT_MAP = 1
} cqmsc_lyapunov_method;

typedef struct cqmsc_lyapunov_opts {
  double delta0;        /* <= 0 selects 1e-8 */
  double tau_end;       /* <= 0 selects 24 alpha */
  double sample_dtau;   /* <= 0 selects alpha/20 */
  double regime_factor; /* <= 0 selects 10 */
  size_t min_fit_points;/* 0 selects 10 */
  int method;           /* cqmsc_lyapunov_method */
} cqmsc_lyapunov_opts;

CQMSC_API void cqmsc_lyapunov_opts_init(cqmsc_lyapunov_opts* opts);

typedef struct cqmsc_growth_series cqmsc_growth_series;

/* Renormalized separation growth under the S flow from (q0, p0). */
CQMSC_API cqmsc_status cqmsc_perturbation_growth(const cqmsc_params* params, double q0,
                                                 double p0, const cqmsc_lyapunov_opts* opts,
                                                 cqmsc_growth_series** out);
CQMSC_API void cqmsc_growth_series_destroy(cqmsc_growth_series* series);
CQMSC_API size_t cqmsc_growth_series_size(const cqmsc_growth_series* series);
/* log_delta is ln of the renormalization-corrected |delta q|. */
CQMSC_API cqmsc_status cqmsc_growth_series_sample(const cqmsc_growth_series* series,
                                                  size_t index, double* tau, double* q_ref,
                                                  double* log_delta);

typedef struct cqmsc_lyapunov_estimate {
  double lambda_hat;
  double fit_tau_start;
  double fit_tau_end;
  double r_squared;
  int asymptotic_entered;
  size_t n_fit_points;
  int saturation_warning;
} cqmsc_lyapunov_estimate;

CQMSC_API cqmsc_status cqmsc_estimate_lyapunov(const cqmsc_params* params, double q0, double p0,
                                               const cqmsc_lyapunov_opts* opts,
                                               cqmsc_lyapunov_estimate* out);

CQMSC_API cqmsc_status cqmsc_scrambling_report(const cqmsc_params* params, double* lambda,
                                               double* bound, double* ratio, int* saturated);

/* ---- actions and periods ----------------------------------------------- */

typedef enum cqmsc_action_method {
  CQMSC_ACTION_CLOSED_FORM = 0,
  CQMSC_ACTION_QUADRATURE = 1
} cqmsc_action_method;

typedef struct cqmsc_action_result {
  double E;
  double W;
  double W_langer;
  double T_period;
  double q_minus;
  double q_plus;
  int method;
} cqmsc_action_result;

CQMSC_API cqmsc_status cqmsc_action_eval(const cqmsc_params* params, double E, int method,
                                         double rel_tol, cqmsc_action_result* out);

typedef enum cqmsc_period_mode {
  CQMSC_PERIOD_DERIVATIVE = 0,
  CQMSC_PERIOD_TIME_INTEGRAL = 1
} cqmsc_period_mode;

CQMSC_API cqmsc_status cqmsc_period(const cqmsc_params* params, double E, int mode, double* T);
CQMSC_API cqmsc_status cqmsc_thomas_fermi_density(const cqmsc_params* params, double E,
                                                  double* rho);
/* The purely imaginary continued period i pi alpha. */
CQMSC_API cqmsc_status cqmsc_microcanonical_period_S(const cqmsc_params* params, double* re,
                                                     double* im);

/* ---- spectral routes ---------------------------------------------------- */

CQMSC_API cqmsc_status cqmsc_partition_function(const cqmsc_params* params, double T_re,
                                                double T_im, double* z_re, double* z_im);
/* Fills energies[0..n_max] with hbar omega (2n + mu + 1). */
CQMSC_API cqmsc_status cqmsc_r_eigenvalues(const cqmsc_params* params, int n_max,
                                           double* energies);
CQMSC_API cqmsc_status cqmsc_dos_series(const cqmsc_params* params, double E, long n_max,
                                        int em_tail, double* partial_sum,
                                        double* tail_signature);
/* Pass NaN for c_constant to derive it from cutoff_L. */
CQMSC_API cqmsc_status cqmsc_dos_digamma(const cqmsc_params* params, double E,
                                         double c_constant, double cutoff_L, double* rho);
CQMSC_API cqmsc_status cqmsc_dos_cutoff(const cqmsc_params* params, double E, double L,
                                        double* rho);
CQMSC_API cqmsc_status cqmsc_dos_contour(const cqmsc_params* params, double E, int k_max,
                                         double* pole_part, double* series_part,
                                         double* boltzmann_ratio);
/* Pass NaN for cutoff_L to skip the smooth term (rho_bar reported as NaN). */
CQMSC_API cqmsc_status cqmsc_dos_gutzwiller(const cqmsc_params* params, double E, int k_max,
                                            double cutoff_L, double* delta_rho_closed,
                                            double* delta_rho_series, double* rho_bar);
CQMSC_API cqmsc_status cqmsc_dos_integral_diff(const cqmsc_params* params, double E1, double E2,
                                               double quad_tol, double* diff);
CQMSC_API cqmsc_status cqmsc_trace_green_integrand(const cqmsc_params* params, double E,
                                                   double z, double* re, double* im);
CQMSC_API cqmsc_status cqmsc_digamma(double z_re, double z_im, double* psi_re, double* psi_im);

/* ---- thermality --------------------------------------------------------- */

typedef struct cqmsc_thermal_report {
  double t_d;
  double beta;
  double lambda;
  double bound;
  double ratio;
  double im_period_over_hbar;
  double max_probe_discrepancy;
} cqmsc_thermal_report;

CQMSC_API cqmsc_status cqmsc_diamond_temperature(const cqmsc_params* params, double* t_d,
                                                 double* beta);
CQMSC_API cqmsc_status cqmsc_thermality_report(const cqmsc_params* params,
                                               const double* probe_energies, size_t n_probes,
                                               cqmsc_thermal_report* out);
/* One Boltzmann-signature probe: the successive-term ratio of the pole
 * series at energy E against exp(-beta E), and their relative discrepancy. */
CQMSC_API cqmsc_status cqmsc_thermality_probe(const cqmsc_params* params, double E,
                                              double* geometric_ratio,
                                              double* boltzmann_factor, double* discrepancy);

/* ---- verification suite -------------------------------------------------- */

typedef enum cqmsc_verify_fault {
  CQMSC_FAULT_NONE = 0,
  CQMSC_FAULT_DISABLE_LANGER = 1
} cqmsc_verify_fault;

/* Runs the cross-method identity suite. *json (utf-8, caller frees with
 * cqmsc_string_free) lists every check with its measured discrepancy and
 * tolerance; *passed is 1 iff all checks met tolerance. */
CQMSC_API cqmsc_status cqmsc_verify_run(const cqmsc_params* params, int quick, int fault,
                                        char** json, int* passed);
CQMSC_API void cqmsc_string_free(char* str);

#ifdef __cplusplus
}
#endif

#endif /* CQMSC_H */
