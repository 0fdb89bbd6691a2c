#include "cqmsc.h"

#include <cmath>
#include <complex>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "cqmsc/action.hpp"
#include "cqmsc/digamma.hpp"
#include "cqmsc/dynamics.hpp"
#include "cqmsc/errors.hpp"
#include "cqmsc/frame_map.hpp"
#include "cqmsc/generator.hpp"
#include "cqmsc/potential.hpp"
#include "cqmsc/spectral.hpp"
#include "cqmsc/stability.hpp"
#include "cqmsc/thermal.hpp"
#include "cqmsc/verify.hpp"

struct cqmsc_params {
  cqmsc::CqmParams value;
};

struct cqmsc_trajectory {
  cqmsc::Trajectory value;
};

struct cqmsc_growth_series {
  cqmsc::GrowthSeries value;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Runs the body and folds the core exception taxonomy onto status codes.
template <class Fn>
cqmsc_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CQMSC_OK;
  } catch (const cqmsc::below_minimum_error& e) {
    set_error(e.what());
    return CQMSC_ERR_BELOW_MINIMUM;
  } catch (const cqmsc::barrier_stiffness_error& e) {
    set_error(e.what());
    return CQMSC_ERR_BARRIER_STIFFNESS;
  } catch (const cqmsc::regime_not_reached_error& e) {
    set_error(e.what());
    return CQMSC_ERR_REGIME_NOT_REACHED;
  } catch (const cqmsc::quadrature_error& e) {
    set_error(std::string(e.what()) + " (achieved error estimate " +
              std::to_string(e.achieved_error()) + ")");
    return CQMSC_ERR_QUADRATURE;
  } catch (const cqmsc::pole_error& e) {
    set_error(e.what());
    return CQMSC_ERR_POLE;
  } catch (const cqmsc::domain_error& e) {
    set_error(e.what());
    return CQMSC_ERR_DOMAIN;
  } catch (const cqmsc::invalid_argument& e) {
    set_error(e.what());
    return CQMSC_ERR_INVALID_ARGUMENT;
  } catch (const cqmsc::numerical_error& e) {
    set_error(e.what());
    return CQMSC_ERR_NUMERICAL;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return CQMSC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return CQMSC_ERR_INTERNAL;
  }
}

cqmsc_status require(bool ok, const char* message) {
  if (ok) return CQMSC_OK;
  set_error(message);
  return CQMSC_ERR_INVALID_ARGUMENT;
}

cqmsc::GenLabel to_label(cqmsc_generator gen) {
  switch (gen) {
    case CQMSC_GEN_H: return cqmsc::GenLabel::H;
    case CQMSC_GEN_D: return cqmsc::GenLabel::D;
    case CQMSC_GEN_K: return cqmsc::GenLabel::K;
    case CQMSC_GEN_R: return cqmsc::GenLabel::R;
    case CQMSC_GEN_S: return cqmsc::GenLabel::S;
  }
  throw cqmsc::invalid_argument("unknown generator id " + std::to_string(gen));
}

cqmsc::IntegratorOptions to_options(const cqmsc_integrate_opts* opts) {
  cqmsc::IntegratorOptions o;
  if (opts == nullptr) return o;
  if (opts->energy_drift_tol > 0.0) o.energy_drift_tol = opts->energy_drift_tol;
  if (opts->rel_tol > 0.0) o.rel_tol = opts->rel_tol;
  if (opts->q_escape > 0.0) o.q_escape = opts->q_escape;
  if (opts->max_step > 0.0) o.max_step = opts->max_step;
  if (opts->sample_dtau > 0.0) o.sample_dtau = opts->sample_dtau;
  if (opts->max_steps > 0) o.max_steps = opts->max_steps;
  return o;
}

cqmsc::LyapunovOptions to_options(const cqmsc_lyapunov_opts* opts) {
  cqmsc::LyapunovOptions o;
  if (opts == nullptr) return o;
  if (opts->delta0 > 0.0) o.delta0 = opts->delta0;
  if (opts->tau_end > 0.0) o.tau_end = opts->tau_end;
  if (opts->sample_dtau > 0.0) o.sample_dtau = opts->sample_dtau;
  if (opts->regime_factor > 0.0) o.regime_factor = opts->regime_factor;
  if (opts->min_fit_points > 0) o.min_fit_points = opts->min_fit_points;
  o.method = opts->method == CQMSC_LYAPUNOV_TANGENT_MAP ? cqmsc::LyapunovMethod::tangent_map
                                                        : cqmsc::LyapunovMethod::two_trajectory;
  return o;
}

}  // namespace

extern "C" {

const char* cqmsc_version(void) { return "0.1.0"; }

const char* cqmsc_status_name(cqmsc_status status) {
  switch (status) {
    case CQMSC_OK: return "ok";
    case CQMSC_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case CQMSC_ERR_DOMAIN: return "domain-error";
    case CQMSC_ERR_BELOW_MINIMUM: return "below-minimum";
    case CQMSC_ERR_BARRIER_STIFFNESS: return "barrier-stiffness";
    case CQMSC_ERR_REGIME_NOT_REACHED: return "regime-not-reached";
    case CQMSC_ERR_QUADRATURE: return "quadrature-failure";
    case CQMSC_ERR_POLE: return "pole-proximity";
    case CQMSC_ERR_NUMERICAL: return "numerical-failure";
    case CQMSC_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* cqmsc_last_error(void) { return g_last_error.c_str(); }

cqmsc_status cqmsc_params_create(double g, double alpha, double hbar, double mass,
                                 cqmsc_params** out) {
  if (auto st = require(out != nullptr, "out must not be null")) return st;
  *out = nullptr;
  return guarded([&] { *out = new cqmsc_params{cqmsc::CqmParams(g, alpha, hbar, mass)}; });
}

void cqmsc_params_destroy(cqmsc_params* params) { delete params; }

double cqmsc_params_omega(const cqmsc_params* params) {
  return params == nullptr ? std::nan("") : params->value.omega();
}

cqmsc_status cqmsc_conformal_index(const cqmsc_params* params, int l, int d, double* mu) {
  if (auto st = require(params && mu, "params and mu must not be null")) return st;
  return guarded([&] { *mu = cqmsc::SpectralIndex(params->value, l, d).mu; });
}

cqmsc_status cqmsc_generator_coefficients(const cqmsc_params* params, cqmsc_generator gen,
                                          double* u, double* v, double* w) {
  if (auto st = require(params && u && v && w, "null argument")) return st;
  return guarded([&] {
    const auto spec = cqmsc::GeneratorSpec::from_label(to_label(gen), params->value);
    *u = spec.u;
    *v = spec.v;
    *w = spec.w;
  });
}

cqmsc_status cqmsc_classify(double u, double v, double w, cqmsc_family* family,
                            double* discriminant) {
  if (auto st = require(family != nullptr, "family must not be null")) return st;
  return guarded([&] {
    const cqmsc::GeneratorSpec spec{u, v, w, cqmsc::GenLabel::custom};
    if (discriminant != nullptr) *discriminant = spec.discriminant();
    switch (spec.classify()) {
      case cqmsc::Family::elliptic: *family = CQMSC_FAMILY_ELLIPTIC; break;
      case cqmsc::Family::hyperbolic: *family = CQMSC_FAMILY_HYPERBOLIC; break;
      case cqmsc::Family::parabolic: *family = CQMSC_FAMILY_PARABOLIC; break;
    }
  });
}

cqmsc_status cqmsc_potential(const cqmsc_params* params, cqmsc_generator gen, double q,
                             double* value) {
  if (auto st = require(params && value, "null argument")) return st;
  return guarded([&] { *value = cqmsc::potential(to_label(gen), params->value, q); });
}

cqmsc_status cqmsc_hamiltonian(const cqmsc_params* params, cqmsc_generator gen, double q,
                               double p, double* value) {
  if (auto st = require(params && value, "null argument")) return st;
  return guarded([&] { *value = cqmsc::hamiltonian(to_label(gen), params->value, {q, p}); });
}

cqmsc_status cqmsc_rhs(const cqmsc_params* params, cqmsc_generator gen, double q, double p,
                       double* dq_dtau, double* dp_dtau) {
  if (auto st = require(params && dq_dtau && dp_dtau, "null argument")) return st;
  return guarded([&] {
    const auto vel = cqmsc::rhs(to_label(gen), params->value, {q, p});
    *dq_dtau = vel.dq;
    *dp_dtau = vel.dp;
  });
}

cqmsc_status cqmsc_tau_of_t(const cqmsc_params* params, cqmsc_generator gen, double t,
                            double* tau) {
  if (auto st = require(params && tau, "null argument")) return st;
  return guarded([&] { *tau = cqmsc::tau_of_t(to_label(gen), params->value, t); });
}

cqmsc_status cqmsc_map_lab_to_gen(const cqmsc_params* params, cqmsc_generator gen, double Q,
                                  double P, double t, double* q, double* p, double* tau) {
  if (auto st = require(params && q && p && tau, "null argument")) return st;
  return guarded([&] {
    const auto spec = cqmsc::GeneratorSpec::from_label(to_label(gen), params->value);
    const auto mapped = cqmsc::map_lab_to_gen(spec, params->value, {Q, P, t});
    *q = mapped.state.q;
    *p = mapped.state.p;
    *tau = mapped.tau;
  });
}

cqmsc_status cqmsc_turning_points(const cqmsc_params* params, double E, double* q_minus,
                                  double* q_plus) {
  if (auto st = require(params && q_minus && q_plus, "null argument")) return st;
  return guarded([&] {
    const auto tp = cqmsc::turning_points(params->value, E);
    *q_minus = tp.q_minus;
    *q_plus = tp.q_plus;
  });
}

cqmsc_status cqmsc_level_curve(const cqmsc_params* params, cqmsc_generator gen, double E,
                               double q, int* allowed, double* p_abs) {
  if (auto st = require(params && allowed && p_abs, "null argument")) return st;
  return guarded([&] {
    const auto p = cqmsc::level_curve_momentum(to_label(gen), params->value, E, q);
    *allowed = p.has_value() ? 1 : 0;
    *p_abs = p.value_or(std::nan(""));
  });
}

void cqmsc_integrate_opts_init(cqmsc_integrate_opts* opts) {
  if (opts == nullptr) return;
  std::memset(opts, 0, sizeof(*opts));
  opts->energy_drift_tol = 1e-8;
}

cqmsc_status cqmsc_integrate(const cqmsc_params* params, cqmsc_generator gen, double q0,
                             double p0, double tau_end, const cqmsc_integrate_opts* opts,
                             cqmsc_trajectory** out) {
  if (auto st = require(params && out, "null argument")) return st;
  *out = nullptr;
  return guarded([&] {
    auto traj = cqmsc::integrate(to_label(gen), params->value, {q0, p0}, tau_end,
                                 to_options(opts));
    *out = new cqmsc_trajectory{std::move(traj)};
  });
}

void cqmsc_trajectory_destroy(cqmsc_trajectory* traj) { delete traj; }

size_t cqmsc_trajectory_size(const cqmsc_trajectory* traj) {
  return traj == nullptr ? 0 : traj->value.samples.size();
}

cqmsc_status cqmsc_trajectory_sample(const cqmsc_trajectory* traj, size_t index, double* tau,
                                     double* q, double* p) {
  if (auto st = require(traj && tau && q && p, "null argument")) return st;
  if (auto st = require(index < traj->value.samples.size(), "sample index out of range")) {
    return st;
  }
  const auto& s = traj->value.samples[index];
  *tau = s.tau;
  *q = s.q;
  *p = s.p;
  return CQMSC_OK;
}

double cqmsc_trajectory_energy(const cqmsc_trajectory* traj) {
  return traj == nullptr ? std::nan("") : traj->value.energy;
}

double cqmsc_trajectory_drift(const cqmsc_trajectory* traj, size_t index) {
  if (traj == nullptr || index >= traj->value.samples.size()) return std::nan("");
  return traj->value.samples[index].energy_drift;
}

double cqmsc_trajectory_max_drift(const cqmsc_trajectory* traj) {
  return traj == nullptr ? std::nan("") : traj->value.stats.max_energy_drift;
}

int cqmsc_trajectory_escaped(const cqmsc_trajectory* traj) {
  return traj != nullptr && traj->value.status == cqmsc::TrajectoryStatus::escaped ? 1 : 0;
}

cqmsc_status cqmsc_orbit_closure(const cqmsc_params* params, double E, double* period,
                                 double* distance, double* area) {
  if (auto st = require(params && period && distance && area, "null argument")) return st;
  return guarded([&] {
    const auto closure = cqmsc::orbit_closure(params->value, E);
    *period = closure.period;
    *distance = closure.distance;
    *area = closure.enclosed_area;
  });
}

void cqmsc_lyapunov_opts_init(cqmsc_lyapunov_opts* opts) {
  if (opts == nullptr) return;
  std::memset(opts, 0, sizeof(*opts));
  opts->delta0 = 1e-8;
}

cqmsc_status cqmsc_perturbation_growth(const cqmsc_params* params, double q0, double p0,
                                       const cqmsc_lyapunov_opts* opts,
                                       cqmsc_growth_series** out) {
  if (auto st = require(params && out, "null argument")) return st;
  *out = nullptr;
  return guarded([&] {
    auto series = cqmsc::perturbation_growth(params->value, {q0, p0}, to_options(opts));
    *out = new cqmsc_growth_series{std::move(series)};
  });
}

void cqmsc_growth_series_destroy(cqmsc_growth_series* series) { delete series; }

size_t cqmsc_growth_series_size(const cqmsc_growth_series* series) {
  return series == nullptr ? 0 : series->value.samples.size();
}

cqmsc_status cqmsc_growth_series_sample(const cqmsc_growth_series* series, size_t index,
                                        double* tau, double* q_ref, double* log_delta) {
  if (auto st = require(series && tau && q_ref && log_delta, "null argument")) return st;
  if (auto st = require(index < series->value.samples.size(), "sample index out of range")) {
    return st;
  }
  const auto& s = series->value.samples[index];
  *tau = s.tau;
  *q_ref = s.q_ref;
  *log_delta = s.log_delta;
  return CQMSC_OK;
}

cqmsc_status cqmsc_estimate_lyapunov(const cqmsc_params* params, double q0, double p0,
                                     const cqmsc_lyapunov_opts* opts,
                                     cqmsc_lyapunov_estimate* out) {
  if (auto st = require(params && out, "null argument")) return st;
  return guarded([&] {
    const auto est = cqmsc::estimate_lyapunov(params->value, {q0, p0}, to_options(opts));
    out->lambda_hat = est.lambda_hat;
    out->fit_tau_start = est.fit_tau_start;
    out->fit_tau_end = est.fit_tau_end;
    out->r_squared = est.r_squared;
    out->asymptotic_entered = est.asymptotic_entered ? 1 : 0;
    out->n_fit_points = est.n_fit_points;
    out->saturation_warning = est.saturation_warning ? 1 : 0;
  });
}

cqmsc_status cqmsc_scrambling_report(const cqmsc_params* params, double* lambda, double* bound,
                                     double* ratio, int* saturated) {
  if (auto st = require(params && lambda && bound && ratio && saturated, "null argument")) {
    return st;
  }
  return guarded([&] {
    const auto rep = cqmsc::scrambling_report(params->value);
    *lambda = rep.lambda;
    *bound = rep.bound;
    *ratio = rep.ratio;
    *saturated = rep.saturated ? 1 : 0;
  });
}

cqmsc_status cqmsc_action_eval(const cqmsc_params* params, double E, int method, double rel_tol,
                               cqmsc_action_result* out) {
  if (auto st = require(params && out, "null argument")) return st;
  return guarded([&] {
    const auto& p = params->value;
    const double tol = rel_tol > 0.0 ? rel_tol : 1e-8;
    const double W = method == CQMSC_ACTION_QUADRATURE
                         ? cqmsc::jacobi_action_quadrature(p, E, tol)
                         : cqmsc::jacobi_action_closed(p, E);
    const cqmsc::SpectralIndex spec(p);
    const auto tp = cqmsc::turning_points(p, E);
    out->E = E;
    out->W = W;
    out->W_langer = cqmsc::langer_corrected_action(p, spec, W);
    out->T_period = M_PI * p.alpha;
    out->q_minus = tp.q_minus;
    out->q_plus = tp.q_plus;
    out->method = method;
  });
}

cqmsc_status cqmsc_period(const cqmsc_params* params, double E, int mode, double* T) {
  if (auto st = require(params && T, "null argument")) return st;
  return guarded([&] {
    const auto m = mode == CQMSC_PERIOD_TIME_INTEGRAL ? cqmsc::PeriodMode::time_integral
                                                      : cqmsc::PeriodMode::derivative;
    *T = cqmsc::period(params->value, E, m);
  });
}

cqmsc_status cqmsc_thomas_fermi_density(const cqmsc_params* params, double E, double* rho) {
  if (auto st = require(params && rho, "null argument")) return st;
  return guarded([&] { *rho = cqmsc::thomas_fermi_density(params->value, E); });
}

cqmsc_status cqmsc_microcanonical_period_S(const cqmsc_params* params, double* re, double* im) {
  if (auto st = require(params && re && im, "null argument")) return st;
  return guarded([&] {
    const auto T = cqmsc::microcanonical_period_S(params->value);
    *re = T.real();
    *im = T.imag();
  });
}

cqmsc_status cqmsc_partition_function(const cqmsc_params* params, double T_re, double T_im,
                                      double* z_re, double* z_im) {
  if (auto st = require(params && z_re && z_im, "null argument")) return st;
  return guarded([&] {
    const cqmsc::SpectralIndex spec(params->value);
    const auto z = cqmsc::partition_function(params->value, spec, {T_re, T_im});
    *z_re = z.real();
    *z_im = z.imag();
  });
}

cqmsc_status cqmsc_r_eigenvalues(const cqmsc_params* params, int n_max, double* energies) {
  if (auto st = require(params && energies, "null argument")) return st;
  return guarded([&] {
    const cqmsc::SpectralIndex spec(params->value);
    const auto values = cqmsc::r_eigenvalues(params->value, spec, n_max);
    std::copy(values.begin(), values.end(), energies);
  });
}

cqmsc_status cqmsc_dos_series(const cqmsc_params* params, double E, long n_max, int em_tail,
                              double* partial_sum, double* tail_signature) {
  if (auto st = require(params && partial_sum && tail_signature, "null argument")) return st;
  return guarded([&] {
    const cqmsc::SpectralIndex spec(params->value);
    const auto s = cqmsc::dos_series(params->value, spec, E, n_max, em_tail != 0);
    *partial_sum = s.partial_sum;
    *tail_signature = s.tail_signature;
  });
}

cqmsc_status cqmsc_dos_digamma(const cqmsc_params* params, double E, double c_constant,
                               double cutoff_L, double* rho) {
  if (auto st = require(params && rho, "null argument")) return st;
  return guarded([&] {
    const cqmsc::SpectralIndex spec(params->value);
    cqmsc::DosRegularization reg;
    if (!std::isnan(c_constant)) reg.C = c_constant;
    if (!std::isnan(cutoff_L)) reg.L = cutoff_L;
    *rho = cqmsc::dos_digamma(params->value, spec, E, reg);
  });
}

cqmsc_status cqmsc_dos_cutoff(const cqmsc_params* params, double E, double L, double* rho) {
  if (auto st = require(params && rho, "null argument")) return st;
  return guarded([&] {
    const cqmsc::SpectralIndex spec(params->value);
    *rho = cqmsc::dos_cutoff(params->value, spec, E, L);
  });
}

cqmsc_status cqmsc_dos_contour(const cqmsc_params* params, double E, int k_max,
                               double* pole_part, double* series_part,
                               double* boltzmann_ratio) {
  if (auto st = require(params && pole_part && series_part && boltzmann_ratio, "null argument")) {
    return st;
  }
  return guarded([&] {
    const cqmsc::SpectralIndex spec(params->value);
    const auto c = cqmsc::dos_contour(params->value, spec, E, k_max > 0 ? k_max : 64);
    *pole_part = c.pole_part;
    *series_part = c.series_part;
    *boltzmann_ratio = c.boltzmann_ratio;
  });
}

cqmsc_status cqmsc_dos_gutzwiller(const cqmsc_params* params, double E, int k_max,
                                  double cutoff_L, double* delta_rho_closed,
                                  double* delta_rho_series, double* rho_bar) {
  if (auto st =
          require(params && delta_rho_closed && delta_rho_series && rho_bar, "null argument")) {
    return st;
  }
  return guarded([&] {
    const cqmsc::SpectralIndex spec(params->value);
    std::optional<double> L;
    if (!std::isnan(cutoff_L)) L = cutoff_L;
    const auto g = cqmsc::dos_gutzwiller(params->value, spec, E, k_max > 0 ? k_max : 64, L);
    *delta_rho_closed = g.delta_rho_closed;
    *delta_rho_series = g.delta_rho_series;
    *rho_bar = g.rho_bar.value_or(std::nan(""));
  });
}

cqmsc_status cqmsc_dos_integral_diff(const cqmsc_params* params, double E1, double E2,
                                     double quad_tol, double* diff) {
  if (auto st = require(params && diff, "null argument")) return st;
  return guarded([&] {
    const cqmsc::SpectralIndex spec(params->value);
    *diff = cqmsc::dos_integral_diff(params->value, spec, E1, E2,
                                     quad_tol > 0.0 ? quad_tol : 1e-10);
  });
}

cqmsc_status cqmsc_trace_green_integrand(const cqmsc_params* params, double E, double z,
                                         double* re, double* im) {
  if (auto st = require(params && re && im, "null argument")) return st;
  return guarded([&] {
    const cqmsc::SpectralIndex spec(params->value);
    const auto value = cqmsc::trace_green_integrand(params->value, spec, E, z);
    *re = value.real();
    *im = value.imag();
  });
}

cqmsc_status cqmsc_digamma(double z_re, double z_im, double* psi_re, double* psi_im) {
  if (auto st = require(psi_re && psi_im, "null argument")) return st;
  return guarded([&] {
    const auto value = cqmsc::digamma({z_re, z_im});
    *psi_re = value.real();
    *psi_im = value.imag();
  });
}

cqmsc_status cqmsc_diamond_temperature(const cqmsc_params* params, double* t_d, double* beta) {
  if (auto st = require(params && t_d && beta, "null argument")) return st;
  return guarded([&] {
    const auto dt = cqmsc::diamond_temperature(params->value);
    *t_d = dt.t_d;
    *beta = dt.beta;
  });
}

cqmsc_status cqmsc_thermality_report(const cqmsc_params* params, const double* probe_energies,
                                     size_t n_probes, cqmsc_thermal_report* out) {
  if (auto st = require(params && probe_energies && out, "null argument")) return st;
  return guarded([&] {
    const std::vector<double> probes(probe_energies, probe_energies + n_probes);
    const auto rep = cqmsc::thermality_report(params->value, probes);
    out->t_d = rep.t_d;
    out->beta = rep.beta;
    out->lambda = rep.lambda;
    out->bound = rep.bound;
    out->ratio = rep.ratio;
    out->im_period_over_hbar = rep.im_period_over_hbar;
    out->max_probe_discrepancy = rep.max_probe_discrepancy;
  });
}

cqmsc_status cqmsc_thermality_probe(const cqmsc_params* params, double E,
                                    double* geometric_ratio, double* boltzmann_factor,
                                    double* discrepancy) {
  if (auto st = require(params && geometric_ratio && boltzmann_factor && discrepancy,
                        "null argument")) {
    return st;
  }
  return guarded([&] {
    const auto rep = cqmsc::thermality_report(params->value, {E});
    *geometric_ratio = rep.probes.front().geometric_ratio;
    *boltzmann_factor = rep.probes.front().boltzmann_factor;
    *discrepancy = rep.probes.front().discrepancy;
  });
}

cqmsc_status cqmsc_verify_run(const cqmsc_params* params, int quick, int fault, char** json,
                              int* passed) {
  if (auto st = require(params && json && passed, "null argument")) return st;
  *json = nullptr;
  return guarded([&] {
    cqmsc::VerifyOptions opts;
    opts.params = params->value;
    opts.quick = quick != 0;
    opts.fault = fault == CQMSC_FAULT_DISABLE_LANGER ? cqmsc::VerifyFault::disable_langer
                                                     : cqmsc::VerifyFault::none;
    const auto results = cqmsc::run_verify(opts);
    const std::string report = cqmsc::verify_report_json(opts, results);
    char* buffer = new char[report.size() + 1];
    std::memcpy(buffer, report.c_str(), report.size() + 1);
    *json = buffer;
    *passed = cqmsc::all_passed(results) ? 1 : 0;
  });
}

void cqmsc_string_free(char* str) { delete[] str; }

}  // extern "C"
