#pragma once

#include <cstddef>
#include <vector>

#include "cqmsc/dynamics.hpp"
#include "cqmsc/params.hpp"

namespace cqmsc {

enum class LyapunovMethod {
  two_trajectory,  // reference + displaced copy, renormalized separation
  tangent_map,     // variational equations alongside the reference
};

struct LyapunovOptions {
  double delta0 = 1e-8;        // initial displacement, applied to q only
  double tau_end = 0.0;        // 0 = 24 * alpha (the escape cutoff ends the run earlier)
  double sample_dtau = 0.0;    // 0 = alpha / 20
  double regime_factor = 10.0; // window requires tau > f*alpha and q^4 > f*g*alpha^2/M
  std::size_t min_fit_points = 10;
  double renorm_rel = 1e-5;    // renormalize when |delta| exceeds this times the q scale
  LyapunovMethod method = LyapunovMethod::two_trajectory;
  IntegratorOptions ode;
};

struct GrowthSample {
  double tau;
  double q_ref;      // reference coordinate, used for the regime test
  double log_delta;  // ln of the virtual (renormalization-corrected) |delta q|
};

/// Separation growth |delta q(tau)| under the S flow, by the two-trajectory
/// method: the pair is integrated as one system, and the separation is
/// rescaled back to delta0 whenever it leaves the linear regime, with the
/// rescaling factors folded into the reported magnitude.
struct GrowthSeries {
  std::vector<GrowthSample> samples;
  double log_delta0;
  bool saturated_linear_guard = false;  // separation hit the guard before any renormalization
  bool escaped = false;
};
GrowthSeries perturbation_growth(const CqmParams& params, const PhaseState& initial,
                                 const LyapunovOptions& opts = {});

struct LyapunovEstimate {
  double lambda_hat;
  double fit_tau_start;
  double fit_tau_end;
  double r_squared;
  bool asymptotic_entered;
  std::size_t n_fit_points;
  bool saturation_warning;
};

/// Least-squares slope of ln|delta q| vs tau over the asymptotic window
/// (tau > regime_factor * alpha and q^4 > regime_factor * g alpha^2 / M).
/// Throws regime_not_reached_error when fewer than min_fit_points samples
/// qualify, suggesting a larger tau_end.
LyapunovEstimate estimate_lyapunov(const CqmParams& params, const PhaseState& initial,
                                   const LyapunovOptions& opts = {});

struct ScramblingReport {
  double lambda;     // analytic exponent 1/alpha
  double bound;      // 2 pi T_D / hbar = 2/alpha
  double ratio;      // lambda / bound, exactly 1/2
  bool saturated;    // always false: the bound is met at half saturation
};

ScramblingReport scrambling_report(const CqmParams& params);

}  // namespace cqmsc
