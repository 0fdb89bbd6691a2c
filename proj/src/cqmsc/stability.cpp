#include "cqmsc/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cqmsc/ode.hpp"
#include "cqmsc/potential.hpp"

namespace cqmsc {

namespace {

struct ResolvedLyapunov {
  double tau_end;
  double sample_dtau;
  double q_escape;
  double rel_tol;
  double drift_tol;
};

ResolvedLyapunov resolve(const CqmParams& params, const LyapunovOptions& opts) {
  ResolvedLyapunov r{};
  r.tau_end = opts.tau_end > 0.0 ? opts.tau_end : 28.0 * params.alpha;
  r.sample_dtau = opts.sample_dtau > 0.0 ? opts.sample_dtau : params.alpha / 20.0;
  // A higher escape cutoff than the plain-trajectory default: the fit window
  // ends at escape, and starts whose unstable amplitude is suppressed need
  // the extra span for the transient to clear the least-squares window.
  r.q_escape =
      opts.ode.q_escape > 0.0 ? opts.ode.q_escape : 1e8 * length_scale(params);
  r.drift_tol = opts.ode.energy_drift_tol > 0.0 ? opts.ode.energy_drift_tol : 1e-8;
  r.rel_tol = opts.ode.rel_tol > 0.0 ? opts.ode.rel_tol
                                     : std::max(1e-14, std::min(1e-11, 1e-3 * r.drift_tol));
  return r;
}

double guard_scale(const CqmParams& params, double q_ref) {
  return std::fabs(q_ref) + length_scale(params);
}

}  // namespace

GrowthSeries perturbation_growth(const CqmParams& params, const PhaseState& initial,
                                 const LyapunovOptions& opts) {
  detail::require_positive_q(initial.q);
  if (!(opts.delta0 > 0.0)) throw invalid_argument("delta0 must be positive");
  if (!(opts.delta0 < 0.01 * initial.q)) {
    throw invalid_argument("delta0 must be small against the initial coordinate (delta0 << q)");
  }

  const ResolvedLyapunov r = resolve(params, opts);
  const bool tangent = opts.method == LyapunovMethod::tangent_map;

  GrowthSeries series;
  series.log_delta0 = std::log(opts.delta0);
  series.samples.push_back({0.0, initial.q, series.log_delta0});

  const double e_ref = hamiltonian(GenLabel::S, params, initial);
  // Energy of the displaced copy; refreshed after every renormalization,
  // which moves that trajectory to a nearby energy shell.
  double e_shift =
      tangent ? e_ref
              : hamiltonian(GenLabel::S, params, {initial.q + opts.delta0, initial.p});

  OdeControl<4> ctl;
  ctl.rel_tol = r.rel_tol;
  const double q_scale = length_scale(params);
  const double p_scale =
      std::sqrt(2.0 * params.mass * std::max(std::fabs(e_ref), r_minimum_energy(params)));
  ctl.abs_tol[0] = 1e-3 * r.rel_tol * q_scale;
  ctl.abs_tol[1] = 1e-3 * r.rel_tol * p_scale;
  if (tangent) {
    // Tangent components are rescaled to delta0, so their natural size is known.
    ctl.abs_tol[2] = 1e-3 * r.rel_tol * opts.delta0;
    ctl.abs_tol[3] = 1e-3 * r.rel_tol * opts.delta0 / params.alpha;
  } else {
    ctl.abs_tol[2] = ctl.abs_tol[0];
    ctl.abs_tol[3] = ctl.abs_tol[1];
  }
  ctl.max_steps = opts.ode.max_steps;

  // Drift normalized by the local energy magnitude as well; on the escape
  // the kinetic and oscillator terms outgrow any fixed scale and |H - E0|
  // is only resolvable relative to them.
  auto drift_ok = [&](double q, double p, double e0) {
    const double magnitude = p * p / (2.0 * params.mass) + params.g / (2.0 * q * q) +
                             params.mass * q * q / (2.0 * params.alpha * params.alpha);
    const double scale = std::max({std::fabs(e0), 1.0, magnitude});
    return std::fabs(hamiltonian(GenLabel::S, params, {q, p}) - e0) / scale <= r.drift_tol;
  };
  ctl.accept_extra = [&](const StateVec<4>& y) {
    if (!(y[0] > 0.0)) return false;
    if (!tangent && !(y[2] > 0.0)) return false;
    if (!drift_ok(y[0], y[1], e_ref)) return false;
    if (!tangent && !drift_ok(y[2], y[3], e_shift)) return false;
    return true;
  };

  auto ode_rhs = [&](double, const StateVec<4>& y, StateVec<4>& dy) {
    dy[0] = y[1] / params.mass;
    dy[1] = -potential_derivative(GenLabel::S, params, y[0]);
    if (tangent) {
      // Variational flow: d(dq) = dp/M, d(dp) = -V''(q) dq.
      const double v2 = 3.0 * params.g / (y[0] * y[0] * y[0] * y[0]) -
                        params.mass / (params.alpha * params.alpha);
      dy[2] = y[3] / params.mass;
      dy[3] = -v2 * y[2];
    } else {
      dy[2] = y[3] / params.mass;
      dy[3] = -potential_derivative(GenLabel::S, params, y[2]);
    }
  };

  double log_correction = 0.0;
  double next_sample = r.sample_dtau;
  bool renormalized_once = false;
  double last_tau = 0.0;
  PhaseState last_ref = initial;

  auto separation = [&](const StateVec<4>& y, double& dq, double& dp) {
    if (tangent) {
      dq = y[2];
      dp = y[3];
    } else {
      dq = y[2] - y[0];
      dp = y[3] - y[1];
    }
  };

  auto on_step = [&](const StepRecord<4>& rec, StateVec<4>& y) {
    last_tau = rec.tau1;
    last_ref = {y[0], y[1]};
    while (next_sample <= rec.tau1 * (1.0 + 1e-14) && next_sample <= r.tau_end) {
      const auto ys = rec.eval(std::min(next_sample, rec.tau1));
      double dq, dp;
      separation(ys, dq, dp);
      series.samples.push_back({next_sample, ys[0], std::log(std::fabs(dq)) + log_correction});
      next_sample += r.sample_dtau;
    }
    if (y[0] > r.q_escape || (!tangent && y[2] > r.q_escape)) {
      series.escaped = true;
      return StepAction::stop;
    }
    double dq, dp;
    separation(y, dq, dp);
    const double d = std::hypot(dq, dp);
    // Keep the separation inside a resolvable band around the coordinate
    // scale. The upper edge is the linear-regime guard; the lower edge
    // matters for starts whose unstable-mode amplitude is suppressed (two
    // at-rest trajectories differ only in energy at first): the separation
    // then decays toward the resolution ulp(q) before the growing mode
    // takes over, and must be rescaled up to stay measurable.
    const double scale = guard_scale(params, y[0]);
    const double band_hi = opts.renorm_rel * scale;
    const double band_lo = 1e-6 * opts.renorm_rel * scale;
    if (d > 1e-300 && (d > band_hi || d < band_lo)) {
      if (!renormalized_once && d > 100.0 * band_hi) series.saturated_linear_guard = true;
      const double s = 0.01 * band_hi / d;
      if (tangent) {
        y[2] *= s;
        y[3] *= s;
      } else {
        y[2] = y[0] + dq * s;
        y[3] = y[1] + dp * s;
        e_shift = hamiltonian(GenLabel::S, params, {y[2], y[3]});
      }
      log_correction += std::log(1.0 / s);
      renormalized_once = true;
      return StepAction::state_modified;
    }
    return StepAction::continue_run;
  };

  StateVec<4> y0;
  if (tangent) {
    y0 = {initial.q, initial.p, opts.delta0, 0.0};
  } else {
    y0 = {initial.q, initial.p, initial.q + opts.delta0, initial.p};
  }

  try {
    integrate_dopri5<4>(ode_rhs, y0, 0.0, r.tau_end, ctl, on_step);
  } catch (const step_underflow_error&) {
    throw barrier_stiffness_error(
        "step size collapsed during perturbation growth near q = " +
            std::to_string(last_ref.q) + "; last valid state attached",
        last_tau, last_ref.q, last_ref.p);
  }
  return series;
}

LyapunovEstimate estimate_lyapunov(const CqmParams& params, const PhaseState& initial,
                                   const LyapunovOptions& opts) {
  const GrowthSeries series = perturbation_growth(params, initial, opts);
  const ResolvedLyapunov r = resolve(params, opts);

  const double tau_min = opts.regime_factor * params.alpha;
  const double q4_min =
      opts.regime_factor * params.g * params.alpha * params.alpha / params.mass;

  std::vector<const GrowthSample*> window;
  for (const auto& s : series.samples) {
    if (s.tau > tau_min && s.q_ref * s.q_ref * s.q_ref * s.q_ref > q4_min &&
        std::isfinite(s.log_delta)) {
      window.push_back(&s);
    }
  }
  if (window.size() < opts.min_fit_points) {
    throw regime_not_reached_error(
        "only " + std::to_string(window.size()) + " samples in the asymptotic window (tau > " +
        std::to_string(tau_min) + ", q^4 > " + std::to_string(q4_min) +
        "); increase tau_end (current " + std::to_string(r.tau_end) + ") or the escape cutoff");
  }

  double mean_t = 0.0, mean_y = 0.0;
  for (const auto* s : window) {
    mean_t += s->tau;
    mean_y += s->log_delta;
  }
  mean_t /= static_cast<double>(window.size());
  mean_y /= static_cast<double>(window.size());

  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (const auto* s : window) {
    const double dt = s->tau - mean_t;
    const double dy = s->log_delta - mean_y;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  const double slope = sty / stt;
  const double ss_res = std::max(0.0, syy - sty * sty / stt);
  const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;

  LyapunovEstimate est;
  est.lambda_hat = slope;
  est.fit_tau_start = window.front()->tau;
  est.fit_tau_end = window.back()->tau;
  est.r_squared = r2;
  est.asymptotic_entered = true;
  est.n_fit_points = window.size();
  est.saturation_warning = series.saturated_linear_guard;
  return est;
}

ScramblingReport scrambling_report(const CqmParams& params) {
  ScramblingReport rep;
  rep.lambda = 1.0 / params.alpha;
  rep.bound = 2.0 / params.alpha;
  rep.ratio = rep.lambda / rep.bound;
  rep.saturated = false;
  return rep;
}

}  // namespace cqmsc
