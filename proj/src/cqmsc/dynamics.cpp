#include "cqmsc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cqmsc/ode.hpp"
#include "cqmsc/quadrature.hpp"

namespace cqmsc {

PhaseVelocity rhs(GenLabel gen, const CqmParams& params, const PhaseState& state) {
  detail::require_oscillator_label(gen);
  detail::require_positive_q(state.q);
  return {state.p / params.mass, -potential_derivative(gen, params, state.q)};
}

namespace {

struct ResolvedOptions {
  double rel_tol;
  double drift_tol;
  double q_escape;
  double max_step;
  double sample_dtau;
  std::uint64_t max_steps;
};

ResolvedOptions resolve(GenLabel gen, const CqmParams& params, const IntegratorOptions& opts) {
  ResolvedOptions r{};
  r.drift_tol = opts.energy_drift_tol;
  if (!(r.drift_tol > 0.0)) throw invalid_argument("energy_drift_tol must be positive");
  // The local tolerance sits well below the drift bound so that the guard
  // (enforced with a margin on step ends) also covers the dense-output
  // samples, whose interpolation error is one order lower than the step's.
  r.rel_tol = opts.rel_tol > 0.0 ? opts.rel_tol
                                 : std::max(1e-14, std::min(1e-11, 1e-4 * r.drift_tol));
  r.q_escape = opts.q_escape > 0.0
                   ? opts.q_escape
                   : (gen == GenLabel::S ? 1e6 * length_scale(params)
                                         : std::numeric_limits<double>::infinity());
  r.max_step = opts.max_step > 0.0 ? opts.max_step : std::numeric_limits<double>::infinity();
  r.sample_dtau = opts.sample_dtau;
  r.max_steps = opts.max_steps;
  return r;
}

template <std::size_t N>
OdeControl<N> make_control(const CqmParams& params, double energy, const ResolvedOptions& r) {
  OdeControl<N> ctl;
  ctl.rel_tol = r.rel_tol;
  const double q_scale = length_scale(params);
  const double e_scale = std::max(std::fabs(energy), r_minimum_energy(params));
  const double p_scale = std::sqrt(2.0 * params.mass * e_scale);
  ctl.abs_tol.fill(1e-3 * r.rel_tol);
  ctl.abs_tol[0] = 1e-3 * r.rel_tol * q_scale;
  ctl.abs_tol[1] = 1e-3 * r.rel_tol * p_scale;
  ctl.max_step = r.max_step;
  ctl.max_steps = r.max_steps;
  return ctl;
}

// Drift normalized by max(|E0|, 1, local energy magnitude). The last term
// is what makes the test meaningful on escaping S orbits: once the kinetic
// and oscillator terms reach ~1/eps, |H - E0| cannot be resolved below
// eps * q^2/alpha^2 no matter how small the steps are.
double energy_magnitude(GenLabel gen, const CqmParams& params, const PhaseState& s) {
  (void)gen;
  return s.p * s.p / (2.0 * params.mass) + params.g / (2.0 * s.q * s.q) +
         params.mass * s.q * s.q / (2.0 * params.alpha * params.alpha);
}

double relative_drift(GenLabel gen, const CqmParams& params, const PhaseState& state,
                      double energy) {
  const double scale =
      std::max({std::fabs(energy), 1.0, energy_magnitude(gen, params, state)});
  return std::fabs(hamiltonian(gen, params, state) - energy) / scale;
}

[[noreturn]] void rethrow_barrier_stiffness(const step_underflow_error&, double tau,
                                            const PhaseState& state) {
  throw barrier_stiffness_error(
      "step size collapsed against the 1/q^3 barrier near q = " + std::to_string(state.q) +
          " (tau = " + std::to_string(tau) + "); last valid state attached",
      tau, state.q, state.p);
}

}  // namespace

Trajectory integrate(GenLabel gen, const CqmParams& params, const PhaseState& initial,
                     double tau_end, const IntegratorOptions& opts) {
  detail::require_oscillator_label(gen);
  detail::require_positive_q(initial.q);
  if (!(tau_end > 0.0)) throw invalid_argument("tau_end must be positive");

  const ResolvedOptions r = resolve(gen, params, opts);
  Trajectory traj;
  traj.gen = gen;
  traj.energy = hamiltonian(gen, params, initial);
  traj.samples.push_back({0.0, initial.q, initial.p, 0.0});

  auto ctl = make_control<2>(params, traj.energy, r);
  ctl.accept_extra = [&](const StateVec<2>& y) {
    if (!(y[0] > 0.0)) return false;
    return relative_drift(gen, params, {y[0], y[1]}, traj.energy) <= 0.5 * r.drift_tol;
  };

  auto ode_rhs = [&](double, const StateVec<2>& y, StateVec<2>& dy) {
    const PhaseVelocity vel = rhs(gen, params, {y[0], y[1]});
    dy[0] = vel.dq;
    dy[1] = vel.dp;
  };

  double next_sample = r.sample_dtau > 0.0 ? r.sample_dtau : 0.0;
  PhaseState last{initial.q, initial.p};
  double last_tau = 0.0;

  auto record = [&](double tau, const StateVec<2>& y) {
    const double drift = relative_drift(gen, params, {y[0], y[1]}, traj.energy);
    traj.samples.push_back({tau, y[0], y[1], drift});
    traj.stats.max_energy_drift = std::max(traj.stats.max_energy_drift, drift);
  };

  auto on_step = [&](const StepRecord<2>& rec, StateVec<2>& y) {
    if (r.sample_dtau > 0.0) {
      while (next_sample <= rec.tau1 * (1.0 + 1e-14) && next_sample <= tau_end) {
        const auto ys = rec.eval(std::min(next_sample, rec.tau1));
        record(next_sample, ys);
        next_sample += r.sample_dtau;
      }
    } else {
      record(rec.tau1, rec.y1);
    }
    last = {y[0], y[1]};
    last_tau = rec.tau1;
    if (y[0] > r.q_escape) {
      traj.status = TrajectoryStatus::escaped;
      return StepAction::stop;
    }
    return StepAction::continue_run;
  };

  try {
    const OdeStats stats =
        integrate_dopri5<2>(ode_rhs, {initial.q, initial.p}, 0.0, tau_end, ctl, on_step);
    traj.stats.accepted = stats.accepted;
    traj.stats.rejected = stats.rejected;
    traj.stats.rhs_evaluations = stats.rhs_evaluations;
  } catch (const step_underflow_error& e) {
    rethrow_barrier_stiffness(e, last_tau, last);
  }
  return traj;
}

Trajectory integrate_at(GenLabel gen, const CqmParams& params, const PhaseState& initial,
                        const std::vector<double>& sample_times, const IntegratorOptions& opts) {
  detail::require_oscillator_label(gen);
  detail::require_positive_q(initial.q);
  if (sample_times.empty()) throw invalid_argument("sample_times must be non-empty");
  if (!std::is_sorted(sample_times.begin(), sample_times.end()) ||
      !(sample_times.front() > 0.0)) {
    throw invalid_argument("sample_times must be strictly increasing and positive");
  }
  const double tau_end = sample_times.back();

  const ResolvedOptions r = resolve(gen, params, opts);
  Trajectory traj;
  traj.gen = gen;
  traj.energy = hamiltonian(gen, params, initial);

  auto ctl = make_control<2>(params, traj.energy, r);
  ctl.accept_extra = [&](const StateVec<2>& y) {
    if (!(y[0] > 0.0)) return false;
    return relative_drift(gen, params, {y[0], y[1]}, traj.energy) <= 0.5 * r.drift_tol;
  };

  auto ode_rhs = [&](double, const StateVec<2>& y, StateVec<2>& dy) {
    const PhaseVelocity vel = rhs(gen, params, {y[0], y[1]});
    dy[0] = vel.dq;
    dy[1] = vel.dp;
  };

  std::size_t next = 0;
  PhaseState last{initial.q, initial.p};
  double last_tau = 0.0;

  auto on_step = [&](const StepRecord<2>& rec, StateVec<2>& y) {
    while (next < sample_times.size() && sample_times[next] <= rec.tau1 * (1.0 + 1e-14)) {
      const double tau = std::min(sample_times[next], rec.tau1);
      const auto ys = rec.eval(tau);
      const double drift = relative_drift(gen, params, {ys[0], ys[1]}, traj.energy);
      traj.samples.push_back({sample_times[next], ys[0], ys[1], drift});
      traj.stats.max_energy_drift = std::max(traj.stats.max_energy_drift, drift);
      ++next;
    }
    last = {y[0], y[1]};
    last_tau = rec.tau1;
    if (y[0] > r.q_escape) {
      traj.status = TrajectoryStatus::escaped;
      return StepAction::stop;
    }
    return next >= sample_times.size() ? StepAction::stop : StepAction::continue_run;
  };

  try {
    const OdeStats stats =
        integrate_dopri5<2>(ode_rhs, {initial.q, initial.p}, 0.0, tau_end, ctl, on_step);
    traj.stats.accepted = stats.accepted;
    traj.stats.rejected = stats.rejected;
    traj.stats.rhs_evaluations = stats.rhs_evaluations;
  } catch (const step_underflow_error& e) {
    rethrow_barrier_stiffness(e, last_tau, last);
  }
  return traj;
}

std::vector<LabState> evolve_lab_frame(const CqmParams& params, double Q0, double P0,
                                       const std::vector<double>& times,
                                       const IntegratorOptions& opts) {
  if (!(Q0 > 0.0)) throw domain_error("lab coordinate Q must be positive");

  const double energy = P0 * P0 / (2.0 * params.mass) + params.g / (2.0 * Q0 * Q0);

  ResolvedOptions r{};
  r.drift_tol = opts.energy_drift_tol > 0.0 ? opts.energy_drift_tol : 1e-8;
  r.rel_tol =
      opts.rel_tol > 0.0 ? opts.rel_tol : std::max(1e-14, std::min(1e-11, 1e-3 * r.drift_tol));
  r.max_step = opts.max_step > 0.0 ? opts.max_step : std::numeric_limits<double>::infinity();
  r.max_steps = opts.max_steps;

  auto ctl = make_control<2>(params, energy, r);
  ctl.accept_extra = [&](const StateVec<2>& y) {
    if (!(y[0] > 0.0)) return false;
    const double kinetic = y[1] * y[1] / (2.0 * params.mass);
    const double barrier = params.g / (2.0 * y[0] * y[0]);
    const double scale = std::max({std::fabs(energy), 1.0, kinetic + barrier});
    return std::fabs(kinetic + barrier - energy) / scale <= r.drift_tol;
  };

  auto ode_rhs = [&](double, const StateVec<2>& y, StateVec<2>& dy) {
    dy[0] = y[1] / params.mass;
    dy[1] = params.g / (y[0] * y[0] * y[0]);
  };

  // Time-reversal symmetry of the H flow handles negative times: evolving
  // (Q0, -P0) forward to |t| and flipping P gives the state at -t.
  auto run_one_sided = [&](const std::vector<double>& ts, bool reversed) {
    std::vector<LabState> out;
    if (ts.empty()) return out;
    std::size_t next = 0;
    out.reserve(ts.size());
    auto on_step = [&](const StepRecord<2>& rec, StateVec<2>&) {
      while (next < ts.size() && ts[next] <= rec.tau1 * (1.0 + 1e-14)) {
        const auto ys = rec.eval(std::min(ts[next], rec.tau1));
        if (reversed) {
          out.push_back({ys[0], -ys[1], -ts[next]});
        } else {
          out.push_back({ys[0], ys[1], ts[next]});
        }
        ++next;
      }
      return next >= ts.size() ? StepAction::stop : StepAction::continue_run;
    };
    const double p_init = reversed ? -P0 : P0;
    integrate_dopri5<2>(ode_rhs, {Q0, p_init}, 0.0, ts.back(), ctl, on_step);
    return out;
  };

  std::vector<double> forward, backward;
  bool has_zero = false;
  for (double t : times) {
    if (t > 0.0) {
      forward.push_back(t);
    } else if (t < 0.0) {
      backward.push_back(-t);
    } else {
      has_zero = true;
    }
  }
  std::sort(forward.begin(), forward.end());
  std::sort(backward.begin(), backward.end());

  std::vector<LabState> result = run_one_sided(backward, true);
  std::reverse(result.begin(), result.end());
  if (has_zero) result.push_back({Q0, P0, 0.0});
  const std::vector<LabState> fwd = run_one_sided(forward, false);
  result.insert(result.end(), fwd.begin(), fwd.end());
  return result;
}

TurningPoints turning_points(const CqmParams& params, double E) {
  const double e_min = r_minimum_energy(params);
  if (E < e_min) {
    throw below_minimum_error("energy " + std::to_string(E) +
                              " lies below the R potential minimum " + std::to_string(e_min) +
                              "; no classical orbit exists");
  }
  const double a2 = params.alpha * params.alpha;
  const double disc = std::sqrt(std::max(0.0, E * E - params.g * params.mass / a2));
  // Inner root written in rationalized form to avoid cancellation at large E.
  const double q_minus_sq = params.g / (E + disc);
  const double q_plus_sq = a2 * (E + disc) / params.mass;
  return {std::sqrt(q_minus_sq), std::sqrt(q_plus_sq)};
}

TurningPoints turning_points_numeric(const CqmParams& params, double E) {
  const double e_min = r_minimum_energy(params);
  if (E < e_min) throw below_minimum_error("energy below the R potential minimum");
  const double q_eq = r_equilibrium_q(params);
  auto f = [&](double q) { return potential(GenLabel::R, params, q) - E; };
  if (E == e_min) return {q_eq, q_eq};
  double lo = q_eq;
  while (f(lo) < 0.0) lo *= 0.5;
  double hi = q_eq;
  while (f(hi) < 0.0) hi *= 2.0;
  const double q_minus = brent_root(f, lo, q_eq, 1e-14);
  const double q_plus = brent_root(f, q_eq, hi, 1e-14);
  return {q_minus, q_plus};
}

double s_turning_point(const CqmParams& params, double E) {
  const double a2 = params.alpha * params.alpha;
  const double root = std::sqrt(E * E + params.g * params.mass / a2);
  // Rationalized for E > 0 where the direct difference cancels.
  const double q_sq = E >= 0.0 ? params.g / (root + E) : a2 * (root - E) / params.mass;
  return std::sqrt(q_sq);
}

std::optional<double> level_curve_momentum(GenLabel gen, const CqmParams& params, double E,
                                           double q) {
  const double v = potential(gen, params, q);
  double psq = 2.0 * params.mass * (E - v);
  // Round-off guard right at a turning point.
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * 2.0 * params.mass *
                       (std::fabs(E) + std::fabs(v));
  if (psq < -slack) return std::nullopt;
  psq = std::max(psq, 0.0);
  return std::sqrt(psq);
}

std::vector<LevelCurvePoint> level_curve(GenLabel gen, const CqmParams& params, double E,
                                         const std::vector<double>& q_grid) {
  std::vector<LevelCurvePoint> out;
  out.reserve(q_grid.size());
  for (double q : q_grid) {
    if (const auto p = level_curve_momentum(gen, params, E, q)) {
      out.push_back({q, *p});
    }
  }
  return out;
}

OrbitClosure orbit_closure(const CqmParams& params, double E, const IntegratorOptions& opts) {
  const TurningPoints tp = turning_points(params, E);
  if (tp.q_minus == tp.q_plus) {
    throw domain_error("degenerate orbit at the potential minimum has no closure time");
  }

  const ResolvedOptions r = resolve(GenLabel::R, params, opts);
  const double energy = E;
  auto ctl = make_control<3>(params, energy, r);
  ctl.abs_tol[2] = 1e-3 * r.rel_tol * std::max(1.0, M_PI * params.alpha * E);
  ctl.accept_extra = [&](const StateVec<3>& y) {
    if (!(y[0] > 0.0)) return false;
    return relative_drift(GenLabel::R, params, {y[0], y[1]}, energy) <= 0.5 * r.drift_tol;
  };

  auto ode_rhs = [&](double, const StateVec<3>& y, StateVec<3>& dy) {
    const PhaseVelocity vel = rhs(GenLabel::R, params, {y[0], y[1]});
    dy[0] = vel.dq;
    dy[1] = vel.dp;
    dy[2] = y[1] * y[1] / params.mass;  // dA/dtau = p dq/dtau
  };

  int crossings = 0;
  OrbitClosure result{0.0, 0.0, 0.0};
  bool found = false;
  PhaseState last{tp.q_minus, 0.0};
  double last_tau = 0.0;

  auto on_step = [&](const StepRecord<3>& rec, StateVec<3>&) {
    last = {rec.y1[0], rec.y1[1]};
    last_tau = rec.tau1;
    if (rec.y0[1] * rec.y1[1] < 0.0 || (rec.y1[1] == 0.0 && rec.y0[1] != 0.0)) {
      ++crossings;
      if (crossings == 2) {
        double lo = rec.tau0, hi = rec.tau1;
        for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
          const double mid = 0.5 * (lo + hi);
          const double pm = rec.eval(mid)[1];
          if (pm == 0.0) {
            lo = hi = mid;
            break;
          }
          if (pm * rec.eval(lo)[1] < 0.0) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
        const double tau_star = 0.5 * (lo + hi);
        const auto ys = rec.eval(tau_star);
        result.period = tau_star;
        result.distance = std::hypot(ys[0] - tp.q_minus, ys[1]);
        result.enclosed_area = ys[2];
        found = true;
        return StepAction::stop;
      }
    }
    return StepAction::continue_run;
  };

  const double horizon = 3.0 * M_PI * params.alpha;
  try {
    integrate_dopri5<3>(ode_rhs, {tp.q_minus, 0.0, 0.0}, 0.0, horizon, ctl, on_step);
  } catch (const step_underflow_error& e) {
    rethrow_barrier_stiffness(e, last_tau, last);
  }
  if (!found) {
    throw numerical_error("orbit closure not detected within tau = " + std::to_string(horizon));
  }
  return result;
}

}  // namespace cqmsc
