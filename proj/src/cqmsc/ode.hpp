#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

#include "cqmsc/errors.hpp"

namespace cqmsc {

// Adaptive Dormand-Prince 5(4) stepping for small systems, with a cubic
// Hermite continuous extension used for sampling and event refinement.
// The embedded pair controls local truncation error; callers may install an
// extra acceptance predicate (e.g. an energy-drift guard) that forces step
// rejection on top of the error test.

template <std::size_t N>
using StateVec = std::array<double, N>;

struct OdeStats {
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::uint64_t rhs_evaluations = 0;
};

enum class StepAction { continue_run, state_modified, stop };

template <std::size_t N>
struct StepRecord {
  double tau0 = 0.0;
  double tau1 = 0.0;
  StateVec<N> y0{};
  StateVec<N> y1{};
  StateVec<N> f0{};
  StateVec<N> f1{};

  // Cubic Hermite interpolant on [tau0, tau1].
  StateVec<N> eval(double tau) const {
    const double h = tau1 - tau0;
    const double s = (tau - tau0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    StateVec<N> y;
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = h00 * y0[i] + h * h10 * f0[i] + h01 * y1[i] + h * h11 * f1[i];
    }
    return y;
  }
};

template <std::size_t N>
struct OdeControl {
  double rel_tol = 1e-11;
  StateVec<N> abs_tol{};  // per-component floor, caller-supplied scales
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0.0;  // 0 = choose automatically
  std::uint64_t max_steps = 50'000'000;
  // Extra acceptance test evaluated on the tentative end state; returning
  // false rejects the step and retries with half the size.
  std::function<bool(const StateVec<N>&)> accept_extra;
};

// Integrates y' = rhs(tau, y) from tau0 to tau_end (tau_end > tau0).
// on_step(record, y_live) is called after every accepted step; it may modify
// y_live (returning state_modified) or end the run (returning stop).
// Throws numerical_error on step underflow or step budget exhaustion.
template <std::size_t N, class Rhs, class OnStep>
OdeStats integrate_dopri5(Rhs&& rhs, StateVec<N> y, double tau0, double tau_end,
                          const OdeControl<N>& ctl, OnStep&& on_step) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // 5th-order minus embedded 4th-order weights (k7 = FSAL evaluation).
  static constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                          e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                          e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

  if (!(tau_end > tau0)) throw invalid_argument("integration requires tau_end > tau0");

  OdeStats stats;
  double tau = tau0;
  StateVec<N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;

  rhs(tau, y, k1);
  ++stats.rhs_evaluations;

  auto err_scale = [&](const StateVec<N>& y0, const StateVec<N>& y1, std::size_t i) {
    return ctl.abs_tol[i] + ctl.rel_tol * std::max(std::fabs(y0[i]), std::fabs(y1[i]));
  };

  double h = ctl.initial_step;
  if (h <= 0.0) {
    // Characteristic time |y|/|y'| as a first guess; the error controller
    // fixes it up within a few steps.
    double fnorm = 0.0, ynorm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      fnorm = std::max(fnorm, std::fabs(k1[i]));
      ynorm = std::max(ynorm, std::fabs(y[i]));
    }
    h = fnorm > 0.0 ? 0.01 * (ynorm + 1e-3) / fnorm : 1e-3 * (tau_end - tau0);
    h = std::clamp(h, 1e-8 * (tau_end - tau0), tau_end - tau0);
  }
  h = std::min(h, ctl.max_step);

  bool fsal_valid = true;
  while (tau < tau_end) {
    if (stats.accepted + stats.rejected >= ctl.max_steps) {
      throw numerical_error("integration step budget exhausted at tau = " + std::to_string(tau));
    }
    const double eps_floor = 16.0 * std::numeric_limits<double>::epsilon() *
                             std::max(std::fabs(tau), std::fabs(tau_end - tau0));
    if (h < eps_floor) {
      throw step_underflow_error("step size underflow at tau = " + std::to_string(tau));
    }
    bool last = false;
    if (tau + h >= tau_end) {
      h = tau_end - tau;
      last = true;
    }

    if (!fsal_valid) {
      rhs(tau, y, k1);
      ++stats.rhs_evaluations;
      fsal_valid = true;
    }

    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(tau + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(tau + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(tau + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(tau + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(tau + h, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(tau + h, ynew, k7);
    stats.rhs_evaluations += 6;

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
      const double sc = err_scale(y, ynew, i);
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / static_cast<double>(N));

    bool accept = err <= 1.0 && std::isfinite(err);
    if (accept && ctl.accept_extra && !ctl.accept_extra(ynew)) accept = false;

    if (!accept) {
      ++stats.rejected;
      double shrink = 0.5;
      if (std::isfinite(err) && err > 1.0) {
        shrink = std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9);
      }
      h *= shrink;
      continue;
    }

    const double tau_next = last ? tau_end : tau + h;
    StepRecord<N> rec;
    rec.tau0 = tau;
    rec.tau1 = tau_next;
    rec.y0 = y;
    rec.y1 = ynew;
    rec.f0 = k1;
    rec.f1 = k7;

    tau = tau_next;
    y = ynew;
    k1 = k7;  // FSAL
    ++stats.accepted;

    const StepAction action = on_step(rec, y);
    if (action == StepAction::stop) break;
    if (action == StepAction::state_modified) fsal_valid = false;

    if (!last) {
      const double grow = err > 0.0 ? std::min(5.0, 0.9 * std::pow(err, -0.2)) : 5.0;
      h = std::min(h * grow, ctl.max_step);
    }
  }
  return stats;
}

}  // namespace cqmsc
