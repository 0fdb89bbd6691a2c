#include "cqmsc/action.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cqmsc/potential.hpp"
#include "cqmsc/quadrature.hpp"

namespace cqmsc {

namespace {

void require_above_minimum(const CqmParams& params, double E, bool strict) {
  const double e_min = r_minimum_energy(params);
  if (E < e_min || (strict && E == e_min)) {
    throw below_minimum_error("energy " + std::to_string(E) +
                              (strict ? " must exceed " : " must be at least ") +
                              std::to_string(e_min) + ", the R potential minimum");
  }
}

struct TurningMap {
  double mid;   // (q_+^2 + q_-^2)/2
  double half;  // (q_+^2 - q_-^2)/2
  double q(double x) const { return std::sqrt(mid + half * x); }
};

TurningMap turning_map(const CqmParams& params, double E) {
  const TurningPoints tp = turning_points(params, E);
  const double u_minus = tp.q_minus * tp.q_minus;
  const double u_plus = tp.q_plus * tp.q_plus;
  return {0.5 * (u_plus + u_minus), 0.5 * (u_plus - u_minus)};
}

}  // namespace

double jacobi_action_closed(const CqmParams& params, double E) {
  require_above_minimum(params, E, /*strict=*/false);
  return M_PI * params.alpha * E - M_PI * std::sqrt(params.g * params.mass);
}

double jacobi_action_quadrature(const CqmParams& params, double E, double rel_tol) {
  require_above_minimum(params, E, /*strict=*/true);
  const TurningMap map = turning_map(params, E);
  // W = 2 int_{q-}^{q+} sqrt(2M (E - V)) dq = int f(x) sqrt(1-x^2) dx with
  //   f(x) = sqrt(2M (E - V(q(x)))) * half / (q(x) sqrt(1-x^2)),
  // a smooth rational function of x (the kinetic factor itself vanishes like
  // sqrt(1-x^2) at the turning points). Nodes never touch the endpoints, so
  // the 0/0 ratio is always evaluated at interior points.
  auto f = [&](double x) {
    const double u = map.mid + map.half * x;
    const double q = std::sqrt(u);
    const double kin = std::max(0.0, 2.0 * params.mass * (E - potential(GenLabel::R, params, q)));
    return std::sqrt(kin / (1.0 - x * x)) * map.half / q;
  };
  return chebyshev_adaptive(ChebyshevKind::second, f, rel_tol);
}

double langer_corrected_action(const CqmParams& params, const SpectralIndex& spec, double W) {
  if (spec.d != 1 || spec.l != 0) {
    throw invalid_argument("Langer correction implemented for the d = 1, l = 0 channel only");
  }
  return W + M_PI * params.hbar * (std::sqrt(params.g) - spec.mu);
}

double period(const CqmParams& params, double E, PeriodMode mode, double rel_tol) {
  require_above_minimum(params, E, /*strict=*/true);
  switch (mode) {
    case PeriodMode::derivative: {
      const double h = std::max(1e-5, 1e-5 * std::fabs(E));
      const double quad_tol = 1e-2 * rel_tol;
      const double w_plus = jacobi_action_quadrature(params, E + h, quad_tol);
      if (E - h > r_minimum_energy(params)) {
        const double w_minus = jacobi_action_quadrature(params, E - h, quad_tol);
        return (w_plus - w_minus) / (2.0 * h);
      }
      // One-sided next to the degenerate orbit; exact anyway since W is
      // linear in E.
      return (w_plus - jacobi_action_quadrature(params, E, quad_tol)) / h;
    }
    case PeriodMode::time_integral: {
      const TurningMap map = turning_map(params, E);
      // T = 2M int dq / sqrt(2M (E - V)); with u = q^2 the endpoint factors
      // combine into the first-kind Chebyshev weight.
      auto f = [&](double x) {
        const double u = map.mid + map.half * x;
        const double q = std::sqrt(u);
        const double kin =
            std::max(0.0, 2.0 * params.mass * (E - potential(GenLabel::R, params, q)));
        return params.mass * map.half * std::sqrt((1.0 - x * x) / kin) / q;
      };
      return chebyshev_adaptive(ChebyshevKind::first, f, rel_tol);
    }
  }
  throw invalid_argument("unknown period mode");
}

double thomas_fermi_density(const CqmParams& params, double E) {
  return period(params, E, PeriodMode::time_integral, 1e-10) / (2.0 * M_PI * params.hbar);
}

std::complex<double> microcanonical_period_S(const CqmParams& params) {
  return {0.0, M_PI * params.alpha};
}

}  // namespace cqmsc
