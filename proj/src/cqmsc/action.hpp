#pragma once

#include <complex>

#include "cqmsc/dynamics.hpp"
#include "cqmsc/params.hpp"

namespace cqmsc {

/// Closed-form Jacobi action of the R orbit at energy E:
///   W(E) = pi alpha E - pi sqrt(g M),  for E >= sqrt(g M)/alpha,
/// increasing in alpha and decreasing in g at fixed E, and zero exactly at
/// the degenerate orbit. Units of hbar.
double jacobi_action_closed(const CqmParams& params, double E);

/// The same loop integral, W = contour integral of sqrt(2M [E - V_R]) dq,
/// evaluated numerically. Substituting u = q^2 and mapping the turning
/// points to [-1, 1] turns both inverse-square-root endpoints into the
/// Gauss-Chebyshev (second kind) weight, so the rule converges spectrally.
/// E - V is evaluated numerically at the nodes; nothing of the closed form
/// is reused, which keeps the two routes independent.
double jacobi_action_quadrature(const CqmParams& params, double E, double rel_tol = 1e-8);

/// Langer-corrected action W + pi hbar (sqrt(g) - mu); the replacement
/// sqrt(g) -> mu = sqrt(g + 1/4) is what makes the semiclassical phase of an
/// inverse-square barrier come out right. Requires the default channel
/// (d = 1, l = 0).
double langer_corrected_action(const CqmParams& params, const SpectralIndex& spec, double W);

enum class PeriodMode {
  derivative,     // central finite difference of the quadrature action in E
  time_integral,  // T = 2M * integral dq / sqrt(2M [E - V]) between turning points
};

/// Orbit period, equal to pi alpha independent of E. Both modes are
/// numerical routes; the closed form is never consulted.
double period(const CqmParams& params, double E, PeriodMode mode, double rel_tol = 1e-10);

/// Thomas-Fermi (Weyl) density of the R spectrum, T(E)/(2 pi hbar); the
/// time-integral route gives the constant 1/(2 hbar omega).
double thomas_fermi_density(const CqmParams& params, double E);

/// Period of the primitive orbit continued to the S operator: the purely
/// imaginary value i pi alpha. Its imaginary part is hbar times the inverse
/// diamond temperature.
std::complex<double> microcanonical_period_S(const CqmParams& params);

}  // namespace cqmsc
