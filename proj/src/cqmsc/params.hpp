#pragma once

#include "cqmsc/errors.hpp"

namespace cqmsc {

/// Physical parameters shared by every module.
///
/// g is the dimensionless coupling of the inverse-square potential, alpha the
/// time scale of the generator family (half the diamond size), and hbar/mass
/// the action and mass scales, both defaulting to 1. The oscillator frequency
/// omega = 1/alpha is derived, never stored.
struct CqmParams {
  double g;
  double alpha;
  double hbar = 1.0;
  double mass = 1.0;

  CqmParams(double g_, double alpha_, double hbar_ = 1.0, double mass_ = 1.0);

  double omega() const noexcept { return 1.0 / alpha; }
};

/// Angular-momentum channel data for the spectral formulas.
///
/// nu = d/2 - 1 and the conformal index is mu = sqrt((l + nu)^2 + g). The
/// default channel (d = 1, l = 0) gives mu = sqrt(g + 1/4), which is also the
/// Langer-corrected barrier strength.
struct SpectralIndex {
  int l = 0;
  int d = 1;
  double mu;

  explicit SpectralIndex(const CqmParams& params, int l_ = 0, int d_ = 1);

  double nu() const noexcept { return 0.5 * d - 1.0; }
};

// Point on the half-line phase space of a generator frame.
struct PhaseState {
  double q;
  double p;
};

// Lab-frame state (coordinate, momentum, Minkowski time).
struct LabState {
  double Q;
  double P;
  double t;
};

}  // namespace cqmsc
