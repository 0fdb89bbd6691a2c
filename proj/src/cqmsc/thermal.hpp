#pragma once

#include <vector>

#include "cqmsc/params.hpp"

namespace cqmsc {

/// Diamond temperature T_D = hbar/(pi alpha) and its inverse beta =
/// pi alpha / hbar. With the observer lifetime 2 alpha this is
/// T_D = 2 hbar / (pi * lifetime).
struct DiamondTemperature {
  double t_d;
  double beta;
};
DiamondTemperature diamond_temperature(const CqmParams& params);

struct BoltzmannProbe {
  double energy;
  double geometric_ratio;  // successive-term ratio of the pole series
  double boltzmann_factor; // e^{-beta E}
  double discrepancy;      // relative difference of the two
};

/// Thermality diagnostics assembled from the stability and spectral results.
/// The Boltzmann comparison is a structural identity test (the successive
/// pole-series terms fall off by exactly e^{-beta E}), labeled a thermality
/// signature rather than a temperature measurement.
struct ThermalReport {
  double t_d;
  double beta;
  double lambda;                 // 1/alpha
  double bound;                  // 2 pi T_D / hbar = 2/alpha
  double ratio;                  // lambda / bound = 1/2
  double im_period_over_hbar;    // Im of the continued primitive period / hbar
  std::vector<BoltzmannProbe> probes;
  double max_probe_discrepancy;
};
ThermalReport thermality_report(const CqmParams& params, const std::vector<double>& probe_energies);

}  // namespace cqmsc
