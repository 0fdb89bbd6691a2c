#include "cqmsc/thermal.hpp"

#include <algorithm>
#include <cmath>

#include "cqmsc/action.hpp"
#include "cqmsc/spectral.hpp"
#include "cqmsc/stability.hpp"

namespace cqmsc {

DiamondTemperature diamond_temperature(const CqmParams& params) {
  DiamondTemperature dt;
  dt.t_d = params.hbar / (M_PI * params.alpha);
  dt.beta = (M_PI * params.alpha) / params.hbar;
  return dt;
}

ThermalReport thermality_report(const CqmParams& params,
                                const std::vector<double>& probe_energies) {
  if (probe_energies.empty()) throw invalid_argument("probe_energies must be non-empty");
  for (double e : probe_energies) {
    if (!(e > 0.0)) throw invalid_argument("probe energies must be positive");
  }

  const DiamondTemperature dt = diamond_temperature(params);
  const ScramblingReport scr = scrambling_report(params);
  const SpectralIndex spec(params);

  ThermalReport rep;
  rep.t_d = dt.t_d;
  rep.beta = dt.beta;
  rep.lambda = scr.lambda;
  rep.bound = scr.bound;
  rep.ratio = scr.ratio;
  rep.im_period_over_hbar = microcanonical_period_S(params).imag() / params.hbar;
  rep.max_probe_discrepancy = 0.0;

  rep.probes.reserve(probe_energies.size());
  for (double e : probe_energies) {
    BoltzmannProbe probe;
    probe.energy = e;
    probe.geometric_ratio = dos_contour(params, spec, e, 1).boltzmann_ratio;
    probe.boltzmann_factor = std::exp(-dt.beta * e);
    probe.discrepancy = std::fabs(probe.geometric_ratio - probe.boltzmann_factor) /
                        std::max(probe.boltzmann_factor, 1e-300);
    rep.max_probe_discrepancy = std::max(rep.max_probe_discrepancy, probe.discrepancy);
    rep.probes.push_back(probe);
  }
  return rep;
}

}  // namespace cqmsc
