#pragma once

#include "cqmsc/generator.hpp"
#include "cqmsc/params.hpp"

namespace cqmsc {

/// Generator time as a function of Minkowski time, tau = integral dt / f_G(t)
/// with tau(0) = 0:
///
///   R: tau = alpha * atan(t/alpha),   t unbounded
///   S: tau = alpha * atanh(t/alpha),  |t| < alpha (inside the diamond)
///   H: tau = t
///
/// Both maps are odd and strictly increasing on their domains.
double tau_of_t(GenLabel gen, const CqmParams& params, double t);

struct MappedState {
  PhaseState state;  // (q, p) in the generator frame
  double tau;
  int f_sign;  // sign of f_G(t); the map is restricted to one horizon patch
};

/// Lab state (Q, P, t) to generator-frame state (q, p, tau):
///
///   q = Q / |f_G(t)|^{1/2}
///   p = |f_G(t)|^{1/2} (P - M fdot_G(t) Q / (2 f_G(t)))
///
/// f_G(t) = 0 is a horizon crossing and is rejected rather than continued.
MappedState map_lab_to_gen(const GeneratorSpec& gen, const CqmParams& params,
                           const LabState& lab);

}  // namespace cqmsc
