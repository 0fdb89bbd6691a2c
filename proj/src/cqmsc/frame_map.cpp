#include "cqmsc/frame_map.hpp"

#include <cmath>
#include <string>

namespace cqmsc {

double tau_of_t(GenLabel gen, const CqmParams& params, double t) {
  const double a = params.alpha;
  switch (gen) {
    case GenLabel::H:
      return t;
    case GenLabel::R:
      if (!std::isfinite(t)) throw domain_error("t must be finite for the R time map");
      return a * std::atan(t / a);
    case GenLabel::S:
      if (!(std::fabs(t) < a)) {
        throw domain_error("S time map requires |t| < alpha (inside the diamond), got t = " +
                           std::to_string(t) + ", alpha = " + std::to_string(a));
      }
      return a * std::atanh(t / a);
    default:
      throw invalid_argument(std::string("no time map implemented for generator ") +
                             gen_label_name(gen));
  }
}

MappedState map_lab_to_gen(const GeneratorSpec& gen, const CqmParams& params,
                           const LabState& lab) {
  if (!(lab.Q > 0.0)) {
    throw domain_error("lab coordinate Q must be positive, got " + std::to_string(lab.Q));
  }
  const double f = gen.f(lab.t);
  if (f == 0.0) {
    throw domain_error("f_G(t) = 0: horizon crossing at t = " + std::to_string(lab.t) +
                       "; the map is valid within one horizon patch only");
  }
  const double root = std::sqrt(std::fabs(f));
  const double q = lab.Q / root;
  const double p = root * (lab.P - params.mass * gen.fdot(lab.t) * lab.Q / (2.0 * f));
  const double tau = tau_of_t(gen.label, params, lab.t);
  return MappedState{PhaseState{q, p}, tau, f > 0.0 ? 1 : -1};
}

}  // namespace cqmsc
