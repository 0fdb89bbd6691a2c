#include "cqmsc/params.hpp"

#include <cmath>
#include <string>

namespace cqmsc {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw invalid_argument(std::string(name) + " must be positive and finite, got " +
                           std::to_string(value));
  }
}

}  // namespace

CqmParams::CqmParams(double g_, double alpha_, double hbar_, double mass_)
    : g(g_), alpha(alpha_), hbar(hbar_), mass(mass_) {
  require_positive(g, "g");
  require_positive(alpha, "alpha");
  require_positive(hbar, "hbar");
  require_positive(mass, "mass");
}

SpectralIndex::SpectralIndex(const CqmParams& params, int l_, int d_) : l(l_), d(d_), mu(0.0) {
  if (l < 0) throw invalid_argument("angular momentum l must be non-negative");
  if (d < 1) throw invalid_argument("spatial dimension d must be >= 1");
  const double lnu = l + nu();
  mu = std::sqrt(lnu * lnu + params.g);
}

}  // namespace cqmsc
