#include "cqmsc/potential.hpp"

#include <cmath>
#include <string>

namespace cqmsc {

namespace detail {

void require_positive_q(double q) {
  if (!(q > 0.0)) {
    throw domain_error("coordinate q must be positive (half-line), got " + std::to_string(q));
  }
}

void require_oscillator_label(GenLabel gen) {
  if (gen != GenLabel::R && gen != GenLabel::S) {
    throw invalid_argument(std::string("operation defined for the R and S generators only, got ") +
                           gen_label_name(gen));
  }
}

}  // namespace detail

namespace {

double oscillator_sign(GenLabel gen) { return gen == GenLabel::R ? 1.0 : -1.0; }

}  // namespace

double potential(GenLabel gen, const CqmParams& params, double q) {
  detail::require_oscillator_label(gen);
  detail::require_positive_q(q);
  const double barrier = params.g / (2.0 * q * q);
  const double osc = params.mass * q * q / (2.0 * params.alpha * params.alpha);
  return barrier + oscillator_sign(gen) * osc;
}

double potential_derivative(GenLabel gen, const CqmParams& params, double q) {
  detail::require_oscillator_label(gen);
  detail::require_positive_q(q);
  const double barrier = -params.g / (q * q * q);
  const double osc = params.mass * q / (params.alpha * params.alpha);
  return barrier + oscillator_sign(gen) * osc;
}

double hamiltonian(GenLabel gen, const CqmParams& params, const PhaseState& state) {
  return state.p * state.p / (2.0 * params.mass) + potential(gen, params, state.q);
}

std::complex<double> potential_continued(GenLabel gen, double g, std::complex<double> alpha,
                                         double mass, double q) {
  detail::require_oscillator_label(gen);
  detail::require_positive_q(q);
  const std::complex<double> barrier = g / (2.0 * q * q);
  const std::complex<double> osc = mass * q * q / (2.0 * alpha * alpha);
  return barrier + oscillator_sign(gen) * osc;
}

double r_minimum_energy(const CqmParams& params) {
  return std::sqrt(params.g * params.mass) / params.alpha;
}

double r_equilibrium_q(const CqmParams& params) { return length_scale(params); }

double length_scale(const CqmParams& params) {
  return std::pow(params.g * params.alpha * params.alpha / params.mass, 0.25);
}

}  // namespace cqmsc
