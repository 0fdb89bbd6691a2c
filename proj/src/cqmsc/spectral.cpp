#include "cqmsc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cqmsc/action.hpp"
#include "cqmsc/digamma.hpp"
#include "cqmsc/quadrature.hpp"

namespace cqmsc {

namespace {

using complexd = std::complex<double>;

double eta_of(const CqmParams& params, double E) {
  return E / (params.hbar * params.omega());
}

// Geometric ratio of the pole series: x = -e^{-i pi mu} e^{-pi eta}.
complexd geometric_ratio(double mu, double eta) {
  return -std::exp(complexd(-M_PI * eta, -M_PI * mu));
}

}  // namespace

complexd partition_function(const CqmParams& params, const SpectralIndex& spec, complexd T) {
  const complexd z = params.omega() * T;
  const complexd s = std::sinh(z);
  if (std::abs(s) < 1e-12) {
    const long k = std::lround(z.imag() / M_PI);
    throw pole_error("partition function evaluated too close to the pole at T = i pi " +
                     std::to_string(k) + " / omega (omega T = " + std::to_string(z.real()) +
                     (z.imag() < 0 ? " - " : " + ") + std::to_string(std::fabs(z.imag())) + "i)");
  }
  return std::exp(-spec.mu * z) / (2.0 * s);
}

std::vector<double> r_eigenvalues(const CqmParams& params, const SpectralIndex& spec,
                                  int n_max) {
  if (n_max < 0) throw invalid_argument("n_max must be non-negative");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  const double scale = params.hbar * params.omega();
  for (int n = 0; n <= n_max; ++n) {
    out.push_back(scale * (2.0 * n + spec.mu + 1.0));
  }
  return out;
}

SeriesDos dos_series(const CqmParams& params, const SpectralIndex& spec, double E, long n_max,
                     bool em_tail) {
  if (n_max < 1) throw invalid_argument("n_max must be >= 1");
  const double eta = eta_of(params, E);
  const double eta2 = eta * eta;
  // Terms fall off like 1/(2n); summing smallest-first keeps the rounding
  // error of the long partial sums down.
  double sum = 0.0;
  for (long n = n_max; n >= 0; --n) {
    const double a = 2.0 * n + spec.mu + 1.0;
    sum += a / (a * a + eta2);
  }
  if (em_tail) {
    const double a = 2.0 * n_max + spec.mu + 1.0;
    sum += 0.5 * a / (a * a + eta2);
  }
  const double prefactor = 1.0 / (M_PI * params.hbar * params.omega());
  SeriesDos result;
  result.partial_sum = prefactor * sum;
  result.tail_signature = 0.5 * prefactor * std::log(static_cast<double>(n_max));
  return result;
}

double derived_subtraction_constant(const CqmParams& params, double L) {
  if (!(L > 0.0)) throw invalid_argument("cutoff length L must be positive");
  return -std::log(params.hbar / (params.mass * params.omega() * L * L));
}

double dos_digamma(const CqmParams& params, const SpectralIndex& spec, double E,
                   const DosRegularization& reg) {
  double C;
  if (reg.C.has_value()) {
    C = *reg.C;
  } else if (reg.L.has_value()) {
    C = derived_subtraction_constant(params, *reg.L);
  } else {
    throw invalid_argument(
        "digamma regularization needs either an explicit constant C or a cutoff length L");
  }
  const double eta = eta_of(params, E);
  const complexd psi = digamma(complexd(spec.mu + 1.0, -eta) / 2.0);
  return -(psi.real() - C) / (2.0 * M_PI * params.hbar * params.omega());
}

double dos_cutoff(const CqmParams& params, const SpectralIndex&, double E, double L) {
  if (!(L > 0.0)) throw invalid_argument("cutoff length L must be positive");
  if (E == 0.0) throw domain_error("cutoff density is undefined at E = 0");
  const double omega = params.omega();
  return std::log(std::sqrt(2.0 * params.mass / std::fabs(E)) * omega * L) /
         (M_PI * params.hbar * omega);
}

ContourDos dos_contour(const CqmParams& params, const SpectralIndex& spec, double E,
                       int k_max) {
  if (k_max < 1) throw invalid_argument("k_max must be >= 1");
  const double eta = eta_of(params, E);

  // Closed-form pole part (alpha/2 hbar) Im (e^{pi zeta}+1)^{-1}, arranged to
  // avoid overflow on either sign of the energy.
  complexd inv_pole;
  if (eta >= 0.0) {
    const complexd w = std::exp(complexd(-M_PI * eta, -M_PI * spec.mu));
    inv_pole = w / (1.0 + w);
  } else {
    const complexd v = std::exp(complexd(M_PI * eta, M_PI * spec.mu));
    inv_pole = 1.0 / (v + 1.0);
  }

  const complexd x = geometric_ratio(spec.mu, eta);
  complexd partial = 0.0;
  complexd power = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    power *= x;
    partial += power;
  }

  const double half_alpha_over_hbar = params.alpha / (2.0 * params.hbar);
  ContourDos result;
  result.pole_part = half_alpha_over_hbar * inv_pole.imag();
  result.series_part = -half_alpha_over_hbar * partial.imag();
  result.boltzmann_ratio = std::exp(-M_PI * eta);
  return result;
}

GutzwillerDos dos_gutzwiller(const CqmParams& params, const SpectralIndex& spec, double E,
                             int k_max, std::optional<double> L) {
  if (k_max < 1) throw invalid_argument("k_max must be >= 1");
  const double eta = eta_of(params, E);
  const complexd x = geometric_ratio(spec.mu, eta);

  complexd partial = 0.0;
  complexd power = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    power *= x;
    partial += power;
  }

  const double alpha_over_hbar = params.alpha / params.hbar;
  GutzwillerDos result;
  result.delta_rho_closed = -alpha_over_hbar * (x / (1.0 - x)).imag();
  result.delta_rho_series = -alpha_over_hbar * partial.imag();
  if (L.has_value()) result.rho_bar = dos_cutoff(params, spec, E, *L);
  return result;
}

complexd trace_green_integrand(const CqmParams& params, const SpectralIndex& spec, double E,
                               double z) {
  if (!(z > 0.0)) throw domain_error("trace integrand defined for z > 0");
  const complexd zeta(eta_of(params, E), spec.mu);
  return std::exp(complexd(0.0, 1.0) * zeta * z) / std::sinh(z);
}

complexd trace_green_residue(const CqmParams& params, const SpectralIndex& spec, double E,
                             int k) {
  const double eta = eta_of(params, E);
  const double sign = k % 2 == 0 ? 1.0 : -1.0;
  return sign * std::exp(complexd(-k * M_PI * eta, -k * M_PI * spec.mu));
}

double dos_integral_diff(const CqmParams& params, const SpectralIndex& spec, double E1,
                         double E2, double quad_tol) {
  if (E1 == E2) return 0.0;
  const double eta1 = eta_of(params, E1);
  const double eta2 = eta_of(params, E2);
  const double mu = spec.mu;

  // (e^{i zeta1 z} - e^{i zeta2 z}) / sinh z with the small-z cancellation
  // done by expm1; the z -> 0 limit i (eta1 - eta2) is finite.
  auto integrand = [&](double z) -> complexd {
    const complexd base = std::exp(complexd(-mu * z, eta2 * z));
    const complexd diff = cexpm1(complexd(0.0, (eta1 - eta2) * z));
    return base * diff / std::sinh(z);
  };

  const double abs_tol = 0.25 * quad_tol;
  const double z0 = 0.5;
  complexd total = gauss_kronrod_adaptive(integrand, 0.0, z0, abs_tol, 0.0).value;

  // Push the upper limit out in blocks until the analytic tail bound is
  // negligible: |integrand| <= 2 e^{-mu z} / sinh z <= 4.8 e^{-(1+mu) z}.
  double a = z0;
  double len = 5.0;
  for (int block = 0; block < 60; ++block) {
    const double b = a + len;
    total += gauss_kronrod_adaptive(integrand, a, b, abs_tol, 0.0).value;
    const double tail_bound = 4.8 * std::exp(-(1.0 + mu) * b) / (1.0 + mu);
    if (tail_bound < 0.1 * quad_tol) break;
    a = b;
    len *= 2.0;
  }

  return total.real() / (2.0 * M_PI * params.hbar * params.omega());
}

LaplacePoleCheck laplace_pole_check(const CqmParams& params, const SpectralIndex& spec,
                                    double E, int n_terms, double theta, double quad_tol) {
  if (n_terms < 1) throw invalid_argument("n_terms must be >= 1");
  if (!(E > 0.0)) throw invalid_argument("pole check requires E > 0");
  if (!(theta > 0.0 && theta < M_PI / 2.0)) {
    throw invalid_argument("ray angle must lie in (0, pi/2)");
  }
  const double eta = eta_of(params, E);
  const double mu = spec.mu;

  // Z(z) minus its geometric tail from n >= n_terms equals the finite sum of
  // the first n_terms exponentials. Small |z| uses that identity directly
  // (1/sinh and the tail would cancel catastrophically); elsewhere the
  // partition function itself is evaluated.
  auto remainder = [&](complexd z) -> complexd {
    if (std::abs(z) < 0.35) {
      complexd sum = 0.0;
      for (int n = 0; n < n_terms; ++n) {
        sum += std::exp(-(2.0 * n + mu + 1.0) * z);
      }
      return sum;
    }
    const complexd zhat = std::exp(-mu * z) / (2.0 * std::sinh(z));
    const complexd tail =
        std::exp(-(mu + 2.0 * n_terms + 1.0) * z) / (1.0 - std::exp(-2.0 * z));
    return zhat - tail;
  };

  const complexd ray = std::exp(complexd(0.0, theta));
  auto integrand = [&](double s) -> complexd {
    const complexd z = ray * s;
    return ray * std::exp(complexd(0.0, eta) * z) * remainder(z);
  };

  const double decay = eta * std::sin(theta) + (mu + 1.0) * std::cos(theta);
  const double s_max = std::max(10.0, 40.0 / decay);
  const complexd integral =
      gauss_kronrod_adaptive(integrand, 0.0, s_max, 0.25 * quad_tol, 0.0, 20000).value;

  const complexd prefactor = 1.0 / (complexd(0.0, 1.0) * params.hbar * params.omega());
  complexd expected = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    expected += 1.0 / complexd(2.0 * n + mu + 1.0, -eta);
  }
  expected *= prefactor;

  LaplacePoleCheck check;
  check.numeric = prefactor * integral;
  check.expected = expected;
  check.abs_error = std::abs(check.numeric - check.expected);
  return check;
}

std::pair<complexd, complexd> continued_partition(const CqmParams& params,
                                                  const SpectralIndex& spec, complexd T) {
  // R-side closed form exp(-i mu w T) / (2 i sin(w T)) at the rotated
  // frequency w = -i omega.
  const complexd i(0.0, 1.0);
  const complexd w = -i * params.omega();
  const complexd continued = std::exp(-i * spec.mu * w * T) / (2.0 * i * std::sin(w * T));
  return {continued, partition_function(params, spec, T)};
}

std::pair<std::vector<complexd>, std::vector<double>> continued_pole_energies(
    const CqmParams& params, const SpectralIndex& spec, int n_max) {
  if (n_max < 0) throw invalid_argument("n_max must be non-negative");
  const complexd i(0.0, 1.0);
  const complexd w_rotated = i * params.omega();
  std::vector<complexd> rotated;
  rotated.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    // Trace pole at eta = -i (2n + mu + 1); E = hbar w eta with w -> i omega.
    const complexd eta_pole = -i * (2.0 * n + spec.mu + 1.0);
    rotated.push_back(params.hbar * w_rotated * eta_pole);
  }
  return {rotated, r_eigenvalues(params, spec, n_max)};
}

std::pair<complexd, complexd> continued_primitive_period(const CqmParams& params) {
  const complexd alpha_r(0.0, params.alpha);  // alpha_R = i alpha
  return {M_PI * alpha_r, microcanonical_period_S(params)};
}

}  // namespace cqmsc
