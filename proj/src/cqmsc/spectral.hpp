#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "cqmsc/params.hpp"

namespace cqmsc {

/// Partition function of the S flow (equal to the Euclidean R one),
///   Z(T) = exp(-mu omega T) / (2 sinh(omega T)),
/// for complex T away from the poles omega T = i pi k.
std::complex<double> partition_function(const CqmParams& params, const SpectralIndex& spec,
                                        std::complex<double> T);

/// Discrete R spectrum E_n = hbar omega (2n + mu + 1), n = 0..n_max.
std::vector<double> r_eigenvalues(const CqmParams& params, const SpectralIndex& spec, int n_max);

/// Truncated pole series for the S density of states,
///   rho ~ (1/(pi hbar omega)) sum_{n=0}^{n_max} Re 1/((2n + mu + 1) - i eta),
/// eta = E/(hbar omega). The full series diverges like a harmonic series;
/// the partial sum is returned together with the logarithmic tail signature
/// (1/(2 pi hbar omega)) ln(n_max) so callers cannot mistake it for a
/// converged value. With em_tail, half of the last term is added
/// (Euler-Maclaurin midpoint correction), which accelerates differences of
/// partial sums at two energies.
struct SeriesDos {
  double partial_sum;
  double tail_signature;
};
SeriesDos dos_series(const CqmParams& params, const SpectralIndex& spec, double E, long n_max,
                     bool em_tail = false);

/// Regularization constants for the digamma route: either an explicit
/// subtraction constant C, or a box length L from which
/// C = -ln(hbar / (M omega L^2)) is derived.
struct DosRegularization {
  std::optional<double> C;
  std::optional<double> L;
};
double derived_subtraction_constant(const CqmParams& params, double L);

/// Digamma-regularized density of states of S:
///   rho(E) = -(1/(2 pi hbar omega)) Re[ psi((mu + 1 - i eta)/2) - C ].
double dos_digamma(const CqmParams& params, const SpectralIndex& spec, double E,
                   const DosRegularization& reg);

/// Leading-order classical (cutoff-regularized) density of S in a box of
/// length L:  rho(E) ~ (1/(pi hbar omega)) ln(sqrt(2M/|E|) omega L).
/// Valid for |E| >> hbar omega.
double dos_cutoff(const CqmParams& params, const SpectralIndex& spec, double E, double L);

/// Pole contribution to the S density of states from the trace integrand's
/// poles on the imaginary axis, in closed form
///   (alpha / 2 hbar) Im (e^{pi zeta} + 1)^{-1},   zeta = eta + i mu,
/// together with the k_max-truncated residue series and the magnitude of the
/// geometric ratio e^{-pi eta} (the Boltzmann signature). The smooth
/// principal-value remainder is not computed.
struct ContourDos {
  double pole_part;
  double series_part;
  double boltzmann_ratio;
};
ContourDos dos_contour(const CqmParams& params, const SpectralIndex& spec, double E,
                       int k_max = 64);

/// Periodic-orbit (trace-formula) correction to the S density of states,
///   delta rho = -(alpha/hbar) Im sum_{k>=1} x^k,  x = -e^{-i pi mu} e^{-pi eta},
/// in closed form and as the k_max-truncated sum. The smooth term is the
/// cutoff-regularized classical density when a box length is supplied.
struct GutzwillerDos {
  double delta_rho_closed;
  double delta_rho_series;
  std::optional<double> rho_bar;
};
GutzwillerDos dos_gutzwiller(const CqmParams& params, const SpectralIndex& spec, double E,
                             int k_max = 64, std::optional<double> L = std::nullopt);

/// Integrand exp(i (eta + i mu) z)/sinh z of the trace integral, z > 0.
std::complex<double> trace_green_integrand(const CqmParams& params, const SpectralIndex& spec,
                                           double E, double z);

/// Residue of that integrand at the pole z_k = i pi k:
/// R_k = (-e^{-i pi mu} e^{-pi eta})^k.
std::complex<double> trace_green_residue(const CqmParams& params, const SpectralIndex& spec,
                                         double E, int k);

/// The C-independent density difference rho(E1) - rho(E2), computed as
///   (1/(2 pi hbar omega)) Re int_0^inf (e^{i zeta1 z} - e^{i zeta2 z})/sinh z dz.
/// The difference integrand is finite at z = 0 and exponentially damped, so
/// no regularization is needed; the result must match the digamma route.
double dos_integral_diff(const CqmParams& params, const SpectralIndex& spec, double E1,
                         double E2, double quad_tol = 1e-10);

/// Laplace-transform consistency probe: the transform of the partition
/// function, with its (n >= n_terms) geometric tail subtracted in closed
/// form, is integrated numerically along the rotated ray z = e^{i theta} s
/// and compared with the first n_terms pole terms of the trace.
struct LaplacePoleCheck {
  std::complex<double> numeric;
  std::complex<double> expected;
  double abs_error;
};
LaplacePoleCheck laplace_pole_check(const CqmParams& params, const SpectralIndex& spec, double E,
                                    int n_terms = 3, double theta = M_PI / 4.0,
                                    double quad_tol = 1e-12);

/// Closed-form quantities computed on the R side and carried to the S side
/// by the parameter rotation omega -> -i omega (alpha_R -> i alpha). Each
/// returns {continued value, directly computed S-side value}; the rotation
/// is applied before any real/imaginary part is taken.
std::pair<std::complex<double>, std::complex<double>> continued_partition(
    const CqmParams& params, const SpectralIndex& spec, std::complex<double> T);

/// Trace poles of the S side rotate into the real R eigenvalues under
/// omega -> i omega: returns {rotated pole energies, direct spectrum}.
std::pair<std::vector<std::complex<double>>, std::vector<double>> continued_pole_energies(
    const CqmParams& params, const SpectralIndex& spec, int n_max);

/// Primitive-orbit period pi alpha_R continued with alpha_R = i alpha:
/// returns {i pi alpha, microcanonical period of S}.
std::pair<std::complex<double>, std::complex<double>> continued_primitive_period(
    const CqmParams& params);

}  // namespace cqmsc
