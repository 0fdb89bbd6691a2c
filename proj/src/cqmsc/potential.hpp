#pragma once

#include <complex>

#include "cqmsc/generator.hpp"
#include "cqmsc/params.hpp"

namespace cqmsc {

/// Effective potential of the R or S generator on the half-line q > 0,
/// with the mass scale written out:
///
///   V_R(q) = g/(2 q^2) + M q^2/(2 alpha^2)
///   V_S(q) = g/(2 q^2) - M q^2/(2 alpha^2)
///
/// R is a modified (radial) harmonic oscillator; S pairs the centrifugal
/// barrier with an inverted oscillator and is unbounded on both sides.
double potential(GenLabel gen, const CqmParams& params, double q);

/// dV/dq for the same generators.
double potential_derivative(GenLabel gen, const CqmParams& params, double q);

/// Generator value H_G(q, p) = p^2/(2M) + V_G(q).
double hamiltonian(GenLabel gen, const CqmParams& params, const PhaseState& state);

/// Potential evaluated with a complex time-scale parameter. This is the
/// analytic-continuation path (alpha -> i alpha turns V_S into V_R and the
/// reverse); the real-parameter entry points above never accept complex
/// input.
std::complex<double> potential_continued(GenLabel gen, double g, std::complex<double> alpha,
                                         double mass, double q);

/// Bottom of the R potential well: V_min = sqrt(g M)/alpha at
/// q = (g alpha^2 / M)^{1/4}.
double r_minimum_energy(const CqmParams& params);
double r_equilibrium_q(const CqmParams& params);

/// Characteristic length (g alpha^2 / M)^{1/4}; the S potential crosses zero
/// there and the R potential has its minimum.
double length_scale(const CqmParams& params);

namespace detail {
void require_positive_q(double q);
void require_oscillator_label(GenLabel gen);
}  // namespace detail

}  // namespace cqmsc
