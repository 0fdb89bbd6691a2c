#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cqmsc/generator.hpp"
#include "cqmsc/params.hpp"
#include "cqmsc/potential.hpp"

namespace cqmsc {

/// Hamilton's equations for the R/S generators:
///
///   dq/dtau = p / M
///   dp/dtau = g/q^3 -+ M q / alpha^2   (R: minus, S: plus)
struct PhaseVelocity {
  double dq;
  double dp;
};
PhaseVelocity rhs(GenLabel gen, const CqmParams& params, const PhaseState& state);

struct IntegratorOptions {
  // Relative drift bound |H - E0| / max(|E0|, 1, local energy magnitude);
  // the last term keeps the bound resolvable in double precision on
  // escaping S orbits, where H is a small difference of huge terms.
  double energy_drift_tol = 1e-8;
  double rel_tol = 0.0;            // 0 = derived from energy_drift_tol
  double q_escape = 0.0;           // 0 = 1e6 * length_scale (S only)
  double max_step = 0.0;           // 0 = unlimited
  double sample_dtau = 0.0;        // 0 = record the natural steps
  std::uint64_t max_steps = 50'000'000;
};

enum class TrajectoryStatus { completed, escaped };

struct TrajectorySample {
  double tau;
  double q;
  double p;
  double energy_drift;  // same normalization as the drift guard
};

struct IntegratorStats {
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::uint64_t rhs_evaluations = 0;
  double max_energy_drift = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double energy = 0.0;  // conserved generator value fixed by the initial state
  GenLabel gen = GenLabel::S;
  TrajectoryStatus status = TrajectoryStatus::completed;
  IntegratorStats stats;
};

/// Integrates the generator flow from `initial` for tau in [0, tau_end].
/// Every recorded sample satisfies the energy-drift bound; for S the run is
/// truncated with status `escaped` once q exceeds the escape cutoff (the
/// exponential blow-up overflows quickly past that point), which is a normal
/// outcome, not an error. A step-size collapse against the 1/q^3 barrier
/// raises barrier_stiffness_error carrying the last valid state.
Trajectory integrate(GenLabel gen, const CqmParams& params, const PhaseState& initial,
                     double tau_end, const IntegratorOptions& opts = {});

/// Like integrate(), but samples exactly at the given times (strictly
/// increasing, all in (0, tau_end]) via the continuous extension.
Trajectory integrate_at(GenLabel gen, const CqmParams& params, const PhaseState& initial,
                        const std::vector<double>& sample_times,
                        const IntegratorOptions& opts = {});

/// Lab-frame evolution under H = P^2/(2M) + g/(2Q^2), sampled at the given
/// times (which may include negative values; integration runs backwards via
/// time reversal). Used by the frame-map fidelity checks.
std::vector<LabState> evolve_lab_frame(const CqmParams& params, double Q0, double P0,
                                       const std::vector<double>& times,
                                       const IntegratorOptions& opts = {});

struct TurningPoints {
  double q_minus;
  double q_plus;
};

/// Closed-form turning points of the R orbit at energy E:
/// q^2 = alpha^2 (E -+ sqrt(E^2 - g M / alpha^2)) / M. Requires E at or above
/// the potential minimum sqrt(g M)/alpha (equality gives the degenerate
/// orbit). For S see s_turning_point(): only one finite turning point exists.
TurningPoints turning_points(const CqmParams& params, double E);

/// Root-finding fallback for the turning points of an R-type well; used as a
/// cross-check of the closed form.
TurningPoints turning_points_numeric(const CqmParams& params, double E);

/// The single finite turning point of V_S at energy E (any real E):
/// q^2 = alpha^2 (sqrt(E^2 + g M / alpha^2) - E) / M.
double s_turning_point(const CqmParams& params, double E);

/// |p(q; E)| = sqrt(2M [E - V(q)]), or nullopt where E < V(q).
std::optional<double> level_curve_momentum(GenLabel gen, const CqmParams& params, double E,
                                           double q);

struct LevelCurvePoint {
  double q;
  double p_abs;
};

/// Level-curve samples over a q grid; forbidden grid points are skipped, so
/// an empty result signals an empty classically allowed region.
std::vector<LevelCurvePoint> level_curve(GenLabel gen, const CqmParams& params, double E,
                                         const std::vector<double>& q_grid);

struct OrbitClosure {
  double period;        // first return time to the initial phase-space point
  double distance;      // phase-space distance to the start at that time
  double enclosed_area; // contour integral of p dq accumulated over the loop
};

/// Integrates one R orbit from a p = 0 turning point and detects closure via
/// the second p = 0 crossing (refined on the continuous extension). The
/// enclosed area is accumulated as an extra quadrature state dA/dtau = p^2/M.
OrbitClosure orbit_closure(const CqmParams& params, double E, const IntegratorOptions& opts = {});

}  // namespace cqmsc
