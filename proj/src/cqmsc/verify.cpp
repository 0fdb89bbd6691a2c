#include "cqmsc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "cqmsc/action.hpp"
#include "cqmsc/dynamics.hpp"
#include "cqmsc/frame_map.hpp"
#include "cqmsc/potential.hpp"
#include "cqmsc/spectral.hpp"
#include "cqmsc/stability.hpp"
#include "cqmsc/thermal.hpp"

namespace cqmsc {

namespace {

using complexd = std::complex<double>;

class Suite {
public:
  explicit Suite(const VerifyOptions& opts) : opts_(opts), rng_(opts.seed) {}

  std::vector<CheckResult> run() {
    add("action-closed-vs-quadrature",
        "loop quadrature matches pi alpha E - pi sqrt(g M) on 50 random triples", 1e-7,
        [this] { return check_action_random(); });
    add("action-reference-orbit", "W(g=1, alpha=2, E=2) equals 3 pi", 1e-9,
        [this] { return check_action_reference(); });
    add("action-monotonicity", "W increases with alpha and decreases with g", 0.0,
        [this] { return check_action_monotonicity(); });
    add("thomas-fermi", "time-integral density equals 1/(2 hbar omega)", 1e-6,
        [this] { return check_thomas_fermi(); });
    add("gutzwiller-contour-factor-two",
        "periodic-orbit correction equals twice the contour pole part on 100 energies", 1e-12,
        [this] { return check_factor_two(); });
    add("digamma-vs-integral-diff",
        "digamma differences match the direct trace integral on 10 energy pairs", 1e-8,
        [this] { return check_integral_diff(); });
    add("digamma-vs-cutoff", "digamma route matches the cutoff log formula at eta = 100", 1e-2,
        [this] { return check_digamma_cutoff(); });
    add("boltzmann-ratio", "pole-series ratio equals e^{-beta E} at the probe energies", 1e-12,
        [this] { return check_boltzmann(); });
    add("imag-period-beta", "Im of the continued period over hbar equals beta", 0.0,
        [this] { return check_imag_period(); });
    add("scrambling-bound", "lambda/bound is exactly 1/2, strictly below saturation", 0.0,
        [this] { return check_scrambling(); });
    add("duality-potential", "V_S with alpha -> i alpha equals V_R pointwise", 1e-13,
        [this] { return check_duality(); });
    add("pole-rotation", "trace poles rotate onto the discrete spectrum hbar omega (2n+mu+1)",
        1e-13, [this] { return check_pole_rotation(); });
    add("laplace-poles",
        "transform of the partition function reproduces the first three pole terms", 1e-4,
        [this] { return check_laplace(); });
    if (!opts_.quick) {
      add("period-three-way",
          "dW/dE, time integral and orbit return time equal pi alpha across two decades", 1e-5,
          [this] { return check_period(); });
      add("lyapunov-sweep", "fitted exponent matches 1/alpha within 1% over the (g, alpha) grid",
          1e-2, [this] { return check_lyapunov(); });
      add("map-fidelity",
          "mapped lab trajectories obey the generator-frame equations of motion", 1e-6,
          [this] { return check_map_fidelity(); });
    }
    return std::move(results_);
  }

private:
  template <class Fn>
  void add(const char* name, const char* description, double tolerance, Fn fn) {
    CheckResult res;
    res.name = name;
    res.description = description;
    res.tolerance = tolerance;
    const auto start = std::chrono::steady_clock::now();
    try {
      res.measured = fn();
      res.passed = res.measured <= tolerance;
      res.detail = detail_;
    } catch (const std::exception& e) {
      res.measured = std::numeric_limits<double>::infinity();
      res.passed = false;
      res.detail = std::string("exception: ") + e.what();
    }
    detail_.clear();
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results_.push_back(std::move(res));
  }

  SpectralIndex spectral_index(const CqmParams& params, bool faultable) const {
    SpectralIndex spec(params);
    if (faultable && opts_.fault == VerifyFault::disable_langer) {
      spec.mu = std::sqrt(params.g);  // drops the barrier phase correction
    }
    return spec;
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  double check_action_random() {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const CqmParams p(uniform(0.1, 10.0), uniform(0.5, 4.0));
      const double e_min = r_minimum_energy(p);
      const double E = e_min * (1.0 + 9.0 * uniform(0.001, 1.0));
      const double closed = jacobi_action_closed(p, E);
      const double quad = jacobi_action_quadrature(p, E, 1e-9);
      worst = std::max(worst, std::fabs(quad - closed) / closed);
    }
    return worst;
  }

  double check_action_reference() {
    const CqmParams p(1.0, 2.0);
    const double w = jacobi_action_quadrature(p, 2.0, 1e-10);
    detail_ = "W = " + std::to_string(w);
    return std::fabs(w - 3.0 * M_PI) / (3.0 * M_PI);
  }

  double check_action_monotonicity() {
    const CqmParams base(1.0, 2.0);
    const double E = 2.0;
    const double w0 = jacobi_action_quadrature(base, E, 1e-9);
    const double w_alpha = jacobi_action_quadrature(CqmParams(1.0, 2.2), E, 1e-9);
    const double w_g = jacobi_action_quadrature(CqmParams(1.3, 2.0), E, 1e-9);
    const bool ok = w_alpha > w0 && w_g < w0;
    detail_ = "W(alpha+) - W = " + std::to_string(w_alpha - w0) +
              ", W(g+) - W = " + std::to_string(w_g - w0);
    return ok ? 0.0 : 1.0;
  }

  double check_thomas_fermi() {
    double worst = 0.0;
    for (const auto& [g, alpha, E] : {std::tuple{1.0, 2.0, 2.0}, std::tuple{1.0, 1.0, 5.0},
                                      std::tuple{4.0, 0.5, 30.0}}) {
      const CqmParams p(g, alpha);
      const double rho = thomas_fermi_density(p, E);
      const double expected = 1.0 / (2.0 * p.hbar * p.omega());
      worst = std::max(worst, std::fabs(rho - expected) / expected);
    }
    return worst;
  }

  double check_factor_two() {
    const CqmParams& p = opts_.params;
    const SpectralIndex spec = spectral_index(p, /*faultable=*/true);
    const SpectralIndex spec_exact(p);
    const double e_unit = p.hbar * p.omega();
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double E = e_unit * (0.05 + 0.05 * i);
      const double delta = dos_gutzwiller(p, spec, E).delta_rho_closed;
      const double pole = dos_contour(p, spec_exact, E).pole_part;
      const double scale = std::max({std::fabs(delta), std::fabs(2.0 * pole), 1e-300});
      worst = std::max(worst, std::fabs(delta - 2.0 * pole) / scale);
    }
    return worst;
  }

  double check_integral_diff() {
    const CqmParams& p = opts_.params;
    const SpectralIndex spec(p);
    const double e_unit = p.hbar * p.omega();
    const DosRegularization reg{.C = 0.0, .L = {}};
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double e1 = e_unit * (0.4 + 0.45 * i);
      const double e2 = e_unit * (0.15 + 0.3 * i);
      const double via_integral = dos_integral_diff(p, spec, e1, e2, 1e-10);
      const double via_digamma = dos_digamma(p, spec, e1, reg) - dos_digamma(p, spec, e2, reg);
      worst = std::max(worst, std::fabs(via_integral - via_digamma));
    }
    return worst;
  }

  double check_digamma_cutoff() {
    const CqmParams& p = opts_.params;
    const SpectralIndex spec(p);
    const double L = 1e3;
    const double E = 100.0 * p.hbar * p.omega();
    const double dig = dos_digamma(p, spec, E, DosRegularization{.C = {}, .L = L});
    const double cut = dos_cutoff(p, spec, E, L);
    detail_ = "digamma = " + std::to_string(dig) + ", cutoff = " + std::to_string(cut);
    return std::fabs(dig - cut) / std::fabs(cut);
  }

  double check_boltzmann() {
    const CqmParams& p = opts_.params;
    const ThermalReport rep =
        thermality_report(p, {0.5 * p.hbar / p.alpha, p.hbar / p.alpha, 3.0 * p.hbar / p.alpha});
    return rep.max_probe_discrepancy;
  }

  double check_imag_period() {
    const CqmParams& p = opts_.params;
    const double im_over_hbar = microcanonical_period_S(p).imag() / p.hbar;
    const double beta = diamond_temperature(p).beta;
    detail_ = "Im T/hbar = " + std::to_string(im_over_hbar);
    return std::fabs(im_over_hbar - beta);
  }

  double check_scrambling() {
    const CqmParams& p = opts_.params;
    const ScramblingReport rep = scrambling_report(p);
    const bool strict = rep.lambda < rep.bound && !rep.saturated;
    detail_ = "lambda = " + std::to_string(rep.lambda) + ", bound = " + std::to_string(rep.bound);
    if (!strict) return 1.0;
    return std::fabs(rep.ratio - 0.5);
  }

  double check_duality() {
    const CqmParams& p = opts_.params;
    const complexd i_alpha(0.0, p.alpha);
    const double scale = length_scale(p);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double q = scale * std::pow(10.0, -1.3 + 2.6 * k / 49.0);
      const complexd continued = potential_continued(GenLabel::S, p.g, i_alpha, p.mass, q);
      const double direct = potential(GenLabel::R, p, q);
      worst = std::max(worst, std::abs(continued - direct) /
                                  std::max(std::fabs(direct), 1e-300));
    }
    return worst;
  }

  double check_pole_rotation() {
    const CqmParams& p = opts_.params;
    const SpectralIndex spec(p);
    const auto [rotated, direct] = continued_pole_energies(p, spec, 5);
    double worst = 0.0;
    for (std::size_t n = 0; n < direct.size(); ++n) {
      worst = std::max(worst, std::abs(rotated[n] - direct[n]) / direct[n]);
    }
    return worst;
  }

  double check_laplace() {
    const CqmParams& p = opts_.params;
    const SpectralIndex spec(p);
    const double e_unit = p.hbar * p.omega();
    double worst = 0.0;
    for (double eta : {0.8, 1.7}) {
      const auto check = laplace_pole_check(p, spec, eta * e_unit, 3);
      worst = std::max(worst, check.abs_error);
    }
    return worst;
  }

  double check_period() {
    const CqmParams p(1.0, 2.0);
    const double expected = M_PI * p.alpha;
    double worst = 0.0;
    for (double E : {0.6, 1.9, 6.0, 19.0, 60.0}) {
      const double t_deriv = period(p, E, PeriodMode::derivative);
      const double t_int = period(p, E, PeriodMode::time_integral);
      const double t_ode = orbit_closure(p, E).period;
      worst = std::max({worst, std::fabs(t_deriv - expected) / expected,
                        std::fabs(t_int - expected) / expected,
                        std::fabs(t_ode - expected) / expected});
    }
    return worst;
  }

  double check_lyapunov() {
    double worst = 0.0;
    double min_r2 = 1.0;
    for (double g : {0.1, 1.0, 10.0}) {
      for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
        const CqmParams p(g, alpha);
        const LyapunovEstimate est = estimate_lyapunov(p, {1.0, 0.0});
        worst = std::max(worst, std::fabs(est.lambda_hat * alpha - 1.0));
        min_r2 = std::min(min_r2, est.r_squared);
      }
    }
    detail_ = "min r^2 = " + std::to_string(min_r2);
    if (min_r2 <= 0.999) return std::max(worst, 1.0);
    return worst;
  }

  double check_map_fidelity() {
    double worst = 0.0;
    for (GenLabel label : {GenLabel::R, GenLabel::S}) {
      for (int trial = 0; trial < 10; ++trial) {
        const CqmParams p(uniform(0.5, 2.0), uniform(0.8, 2.5));
        const double Q0 = uniform(0.6, 2.5);
        const double P0 = uniform(-1.5, 1.5);
        worst = std::max(worst, map_fidelity_residual(label, p, Q0, P0));
      }
    }
    return worst;
  }

  double map_fidelity_residual(GenLabel label, const CqmParams& p, double Q0, double P0) {
    const GeneratorSpec gen = GeneratorSpec::from_label(label, p);
    const double tau_max = 1.0 * p.alpha;
    const int n = 801;
    const double h = 2.0 * tau_max / (n - 1);

    std::vector<double> taus(n), times(n);
    for (int i = 0; i < n; ++i) {
      taus[i] = -tau_max + i * h;
      const double ratio = taus[i] / p.alpha;
      times[i] = label == GenLabel::R ? p.alpha * std::tan(ratio) : p.alpha * std::tanh(ratio);
    }

    IntegratorOptions tight;
    tight.energy_drift_tol = 1e-11;  // headroom for the frame factors multiplying (Q, P)
    const std::vector<LabState> lab = evolve_lab_frame(p, Q0, P0, times, tight);

    std::vector<double> qs(n), ps(n);
    double g0 = 0.0;
    double energy_drift = 0.0;
    for (int i = 0; i < n; ++i) {
      const MappedState m = map_lab_to_gen(gen, p, lab[i]);
      qs[i] = m.state.q;
      ps[i] = m.state.p;
      const double gv = hamiltonian(label, p, m.state);
      if (i == 0) g0 = gv;
      energy_drift = std::max(energy_drift, std::fabs(gv - g0) / std::max(std::fabs(g0), 1.0));
    }

    // Fourth-order central differences on the uniform tau grid.
    double worst = 0.0;
    for (int i = 2; i < n - 2; ++i) {
      const double dq = (-qs[i + 2] + 8.0 * qs[i + 1] - 8.0 * qs[i - 1] + qs[i - 2]) / (12.0 * h);
      const double dp = (-ps[i + 2] + 8.0 * ps[i + 1] - 8.0 * ps[i - 1] + ps[i - 2]) / (12.0 * h);
      const double rhs_q = ps[i] / p.mass;
      const double rhs_p = -potential_derivative(label, p, qs[i]);
      worst = std::max(worst, std::fabs(dq - rhs_q) / (1.0 + std::fabs(rhs_q)));
      worst = std::max(worst, std::fabs(dp - rhs_p) / (1.0 + std::fabs(rhs_p)));
    }
    // Conservation of the generator value rides along at a tighter tolerance.
    if (energy_drift > 1e-8) worst = std::max(worst, 1.0);
    return worst;
  }

  const VerifyOptions& opts_;
  std::mt19937_64 rng_;
  std::vector<CheckResult> results_;
  std::string detail_;
};

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opts) { return Suite(opts).run(); }

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

std::string verify_report_json(const VerifyOptions& opts,
                               const std::vector<CheckResult>& results) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["params"] = {{"g", opts.params.g},
                 {"alpha", opts.params.alpha},
                 {"hbar", opts.params.hbar},
                 {"mass", opts.params.mass}};
  j["quick"] = opts.quick;
  j["fault"] = opts.fault == VerifyFault::none ? "none" : "disable-langer";
  j["seed"] = opts.seed;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : results) {
    checks.push_back({{"name", r.name},
                      {"description", r.description},
                      {"measured", r.measured},
                      {"tolerance", r.tolerance},
                      {"passed", r.passed},
                      {"seconds", r.seconds},
                      {"detail", r.detail}});
  }
  j["checks"] = checks;
  j["all_passed"] = all_passed(results);
  return j.dump(2);
}

}  // namespace cqmsc
