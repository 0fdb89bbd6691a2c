// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// fails. Tolerances and runtime budgets are pinned here; the checks run the
// library's independent routes against each other and against the CLI.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <sys/wait.h>
#include <tuple>
#include <vector>

#include "cqmsc/action.hpp"
#include "cqmsc/dynamics.hpp"
#include "cqmsc/frame_map.hpp"
#include "cqmsc/potential.hpp"
#include "cqmsc/spectral.hpp"
#include "cqmsc/stability.hpp"
#include "cqmsc/thermal.hpp"

using namespace cqmsc;

namespace {

int g_failures = 0;

class Timer {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int id, const char* title, bool passed, const std::string& detail) {
  std::printf("%s  criterion %2d  %-34s %s\n", passed ? "PASS" : "FAIL", id, title,
              detail.c_str());
  if (!passed) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, pattern, a, b);
  return buffer;
}

// 1. Lyapunov exponent over the (g, alpha) grid.
void criterion_1() {
  Timer timer;
  double worst = 0.0;
  double min_r2 = 1.0;
  for (double g : {0.1, 1.0, 10.0}) {
    for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
      const LyapunovEstimate est = estimate_lyapunov(CqmParams(g, alpha), {1.0, 0.0});
      worst = std::max(worst, std::fabs(est.lambda_hat * alpha - 1.0));
      min_r2 = std::min(min_r2, est.r_squared);
    }
  }
  const double elapsed = timer.seconds();
  const bool ok = worst < 0.01 && min_r2 > 0.999 && elapsed < 5.0;
  report(1, "instability exponent sweep", ok,
         fmt("max |lambda*alpha - 1| = %.2e, min r^2 = %.6f", worst, min_r2) +
             fmt(", %.2f s", elapsed));
}

// 2. Loop action: quadrature vs closed form, plus the reference orbit.
void criterion_2() {
  Timer timer;
  std::mt19937_64 rng(321);
  std::uniform_real_distribution<double> ug(0.1, 10.0), ua(0.5, 4.0), ue(0.001, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const CqmParams p(ug(rng), ua(rng));
    const double E = r_minimum_energy(p) * (1.0 + 9.0 * ue(rng));
    const double closed = M_PI * p.alpha * E - M_PI * std::sqrt(p.g);
    worst = std::max(worst,
                     std::fabs(jacobi_action_quadrature(p, E, 1e-9) - closed) / closed);
  }
  const double w_ref = jacobi_action_quadrature(CqmParams(1.0, 2.0), 2.0, 1e-10);
  const double ref_err = std::fabs(w_ref - 3.0 * M_PI) / (3.0 * M_PI);
  const double elapsed = timer.seconds();
  const bool ok = worst < 1e-7 && ref_err < 1e-9 && elapsed < 2.0;
  report(2, "loop action quadrature", ok,
         fmt("max rel dev = %.2e, reference-orbit dev = %.2e", worst, ref_err) +
             fmt(", %.2f s", elapsed));
}

// 3. Period by derivative, time integral and orbit return, across two decades.
void criterion_3() {
  Timer timer;
  const CqmParams p(1.0, 2.0);
  const double expected = M_PI * p.alpha;
  double worst = 0.0;
  for (double E : {0.6, 1.9, 6.0, 19.0, 60.0}) {
    const double routes[3] = {period(p, E, PeriodMode::derivative),
                              period(p, E, PeriodMode::time_integral),
                              orbit_closure(p, E).period};
    for (double t : routes) worst = std::max(worst, std::fabs(t - expected) / expected);
  }
  const double elapsed = timer.seconds();
  const bool ok = worst < 1e-5 && elapsed < 5.0;
  report(3, "three-route period agreement", ok,
         fmt("max rel dev from pi*alpha = %.2e, %.2f s", worst, elapsed));
}

// 4. Thomas-Fermi density equals 1/(2 hbar omega) by the time integral.
void criterion_4() {
  double worst = 0.0;
  for (const auto& [g, alpha, E] :
       {std::tuple{1.0, 2.0, 2.0}, std::tuple{1.0, 1.0, 7.0}, std::tuple{3.0, 0.7, 9.0}}) {
    const CqmParams p(g, alpha);
    const double expected = 1.0 / (2.0 * p.hbar * p.omega());
    worst = std::max(worst, std::fabs(thomas_fermi_density(p, E) - expected) / expected);
  }
  report(4, "classical level density", worst < 1e-6, fmt("max rel dev = %.2e", worst));
}

// 5. Periodic-orbit correction equals twice the contour pole part.
void criterion_5() {
  Timer timer;
  const CqmParams p(1.0, 1.0);
  const SpectralIndex spec(p);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double E = 0.05 + 0.05 * i;
    const double delta = dos_gutzwiller(p, spec, E).delta_rho_closed;
    const double pole = dos_contour(p, spec, E).pole_part;
    worst = std::max(worst, std::fabs(delta - 2.0 * pole) /
                                std::max(std::fabs(delta), 1e-300));
  }
  const double elapsed = timer.seconds();
  report(5, "factor-of-two identity", worst < 1e-12 && elapsed < 1.0,
         fmt("max rel dev = %.2e, %.2f s", worst, elapsed));
}

// 6. Regularization consistency: integral differences vs digamma, and the
//    digamma route vs the box formula at eta = 100.
void criterion_6() {
  Timer timer;
  const CqmParams p(1.0, 1.0);
  const SpectralIndex spec(p);
  const DosRegularization c0{.C = 0.0, .L = {}};
  double worst_pair = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double e1 = 0.4 + 0.45 * i;
    const double e2 = 0.15 + 0.3 * i;
    const double direct = dos_integral_diff(p, spec, e1, e2, 1e-10);
    const double dig = dos_digamma(p, spec, e1, c0) - dos_digamma(p, spec, e2, c0);
    worst_pair = std::max(worst_pair, std::fabs(direct - dig));
  }
  const double L = 1e3;
  const double E = 100.0 * p.hbar * p.omega();
  const double dig = dos_digamma(p, spec, E, DosRegularization{.C = {}, .L = L});
  const double cut = dos_cutoff(p, spec, E, L);
  const double cut_dev = std::fabs(dig - cut) / std::fabs(cut);
  const double elapsed = timer.seconds();
  const bool ok = worst_pair < 1e-8 && cut_dev < 1e-2 && elapsed < 10.0;
  report(6, "regularization consistency", ok,
         fmt("max pair dev = %.2e, cutoff rel dev = %.2e", worst_pair, cut_dev) +
             fmt(", %.2f s", elapsed));
}

// 7. Boltzmann signature at beta = pi alpha / hbar, and the imaginary period.
void criterion_7() {
  const CqmParams p(1.0, 2.0);
  const ThermalReport rep = thermality_report(p, {0.3, 1.0, 2.5});
  const bool period_exact = rep.im_period_over_hbar == rep.beta;
  const bool ok = rep.max_probe_discrepancy < 1e-12 && period_exact;
  report(7, "thermality signature", ok,
         fmt("max ratio dev = %.2e, Im T/hbar - beta = %.1e", rep.max_probe_discrepancy,
             rep.im_period_over_hbar - rep.beta));
}

// 8. Scrambling rate at exactly half the bound, strictly below it.
void criterion_8() {
  bool ok = true;
  for (double alpha : {0.5, 1.0, 2.0, 4.0, 13.0}) {
    const ScramblingReport rep = scrambling_report(CqmParams(1.0, alpha));
    ok = ok && rep.ratio == 0.5 && rep.lambda < rep.bound && !rep.saturated;
  }
  report(8, "scrambling bound at half saturation", ok, ok ? "ratio = 1/2 exactly" : "violated");
}

// 9. Analytic continuation: potentials, pole rotation, transform pole terms.
void criterion_9() {
  const CqmParams p(1.0, 1.0);
  const SpectralIndex spec(p);

  double worst_pot = 0.0;
  const std::complex<double> i_alpha(0.0, p.alpha);
  for (int k = 0; k < 60; ++k) {
    const double q = 0.05 * std::pow(10.0, 2.6 * k / 59.0);
    const auto continued = potential_continued(GenLabel::S, p.g, i_alpha, p.mass, q);
    const double direct = potential(GenLabel::R, p, q);
    worst_pot = std::max(worst_pot,
                         std::abs(continued - direct) / std::max(std::fabs(direct), 1e-300));
  }

  double worst_pole = 0.0;
  const auto [rotated, direct_spectrum] = continued_pole_energies(p, spec, 5);
  for (std::size_t n = 0; n < direct_spectrum.size(); ++n) {
    worst_pole =
        std::max(worst_pole, std::abs(rotated[n] - direct_spectrum[n]) / direct_spectrum[n]);
  }

  double worst_laplace = 0.0;
  for (double eta : {0.8, 1.7}) {
    worst_laplace = std::max(worst_laplace, laplace_pole_check(p, spec, eta, 3).abs_error);
  }

  const bool ok = worst_pot < 1e-13 && worst_pole < 1e-13 && worst_laplace < 1e-4;
  report(9, "operator duality and continuation", ok,
         fmt("potential dev = %.1e, pole dev = %.1e", worst_pot, worst_pole) +
             fmt(", transform dev = %.1e", worst_laplace));
}

// 10. Frame-map fidelity on random lab trajectories for both generators.
double fidelity_residual(GenLabel label, const CqmParams& p, double Q0, double P0) {
  const GeneratorSpec gen = GeneratorSpec::from_label(label, p);
  const int n = 801;
  const double tau_max = 1.0 * p.alpha;
  const double h = 2.0 * tau_max / (n - 1);
  std::vector<double> times(n);
  for (int i = 0; i < n; ++i) {
    const double tau = -tau_max + i * h;
    times[i] = label == GenLabel::R ? p.alpha * std::tan(tau / p.alpha)
                                    : p.alpha * std::tanh(tau / p.alpha);
  }
  IntegratorOptions tight;
  tight.energy_drift_tol = 1e-11;
  const auto lab = evolve_lab_frame(p, Q0, P0, times, tight);

  std::vector<double> qs(n), ps(n);
  for (int i = 0; i < n; ++i) {
    const auto m = map_lab_to_gen(gen, p, lab[i]);
    qs[i] = m.state.q;
    ps[i] = m.state.p;
  }
  double worst = 0.0;
  for (int i = 2; i < n - 2; ++i) {
    const double dq = (-qs[i + 2] + 8.0 * qs[i + 1] - 8.0 * qs[i - 1] + qs[i - 2]) / (12.0 * h);
    const double dp = (-ps[i + 2] + 8.0 * ps[i + 1] - 8.0 * ps[i - 1] + ps[i - 2]) / (12.0 * h);
    const double rq = ps[i] / p.mass;
    const double rp = -potential_derivative(label, p, qs[i]);
    worst = std::max(worst, std::fabs(dq - rq) / (1.0 + std::fabs(rq)));
    worst = std::max(worst, std::fabs(dp - rp) / (1.0 + std::fabs(rp)));
  }
  return worst;
}

void criterion_10() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ug(0.5, 2.0), ua(0.8, 2.5), uq(0.6, 2.5),
      up(-1.5, 1.5);
  double worst = 0.0;
  for (GenLabel label : {GenLabel::R, GenLabel::S}) {
    for (int trial = 0; trial < 10; ++trial) {
      const CqmParams p(ug(rng), ua(rng));
      worst = std::max(worst, fidelity_residual(label, p, uq(rng), up(rng)));
    }
  }
  report(10, "frame-map fidelity", worst < 1e-6, fmt("max residual = %.2e", worst));
}

// 11. End-to-end: the CLI verify run passes with exit code 0.
void criterion_11() {
  const char* env = std::getenv("CQMSC_CLI");
  const std::string cli = env != nullptr ? env : "./build/tools/cqmsc";
  Timer timer;
  const int status = std::system((cli + " verify > /dev/null 2>&1").c_str());
  const double elapsed = timer.seconds();
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  report(11, "end-to-end verify run", code == 0 && elapsed < 60.0,
         fmt("exit code %.0f, %.2f s", static_cast<double>(code), elapsed));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
