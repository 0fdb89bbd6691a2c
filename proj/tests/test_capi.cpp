#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "cqmsc.h"

namespace {

struct ParamsHandle {
  cqmsc_params* ptr = nullptr;
  ParamsHandle(double g, double alpha, double hbar = 1.0, double mass = 1.0) {
    REQUIRE(cqmsc_params_create(g, alpha, hbar, mass, &ptr) == CQMSC_OK);
  }
  ~ParamsHandle() { cqmsc_params_destroy(ptr); }
};

}  // namespace

TEST_CASE("c api: parameters and errors") {
  cqmsc_params* bad = nullptr;
  CHECK(cqmsc_params_create(-1.0, 1.0, 1.0, 1.0, &bad) == CQMSC_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(std::string(cqmsc_last_error()).find("g") != std::string::npos);

  ParamsHandle p(1.0, 4.0);
  CHECK(cqmsc_params_omega(p.ptr) == 0.25);
  CHECK(std::string(cqmsc_version()).find('.') != std::string::npos);
  CHECK(std::string(cqmsc_status_name(CQMSC_ERR_DOMAIN)) == "domain-error");

  double mu = 0.0;
  CHECK(cqmsc_conformal_index(p.ptr, 0, 1, &mu) == CQMSC_OK);
  CHECK(mu == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
}

TEST_CASE("c api: generator algebra") {
  ParamsHandle p(1.0, 2.0);
  double u, v, w;
  REQUIRE(cqmsc_generator_coefficients(p.ptr, CQMSC_GEN_S, &u, &v, &w) == CQMSC_OK);
  CHECK(u == 1.0);
  CHECK(v == 0.0);
  CHECK(w == -0.25);

  cqmsc_family family;
  double disc;
  REQUIRE(cqmsc_classify(u, v, w, &family, &disc) == CQMSC_OK);
  CHECK(family == CQMSC_FAMILY_HYPERBOLIC);
  CHECK(disc == 1.0);
  REQUIRE(cqmsc_classify(1.0, 0.0, 0.25, &family, &disc) == CQMSC_OK);
  CHECK(family == CQMSC_FAMILY_ELLIPTIC);
  REQUIRE(cqmsc_classify(1.0, 0.0, 0.0, &family, &disc) == CQMSC_OK);
  CHECK(family == CQMSC_FAMILY_PARABOLIC);
}

TEST_CASE("c api: potentials, maps and level curves") {
  ParamsHandle p(1.0, 2.0);
  double value = 0.0;
  REQUIRE(cqmsc_potential(p.ptr, CQMSC_GEN_R, 2.0, &value) == CQMSC_OK);
  CHECK(value == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(cqmsc_potential(p.ptr, CQMSC_GEN_R, -2.0, &value) == CQMSC_ERR_DOMAIN);

  double dq, dp;
  REQUIRE(cqmsc_rhs(p.ptr, CQMSC_GEN_S, 1.0, 0.0, &dq, &dp) == CQMSC_OK);
  CHECK(dp == doctest::Approx(1.25).epsilon(1e-15));

  double tau;
  ParamsHandle p1(1.0, 1.0);
  REQUIRE(cqmsc_tau_of_t(p1.ptr, CQMSC_GEN_R, 1.0, &tau) == CQMSC_OK);
  CHECK(tau == doctest::Approx(M_PI / 4.0).epsilon(1e-15));
  CHECK(cqmsc_tau_of_t(p1.ptr, CQMSC_GEN_S, 2.0, &tau) == CQMSC_ERR_DOMAIN);

  double q, pp;
  REQUIRE(cqmsc_map_lab_to_gen(p1.ptr, CQMSC_GEN_R, 2.0, 0.0, 1.0, &q, &pp, &tau) == CQMSC_OK);
  CHECK(q == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(pp == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));

  double qm, qp;
  REQUIRE(cqmsc_turning_points(p.ptr, 2.0, &qm, &qp) == CQMSC_OK);
  CHECK(qm == doctest::Approx(0.504017169930912).epsilon(1e-12));
  CHECK(cqmsc_turning_points(p.ptr, 0.2, &qm, &qp) == CQMSC_ERR_BELOW_MINIMUM);

  int allowed;
  double p_abs;
  REQUIRE(cqmsc_level_curve(p.ptr, CQMSC_GEN_R, 2.0, std::sqrt(8.0), &allowed, &p_abs) ==
          CQMSC_OK);
  CHECK(allowed == 1);
  CHECK(p_abs == doctest::Approx(std::sqrt(15.0 / 8.0)).epsilon(1e-14));
  REQUIRE(cqmsc_level_curve(p.ptr, CQMSC_GEN_R, 0.2, 1.0, &allowed, &p_abs) == CQMSC_OK);
  CHECK(allowed == 0);
}

TEST_CASE("c api: trajectories") {
  ParamsHandle p(1.0, 2.0);
  cqmsc_integrate_opts opts;
  cqmsc_integrate_opts_init(&opts);
  opts.sample_dtau = 0.05;

  cqmsc_trajectory* traj = nullptr;
  REQUIRE(cqmsc_integrate(p.ptr, CQMSC_GEN_S, 1.0, 0.0, 60.0, &opts, &traj) == CQMSC_OK);
  REQUIRE(traj != nullptr);
  CHECK(cqmsc_trajectory_escaped(traj) == 1);
  CHECK(cqmsc_trajectory_max_drift(traj) <= 1e-8);
  CHECK(cqmsc_trajectory_energy(traj) == doctest::Approx(0.375).epsilon(1e-15));
  REQUIRE(cqmsc_trajectory_size(traj) > 10);

  double tau, q, pp;
  REQUIRE(cqmsc_trajectory_sample(traj, 0, &tau, &q, &pp) == CQMSC_OK);
  CHECK(tau == 0.0);
  CHECK(q == 1.0);
  CHECK(cqmsc_trajectory_sample(traj, cqmsc_trajectory_size(traj), &tau, &q, &pp) ==
        CQMSC_ERR_INVALID_ARGUMENT);
  cqmsc_trajectory_destroy(traj);

  double period, distance, area;
  REQUIRE(cqmsc_orbit_closure(p.ptr, 2.0, &period, &distance, &area) == CQMSC_OK);
  CHECK(period == doctest::Approx(2.0 * M_PI).epsilon(1e-7));
  CHECK(distance < 1e-6);
}

TEST_CASE("c api: instability") {
  ParamsHandle p(1.0, 2.0);
  cqmsc_lyapunov_opts opts;
  cqmsc_lyapunov_opts_init(&opts);

  cqmsc_lyapunov_estimate est;
  REQUIRE(cqmsc_estimate_lyapunov(p.ptr, 1.0, 0.0, &opts, &est) == CQMSC_OK);
  CHECK(std::fabs(est.lambda_hat * 2.0 - 1.0) < 0.01);
  CHECK(est.r_squared > 0.999);
  CHECK(est.asymptotic_entered == 1);

  opts.tau_end = 1.0;
  CHECK(cqmsc_estimate_lyapunov(p.ptr, 1.0, 0.0, &opts, &est) ==
        CQMSC_ERR_REGIME_NOT_REACHED);

  cqmsc_growth_series* series = nullptr;
  cqmsc_lyapunov_opts_init(&opts);
  REQUIRE(cqmsc_perturbation_growth(p.ptr, 1.0, 0.0, &opts, &series) == CQMSC_OK);
  REQUIRE(series != nullptr);
  REQUIRE(cqmsc_growth_series_size(series) > 10);
  double tau, q_ref, log_delta;
  REQUIRE(cqmsc_growth_series_sample(series, 0, &tau, &q_ref, &log_delta) == CQMSC_OK);
  CHECK(log_delta == doctest::Approx(std::log(1e-8)).epsilon(1e-12));
  cqmsc_growth_series_destroy(series);

  double lambda, bound, ratio;
  int saturated;
  REQUIRE(cqmsc_scrambling_report(p.ptr, &lambda, &bound, &ratio, &saturated) == CQMSC_OK);
  CHECK(lambda == 0.5);
  CHECK(bound == 1.0);
  CHECK(ratio == 0.5);
  CHECK(saturated == 0);
}

TEST_CASE("c api: actions and spectra") {
  ParamsHandle p(1.0, 2.0);

  cqmsc_action_result action;
  REQUIRE(cqmsc_action_eval(p.ptr, 2.0, CQMSC_ACTION_QUADRATURE, 1e-10, &action) == CQMSC_OK);
  CHECK(action.W == doctest::Approx(3.0 * M_PI).epsilon(1e-9));
  CHECK(action.W_langer == doctest::Approx(9.053963248838810).epsilon(1e-9));
  CHECK(action.T_period == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
  CHECK(cqmsc_action_eval(p.ptr, 0.1, CQMSC_ACTION_CLOSED_FORM, 0.0, &action) ==
        CQMSC_ERR_BELOW_MINIMUM);

  double T;
  REQUIRE(cqmsc_period(p.ptr, 2.0, CQMSC_PERIOD_TIME_INTEGRAL, &T) == CQMSC_OK);
  CHECK(T == doctest::Approx(2.0 * M_PI).epsilon(1e-8));

  double rho;
  REQUIRE(cqmsc_thomas_fermi_density(p.ptr, 2.0, &rho) == CQMSC_OK);
  CHECK(rho == doctest::Approx(1.0).epsilon(1e-6));

  double re, im;
  REQUIRE(cqmsc_microcanonical_period_S(p.ptr, &re, &im) == CQMSC_OK);
  CHECK(re == 0.0);
  CHECK(im == doctest::Approx(2.0 * M_PI).epsilon(1e-15));

  ParamsHandle p1(1.0, 1.0);
  REQUIRE(cqmsc_partition_function(p1.ptr, 1.0, 0.0, &re, &im) == CQMSC_OK);
  CHECK(re == doctest::Approx(0.139091883636584598).epsilon(1e-13));
  CHECK(cqmsc_partition_function(p1.ptr, 0.0, M_PI, &re, &im) == CQMSC_ERR_POLE);

  double energies[3];
  REQUIRE(cqmsc_r_eigenvalues(p1.ptr, 2, energies) == CQMSC_OK);
  CHECK(energies[0] == doctest::Approx(2.118033988749895).epsilon(1e-14));
  CHECK(energies[2] - energies[1] == doctest::Approx(2.0).epsilon(1e-14));

  double partial, tail;
  REQUIRE(cqmsc_dos_series(p1.ptr, 0.0, 1, 0, &partial, &tail) == CQMSC_OK);
  CHECK(partial == doctest::Approx(0.227582108143422).epsilon(1e-13));

  const double nan = std::nan("");
  REQUIRE(cqmsc_dos_digamma(p1.ptr, 100.0, nan, 1e3, &rho) == CQMSC_OK);
  CHECK(rho == doctest::Approx(1.576181703046247).epsilon(1e-12));
  CHECK(cqmsc_dos_digamma(p1.ptr, 100.0, nan, nan, &rho) == CQMSC_ERR_INVALID_ARGUMENT);

  double rho_cut;
  REQUIRE(cqmsc_dos_cutoff(p1.ptr, 100.0, 1e3, &rho_cut) == CQMSC_OK);
  CHECK(std::fabs(rho - rho_cut) / rho_cut < 1e-3);

  double pole, series, ratio;
  REQUIRE(cqmsc_dos_contour(p1.ptr, 1.0, 64, &pole, &series, &ratio) == CQMSC_OK);
  CHECK(ratio == doctest::Approx(std::exp(-M_PI)).epsilon(1e-14));

  double closed, truncated, rho_bar;
  REQUIRE(cqmsc_dos_gutzwiller(p1.ptr, 1.0, 64, nan, &closed, &truncated, &rho_bar) == CQMSC_OK);
  CHECK(closed == doctest::Approx(2.0 * pole).epsilon(1e-12));
  CHECK(std::isnan(rho_bar));

  double diff;
  REQUIRE(cqmsc_dos_integral_diff(p1.ptr, 2.0, 1.0, 1e-10, &diff) == CQMSC_OK);
  double d1, d2;
  REQUIRE(cqmsc_dos_digamma(p1.ptr, 2.0, 0.0, nan, &d1) == CQMSC_OK);
  REQUIRE(cqmsc_dos_digamma(p1.ptr, 1.0, 0.0, nan, &d2) == CQMSC_OK);
  CHECK(diff == doctest::Approx(d1 - d2).epsilon(1e-7));

  REQUIRE(cqmsc_trace_green_integrand(p1.ptr, 1.0, 1e-6, &re, &im) == CQMSC_OK);
  CHECK(re == doctest::Approx(1e6).epsilon(1e-4));

  REQUIRE(cqmsc_digamma(1.0, 0.0, &re, &im) == CQMSC_OK);
  CHECK(re == doctest::Approx(-0.5772156649015329).epsilon(1e-13));
}

TEST_CASE("c api: thermality and verification") {
  ParamsHandle p(1.0, 2.0);

  double t_d, beta;
  REQUIRE(cqmsc_diamond_temperature(p.ptr, &t_d, &beta) == CQMSC_OK);
  CHECK(t_d == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-15));

  const double probes[2] = {0.5, 1.0};
  cqmsc_thermal_report rep;
  REQUIRE(cqmsc_thermality_report(p.ptr, probes, 2, &rep) == CQMSC_OK);
  CHECK(rep.ratio == 0.5);
  CHECK(rep.max_probe_discrepancy < 1e-12);
  CHECK(rep.im_period_over_hbar == rep.beta);

  double ratio, boltzmann, discrepancy;
  REQUIRE(cqmsc_thermality_probe(p.ptr, 1.0, &ratio, &boltzmann, &discrepancy) == CQMSC_OK);
  CHECK(ratio == doctest::Approx(std::exp(-2.0 * M_PI)).epsilon(1e-14));
  CHECK(discrepancy < 1e-12);

  char* json = nullptr;
  int passed = -1;
  REQUIRE(cqmsc_verify_run(p.ptr, 1, CQMSC_FAULT_NONE, &json, &passed) == CQMSC_OK);
  REQUIRE(json != nullptr);
  CHECK(passed == 1);
  CHECK(std::string(json).find("\"all_passed\": true") != std::string::npos);
  cqmsc_string_free(json);

  // negative control: dropping the Langer correction must break the
  // pole-sum comparison
  json = nullptr;
  REQUIRE(cqmsc_verify_run(p.ptr, 1, CQMSC_FAULT_DISABLE_LANGER, &json, &passed) == CQMSC_OK);
  CHECK(passed == 0);
  CHECK(std::string(json).find("gutzwiller-contour-factor-two") != std::string::npos);
  cqmsc_string_free(json);
}
