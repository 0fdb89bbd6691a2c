#include <doctest.h>

#include <cmath>
#include <random>

#include "cqmsc/action.hpp"
#include "cqmsc/dynamics.hpp"
#include "cqmsc/potential.hpp"
#include "oracles.hpp"

using namespace cqmsc;

TEST_CASE("closed-form loop action") {
  SUBCASE("reference orbit gives 3 pi") {
    const CqmParams p(1.0, 2.0);
    CHECK(jacobi_action_closed(p, 2.0) == doctest::Approx(3.0 * M_PI).epsilon(1e-15));
  }
  SUBCASE("zero at the degenerate orbit") {
    const CqmParams p(1.0, 1.0);
    CHECK(jacobi_action_closed(p, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("substitution check") {
    const CqmParams p(4.0, 1.0);
    CHECK(jacobi_action_closed(p, 3.0) == doctest::Approx(M_PI).epsilon(1e-14));
  }
  SUBCASE("below the minimum") {
    CHECK_THROWS_AS(jacobi_action_closed(CqmParams(1.0, 1.0), 0.5), below_minimum_error);
  }
}

TEST_CASE("quadrature route") {
  SUBCASE("agrees with the brute-force oracle and the closed form") {
    const CqmParams p(1.0, 2.0);
    const double oracle = oracles::loop_action(1.0, 2.0, 2.0);
    const double quad = jacobi_action_quadrature(p, 2.0, 1e-10);
    CHECK(quad == doctest::Approx(oracle).epsilon(1e-7));
    CHECK(quad == doctest::Approx(3.0 * M_PI).epsilon(1e-10));
  }
  SUBCASE("small-orbit limit") {
    const CqmParams p(1.0, 1.0);
    const double w = jacobi_action_quadrature(p, 1.0 + 1e-6, 1e-9);
    CHECK(w == doctest::Approx(M_PI * 1e-6).epsilon(1e-3));
  }
  SUBCASE("linear in energy") {
    const CqmParams p(1.0, 2.0);
    const double w1 = jacobi_action_quadrature(p, 2.0, 1e-10);
    const double w2 = jacobi_action_quadrature(p, 4.0, 1e-10);
    CHECK(w2 - w1 == doctest::Approx(M_PI * p.alpha * 2.0).epsilon(1e-9));
  }
  SUBCASE("random parameter sweep against the closed form") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ug(0.1, 10.0), ua(0.5, 4.0), ue(0.001, 1.0);
    for (int i = 0; i < 50; ++i) {
      const CqmParams p(ug(rng), ua(rng));
      const double E = r_minimum_energy(p) * (1.0 + 9.0 * ue(rng));
      const double closed = jacobi_action_closed(p, E);
      const double quad = jacobi_action_quadrature(p, E, 1e-9);
      CHECK(std::fabs(quad - closed) / closed < 1e-7);
    }
  }
}

TEST_CASE("Langer-corrected action") {
  const CqmParams p(1.0, 2.0);
  const SpectralIndex spec(p);
  SUBCASE("reference value") {
    const double w = jacobi_action_closed(p, 2.0);
    CHECK(langer_corrected_action(p, spec, w) ==
          doctest::Approx(9.053963248838810).epsilon(1e-12));
  }
  SUBCASE("correction fades at strong coupling") {
    const CqmParams strong(1e6, 2.0);
    const SpectralIndex sspec(strong);
    const double w = jacobi_action_closed(strong, 2.0 * r_minimum_energy(strong));
    const double shift = langer_corrected_action(strong, sspec, w) - w;
    CHECK(std::fabs(shift) < 1e-3);
  }
  SUBCASE("integer index at g = 3/4") {
    const CqmParams p34(0.75, 1.7);
    const SpectralIndex spec34(p34);
    const double E = 2.0 * r_minimum_energy(p34);
    const double w = jacobi_action_closed(p34, E);
    CHECK(langer_corrected_action(p34, spec34, w) ==
          doctest::Approx(M_PI * p34.alpha * E - M_PI).epsilon(1e-13));
  }
  SUBCASE("non-default channel rejected") {
    CHECK_THROWS_AS(langer_corrected_action(p, SpectralIndex(p, 1, 3), 1.0), invalid_argument);
  }
}

TEST_CASE("orbit period") {
  const CqmParams p(1.0, 2.0);
  const double expected = M_PI * p.alpha;
  SUBCASE("both numerical routes at the reference energy") {
    CHECK(period(p, 2.0, PeriodMode::derivative) == doctest::Approx(expected).epsilon(1e-6));
    CHECK(period(p, 2.0, PeriodMode::time_integral) == doctest::Approx(expected).epsilon(1e-6));
  }
  SUBCASE("independent of energy") {
    CHECK(period(p, 50.0, PeriodMode::derivative) == doctest::Approx(expected).epsilon(1e-6));
    CHECK(period(p, 50.0, PeriodMode::time_integral) ==
          doctest::Approx(expected).epsilon(1e-6));
    const double t1 = period(p, 0.7, PeriodMode::time_integral);
    const double t2 = period(p, 70.0, PeriodMode::time_integral);
    CHECK(std::fabs(t1 - t2) / t1 < 1e-6);
  }
  SUBCASE("matches the orbit-closure return time") {
    const double t_ode = orbit_closure(p, 2.0).period;
    const double t_int = period(p, 2.0, PeriodMode::time_integral);
    CHECK(std::fabs(t_ode - t_int) / t_int < 1e-5);
  }
}

TEST_CASE("classical level density") {
  SUBCASE("constants") {
    CHECK(thomas_fermi_density(CqmParams(1.0, 2.0), 2.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(thomas_fermi_density(CqmParams(1.0, 1.0), 3.0) == doctest::Approx(0.5).epsilon(1e-6));
  }
  SUBCASE("flat in energy") {
    const CqmParams p(2.0, 1.5);
    const double r1 = thomas_fermi_density(p, 2.0 * r_minimum_energy(p));
    const double r2 = thomas_fermi_density(p, 20.0 * r_minimum_energy(p));
    CHECK(std::fabs(r1 - r2) / r1 < 1e-6);
  }
}

TEST_CASE("continued period is purely imaginary") {
  CHECK(microcanonical_period_S(CqmParams(1.0, 1.0)) == std::complex<double>(0.0, M_PI));
  CHECK(microcanonical_period_S(CqmParams(1.0, 2.0)) == std::complex<double>(0.0, 2.0 * M_PI));
  CHECK(microcanonical_period_S(CqmParams(3.0, 0.7)).real() == 0.0);
}

TEST_CASE("action monotonicity in the parameters") {
  const double E = 3.0;
  const double w_base = jacobi_action_quadrature(CqmParams(1.0, 2.0), E, 1e-10);
  CHECK(jacobi_action_quadrature(CqmParams(1.0, 2.3), E, 1e-10) > w_base);
  CHECK(jacobi_action_quadrature(CqmParams(1.4, 2.0), E, 1e-10) < w_base);
  CHECK(jacobi_action_closed(CqmParams(1.0, 2.3), E) > jacobi_action_closed(CqmParams(1.0, 2.0), E));
  CHECK(jacobi_action_closed(CqmParams(1.4, 2.0), E) < jacobi_action_closed(CqmParams(1.0, 2.0), E));
}

TEST_CASE("action equals the enclosed phase-space area") {
  const CqmParams p(1.0, 2.0);
  const double area = orbit_closure(p, 2.0).enclosed_area;
  const double w = jacobi_action_quadrature(p, 2.0, 1e-10);
  CHECK(std::fabs(area - w) / w < 1e-4);
}
