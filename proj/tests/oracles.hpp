#pragma once

// Brute-force reference computations used only by the tests. These stay
// deliberately naive (plain substitutions + adaptive Simpson) so they share
// nothing with the quadrature machinery under test.

#include <cmath>
#include <functional>

namespace oracles {

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2 == 1) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol) {
  int n = 64;
  double prev = simpson(f, a, b, n);
  for (int iter = 0; iter < 22; ++iter) {
    n *= 2;
    const double cur = simpson(f, a, b, n);
    if (std::fabs(cur - prev) <= tol * std::max(1.0, std::fabs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

// Loop action 2 int sqrt(2M(E - V)) dq between the turning points of the
// R well. The substitutions q = q_- + s^2 and q = q_+ - s^2 flatten the
// sqrt endpoints; the midpoint splits the interval.
inline double loop_action(double g, double alpha, double E, double mass = 1.0) {
  const double a2 = alpha * alpha;
  const double disc = std::sqrt(E * E - g * mass / a2);
  const double qm = std::sqrt(g / (E + disc));
  const double qp = std::sqrt(a2 * (E + disc) / mass);
  const double qmid = 0.5 * (qm + qp);
  auto kin = [&](double q) {
    const double v = g / (2.0 * q * q) + mass * q * q / (2.0 * a2);
    return std::sqrt(std::max(0.0, 2.0 * mass * (E - v)));
  };
  auto lower = [&](double s) { return 2.0 * s * kin(qm + s * s); };
  auto upper = [&](double s) { return 2.0 * s * kin(qp - s * s); };
  const double left = adaptive_simpson(lower, 0.0, std::sqrt(qmid - qm), 1e-11);
  const double right = adaptive_simpson(upper, 0.0, std::sqrt(qp - qmid), 1e-11);
  return 2.0 * (left + right);
}

// Classical density of the S flow confined to a box of length L:
// (1/ pi hbar) int_{q_min}^{L} dq / |p/M|, singular only at q_min.
inline double boxed_classical_density(double g, double alpha, double E, double L,
                                      double hbar = 1.0, double mass = 1.0) {
  const double a2 = alpha * alpha;
  const double root = std::sqrt(E * E + g * mass / a2);
  const double qmin = std::sqrt(E >= 0.0 ? g / (root + E) : a2 * (root - E) / mass);
  auto speed = [&](double q) {
    const double v = g / (2.0 * q * q) - mass * q * q / (2.0 * a2);
    return std::sqrt(std::max(0.0, 2.0 * (E - v) / mass));
  };
  auto lower = [&](double s) {
    const double q = qmin + s * s;
    return 2.0 * s / speed(q);
  };
  const double qmid = std::min(2.0 * qmin + 1.0, 0.5 * (qmin + L));
  const double left = adaptive_simpson(lower, 1e-12, std::sqrt(qmid - qmin), 1e-9);
  auto plain = [&](double q) { return 1.0 / speed(q); };
  const double right = adaptive_simpson(plain, qmid, L, 1e-9);
  return (left + right) / (M_PI * hbar);
}

}  // namespace oracles
