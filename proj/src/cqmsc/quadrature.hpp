#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "cqmsc/errors.hpp"

namespace cqmsc {

// Gauss-Chebyshev rules on [-1, 1]. The weight function is built into the
// rule, so the integrand argument is the weight-free factor:
//   first kind  : integral of f(x) / sqrt(1 - x^2)
//   second kind : integral of f(x) * sqrt(1 - x^2)
// Nodes are strictly interior, which is what makes these rules suitable for
// turning-point integrands with inverse-square-root endpoint behavior.
double chebyshev_first(const std::function<double(double)>& f, int n);
double chebyshev_second(const std::function<double(double)>& f, int n);

enum class ChebyshevKind { first, second };

// Doubles n until two successive estimates agree to rel_tol (with a small
// absolute floor); throws quadrature_error with the achieved estimate.
double chebyshev_adaptive(ChebyshevKind kind, const std::function<double(double)>& f,
                          double rel_tol, int n_start = 16, int n_max = 1 << 16);

struct GkEstimate {
  double value;
  double error;
};

struct GkComplexEstimate {
  std::complex<double> value;
  double error;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b] with bisection of the worst
// interval. Tolerance test: total error <= max(abs_tol, rel_tol * |result|).
GkEstimate gauss_kronrod_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, double rel_tol, int max_intervals = 4000);
GkComplexEstimate gauss_kronrod_adaptive(const std::function<std::complex<double>(double)>& f,
                                         double a, double b, double abs_tol, double rel_tol,
                                         int max_intervals = 4000);

// Root of f on the bracket [a, b] (f(a), f(b) of opposite signs).
double brent_root(const std::function<double(double)>& f, double a, double b, double tol);

// exp(z) - 1 without cancellation for small |z|.
std::complex<double> cexpm1(std::complex<double> z);

}  // namespace cqmsc
