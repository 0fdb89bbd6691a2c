#include "cqmsc/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace cqmsc {

double chebyshev_first(const std::function<double(double)>& f, int n) {
  if (n < 1) throw invalid_argument("chebyshev_first requires n >= 1");
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double x = std::cos((2.0 * i - 1.0) * M_PI / (2.0 * n));
    sum += f(x);
  }
  return M_PI / n * sum;
}

double chebyshev_second(const std::function<double(double)>& f, int n) {
  if (n < 1) throw invalid_argument("chebyshev_second requires n >= 1");
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double theta = i * M_PI / (n + 1.0);
    const double s = std::sin(theta);
    sum += s * s * f(std::cos(theta));
  }
  return M_PI / (n + 1.0) * sum;
}

double chebyshev_adaptive(ChebyshevKind kind, const std::function<double(double)>& f,
                          double rel_tol, int n_start, int n_max) {
  auto rule = kind == ChebyshevKind::first ? chebyshev_first : chebyshev_second;
  double prev = rule(f, n_start);
  for (int n = 2 * n_start; n <= n_max; n *= 2) {
    const double cur = rule(f, n);
    const double diff = std::fabs(cur - prev);
    if (diff <= rel_tol * std::max(std::fabs(cur), 1e-300)) return cur;
    prev = cur;
  }
  const double cur = rule(f, n_max);
  throw quadrature_error("Chebyshev quadrature failed to converge to rel_tol = " +
                             std::to_string(rel_tol) + " by n = " + std::to_string(n_max),
                         std::fabs(cur - prev) / std::max(std::fabs(cur), 1e-300));
}

namespace {

// QUADPACK 7/15 Gauss-Kronrod constants.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class Value>
struct Segment {
  double a, b;
  Value integral;
  double error;
};

template <class Value, class F>
Segment<Value> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Value fc = f(c);
  Value kronrod = kWgk[7] * fc;
  Value gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    Value f1 = f(c - dx);
    Value f2 = f(c + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  Segment<Value> seg;
  seg.a = a;
  seg.b = b;
  seg.integral = kronrod * half;
  seg.error = std::abs((kronrod - gauss) * half);
  return seg;
}

template <class Value, class F>
std::pair<Value, double> gk_adaptive(const F& f, double a, double b, double abs_tol,
                                     double rel_tol, int max_intervals) {
  auto worse = [](const Segment<Value>& lhs, const Segment<Value>& rhs) {
    return lhs.error < rhs.error;
  };
  std::priority_queue<Segment<Value>, std::vector<Segment<Value>>, decltype(worse)> queue(worse);
  queue.push(gk15<Value>(f, a, b));
  Value total = queue.top().integral;
  double total_err = queue.top().error;
  int n = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && n < max_intervals) {
    const Segment<Value> seg = queue.top();
    queue.pop();
    const double mid = 0.5 * (seg.a + seg.b);
    if (mid <= seg.a || mid >= seg.b) break;  // interval at rounding limit
    const Segment<Value> left = gk15<Value>(f, seg.a, mid);
    const Segment<Value> right = gk15<Value>(f, mid, seg.b);
    total += left.integral + right.integral - seg.integral;
    total_err += left.error + right.error - seg.error;
    queue.push(left);
    queue.push(right);
    ++n;
  }
  if (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    throw quadrature_error("adaptive Gauss-Kronrod failed to reach tolerance on [" +
                               std::to_string(a) + ", " + std::to_string(b) + "]",
                           total_err);
  }
  return {total, total_err};
}

}  // namespace

GkEstimate gauss_kronrod_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, double rel_tol, int max_intervals) {
  auto [value, error] = gk_adaptive<double>(f, a, b, abs_tol, rel_tol, max_intervals);
  return {value, error};
}

GkComplexEstimate gauss_kronrod_adaptive(const std::function<std::complex<double>(double)>& f,
                                         double a, double b, double abs_tol, double rel_tol,
                                         int max_intervals) {
  auto [value, error] =
      gk_adaptive<std::complex<double>>(f, a, b, abs_tol, rel_tol, max_intervals);
  return {value, error};
}

double brent_root(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw invalid_argument("brent_root requires a sign change on [a, b]");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < 200; ++iter) {
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

std::complex<double> cexpm1(std::complex<double> z) {
  if (std::abs(z) > 0.5) return std::exp(z) - 1.0;
  // Taylor series; |z| <= 1/2 converges to full precision within ~20 terms.
  std::complex<double> term = z;
  std::complex<double> sum = z;
  for (int k = 2; k < 32; ++k) {
    term *= z / static_cast<double>(k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace cqmsc
