#include "cqmsc/digamma.hpp"

#include <cmath>
#include <limits>

namespace cqmsc {

namespace {

using complexd = std::complex<double>;

// B_{2n}/(2n) for n = 1..7; the series is truncated after z^{-14}, good to
// ~1e-15 relative once |z| >= 12.
constexpr double kStirling[7] = {
    1.0 / 12.0,  -1.0 / 120.0,      1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0,  1.0 / 12.0,
};

constexpr double kAsymptoticThreshold = 12.0;

// pi * cot(pi z), stable for large |Im z| where cos/sin overflow.
complexd cot_pi_scaled(complexd z) {
  const double im = z.imag();
  if (std::fabs(im) > 8.0) {
    // cot(pi z) -> -i sign(Im z) with exponentially small corrections.
    const complexd i(0.0, 1.0);
    const complexd q = std::exp(complexd(0.0, 2.0 * M_PI) * (im > 0 ? z : -z));
    const complexd cot = (im > 0 ? -i : i) * (1.0 + 2.0 * q / (1.0 - q));
    return M_PI * cot;
  }
  const complexd pz = M_PI * z;
  return M_PI * std::cos(pz) / std::sin(pz);
}

complexd digamma_asymptotic(complexd z) {
  const complexd inv = 1.0 / z;
  const complexd inv2 = inv * inv;
  complexd sum = 0.0;
  complexd power = inv2;
  for (double coeff : kStirling) {
    sum += coeff * power;
    power *= inv2;
  }
  return std::log(z) - 0.5 * inv - sum;
}

}  // namespace

complexd digamma(complexd z) {
  if (z.real() < 0.5) {
    // Reflection psi(z) = psi(1 - z) - pi cot(pi z); poles at z = 0, -1, ...
    if (z.imag() == 0.0 && z.real() == std::floor(z.real())) {
      return complexd(std::numeric_limits<double>::quiet_NaN(),
                      std::numeric_limits<double>::quiet_NaN());
    }
    return digamma(1.0 - z) - cot_pi_scaled(z);
  }
  complexd acc = 0.0;
  while (std::abs(z) < kAsymptoticThreshold) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  return digamma_asymptotic(z) + acc;
}

}  // namespace cqmsc
