#pragma once

#include "cqmsc/params.hpp"

namespace cqmsc {

enum class Family { elliptic, hyperbolic, parabolic };

enum class GenLabel { H, D, K, R, S, custom };

const char* family_name(Family f) noexcept;
const char* gen_label_name(GenLabel l) noexcept;

/// A symmetry generator G = u H + v D + w K, classified by the discriminant
/// of its coefficient form: elliptic (< 0), hyperbolic (> 0), parabolic (= 0).
///
/// f(t) = u + v t + w t^2 is the frame factor entering the lab-to-generator
/// coordinate map; its zeros are the horizon crossings of the generator flow.
struct GeneratorSpec {
  double u;
  double v;
  double w;
  GenLabel label = GenLabel::custom;

  double discriminant() const noexcept { return v * v - 4.0 * u * w; }
  Family classify() const noexcept;

  double f(double t) const noexcept { return u + v * t + w * t * t; }
  double fdot(double t) const noexcept { return v + 2.0 * w * t; }

  static GeneratorSpec time_translation();  // H
  static GeneratorSpec dilation();          // D
  static GeneratorSpec special_conformal(); // K
  static GeneratorSpec elliptic(const CqmParams& params);   // R = H + K/alpha^2
  static GeneratorSpec hyperbolic(const CqmParams& params); // S = H - K/alpha^2

  static GeneratorSpec from_label(GenLabel l, const CqmParams& params);
};

}  // namespace cqmsc
