#include "cqmsc/generator.hpp"

namespace cqmsc {

const char* family_name(Family f) noexcept {
  switch (f) {
    case Family::elliptic: return "elliptic";
    case Family::hyperbolic: return "hyperbolic";
    case Family::parabolic: return "parabolic";
  }
  return "?";
}

const char* gen_label_name(GenLabel l) noexcept {
  switch (l) {
    case GenLabel::H: return "H";
    case GenLabel::D: return "D";
    case GenLabel::K: return "K";
    case GenLabel::R: return "R";
    case GenLabel::S: return "S";
    case GenLabel::custom: return "custom";
  }
  return "?";
}

Family GeneratorSpec::classify() const noexcept {
  const double disc = discriminant();
  if (disc < 0.0) return Family::elliptic;
  if (disc > 0.0) return Family::hyperbolic;
  return Family::parabolic;
}

GeneratorSpec GeneratorSpec::time_translation() { return {1.0, 0.0, 0.0, GenLabel::H}; }

GeneratorSpec GeneratorSpec::dilation() { return {0.0, 1.0, 0.0, GenLabel::D}; }

GeneratorSpec GeneratorSpec::special_conformal() { return {0.0, 0.0, 1.0, GenLabel::K}; }

GeneratorSpec GeneratorSpec::elliptic(const CqmParams& params) {
  const double w = 1.0 / (params.alpha * params.alpha);
  return {1.0, 0.0, w, GenLabel::R};
}

GeneratorSpec GeneratorSpec::hyperbolic(const CqmParams& params) {
  const double w = -1.0 / (params.alpha * params.alpha);
  return {1.0, 0.0, w, GenLabel::S};
}

GeneratorSpec GeneratorSpec::from_label(GenLabel l, const CqmParams& params) {
  switch (l) {
    case GenLabel::H: return time_translation();
    case GenLabel::D: return dilation();
    case GenLabel::K: return special_conformal();
    case GenLabel::R: return elliptic(params);
    case GenLabel::S: return hyperbolic(params);
    case GenLabel::custom: break;
  }
  throw invalid_argument("no canonical coefficients for a custom generator");
}

}  // namespace cqmsc
