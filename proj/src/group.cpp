#include "acsq/group.hpp"

#include <numbers>

#include "acsq/error.hpp"

namespace acsq {

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t -= two_pi;
  return t;
}

GroupElement::GroupElement(double a, double theta, Vec2 b)
    : a_(a), theta_(wrap_angle(theta)), b_(b) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw Error(ErrorKind::InvalidArgument, "group element needs a positive dilation");
}

GroupElement GroupElement::from_phase_point(const PhasePoint& z) {
  const double r = z.q.norm();
  if (!(r > 0.0))
    throw Error(ErrorKind::InvalidArgument, "phase point must lie in the punctured plane");
  return {1.0 / r, z.q.angle(), z.p};
}

GroupElement GroupElement::compose(const GroupElement& rhs) const {
  return {a_ * rhs.a_, theta_ + rhs.theta_, a_ * rotate(rhs.b_, theta_) + b_};
}

GroupElement GroupElement::inverse() const {
  const double inv = 1.0 / a_;
  return {inv, -theta_, -inv * rotate(b_, -theta_)};
}

PhasePoint GroupElement::to_phase_point() const {
  const double r = 1.0 / a_;
  return {{r * std::cos(theta_), r * std::sin(theta_)}, b_};
}

}  // namespace acsq
