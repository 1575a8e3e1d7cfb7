#pragma once

// The similitude group SIM(2) of the plane and its identification with
// the phase space of a particle on the punctured plane.

#include <cmath>

namespace acsq {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2, Vec2) = default;

  double norm() const { return std::hypot(x, y); }
  double angle() const { return std::atan2(y, x); }
};

/// R(theta) v.
inline Vec2 rotate(Vec2 v, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Wraps an angle into [0, 2pi).
double wrap_angle(double theta);

/// A point of phase space: position in the punctured plane and momentum.
struct PhasePoint {
  Vec2 q;
  Vec2 p;
};

/// (a, theta, b) acting on the plane as r -> a R(theta) r + b.
class GroupElement {
 public:
  GroupElement() = default;
  /// Throws InvalidArgument unless a > 0.
  GroupElement(double a, double theta, Vec2 b);

  static GroupElement identity() { return {}; }
  /// a = 1/|q|, theta = arg q, b = p.
  static GroupElement from_phase_point(const PhasePoint& z);

  double dilation() const noexcept { return a_; }
  double rotation() const noexcept { return theta_; }
  Vec2 translation() const noexcept { return b_; }

  Vec2 act(Vec2 r) const { return a_ * rotate(r, theta_) + b_; }
  GroupElement compose(const GroupElement& rhs) const;
  GroupElement inverse() const;
  PhasePoint to_phase_point() const;

  friend GroupElement operator*(const GroupElement& l, const GroupElement& r) {
    return l.compose(r);
  }

 private:
  double a_ = 1.0;
  double theta_ = 0.0;
  Vec2 b_{};
};

}  // namespace acsq
