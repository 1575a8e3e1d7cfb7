#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "acsq/error.hpp"
#include "acsq/group.hpp"

using namespace acsq;

namespace {

double angle_gap(double a, double b) {
  const double d = std::remainder(a - b, 2.0 * std::numbers::pi);
  return std::abs(d);
}

void check_close(const GroupElement& g, const GroupElement& h, double tol) {
  CHECK(std::abs(g.dilation() - h.dilation()) <= tol * h.dilation());
  CHECK(angle_gap(g.rotation(), h.rotation()) <= tol);
  CHECK((g.translation() - h.translation()).norm() <= tol * (1.0 + h.translation().norm()));
}

GroupElement random_element(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> loga(-2.0, 2.0), th(-10.0, 10.0), b(-5.0, 5.0);
  return {std::exp(loga(rng)), th(rng), {b(rng), b(rng)}};
}

}  // namespace

TEST_CASE("composition law") {
  const GroupElement g(2.0, std::numbers::pi / 2, {1.0, 0.0});
  const GroupElement h(0.5, std::numbers::pi, {0.0, 3.0});
  const auto gh = g * h;
  CHECK(gh.dilation() == doctest::Approx(1.0));
  CHECK(gh.rotation() == doctest::Approx(3.0 * std::numbers::pi / 2));
  // a R(theta) b' + b = 2 R(pi/2) (0, 3) + (1, 0) = (-6 + 1, 0)
  CHECK(gh.translation().x == doctest::Approx(-5.0));
  CHECK(gh.translation().y == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("group axioms on random triples") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_element(rng), b = random_element(rng), c = random_element(rng);
    check_close((a * b) * c, a * (b * c), 1e-12);
    check_close(a * GroupElement::identity(), a, 1e-12);
    check_close(GroupElement::identity() * a, a, 1e-12);
    check_close(a * a.inverse(), GroupElement::identity(), 1e-12);
    check_close(a.inverse() * a, GroupElement::identity(), 1e-12);
  }
}

TEST_CASE("action is a homomorphism") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_element(rng), b = random_element(rng);
    const Vec2 r{0.3, -1.7};
    const Vec2 lhs = (a * b).act(r);
    const Vec2 rhs = a.act(b.act(r));
    CHECK((lhs - rhs).norm() <= 1e-11 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("phase-space identification round trip") {
  const PhasePoint z{{-3.0, 4.0}, {0.25, -1.0}};
  const auto g = GroupElement::from_phase_point(z);
  CHECK(g.dilation() == doctest::Approx(0.2));
  CHECK(g.rotation() == doctest::Approx(wrap_angle(std::atan2(4.0, -3.0))));
  const auto back = g.to_phase_point();
  CHECK(back.q.x == doctest::Approx(-3.0));
  CHECK(back.q.y == doctest::Approx(4.0));
  CHECK(back.p == z.p);
  CHECK_THROWS_AS(GroupElement::from_phase_point({{0.0, 0.0}, {1.0, 1.0}}), Error);
}

TEST_CASE("angles are wrapped into [0, 2pi)") {
  CHECK(wrap_angle(-std::numbers::pi / 2) == doctest::Approx(3.0 * std::numbers::pi / 2));
  CHECK(wrap_angle(2.0 * std::numbers::pi) == 0.0);
  CHECK(GroupElement(1.0, 7.0, {}).rotation() == doctest::Approx(7.0 - 2.0 * std::numbers::pi));
  CHECK_THROWS_AS(GroupElement(0.0, 0.0, {}), Error);
}
