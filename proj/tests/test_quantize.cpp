#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "acsq/error.hpp"
#include "acsq/quantize.hpp"

using namespace acsq;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

FiducialSpec default_spec(double kappa = 1.0) {
  return {AngularProfile::paper_cosine(), RadialProfile::gamma(5.0, 1.0), kappa};
}

std::string data(const char* name) { return std::string(ACSQ_TEST_DATA) + "/" + name; }

bool has(const Warnings& w, Warning x) { return std::find(w.begin(), w.end(), x) != w.end(); }

}  // namespace

TEST_CASE("convolution of a constant gives the admissibility constant") {
  const auto spec = default_spec();
  for (const auto& x : sample_points(6))
    CHECK(rel(affine_convolve(spec, Observable::constant(1.0), x), kPi2 / 4.0) < 1e-10);
}

TEST_CASE("frozen convolution values") {
  const auto spec = default_spec();
  // q^2 at |x| = 2: d_1 |x|^2 = (pi^2 / 24) * 4
  CHECK(rel(affine_convolve(spec, Observable::power(2.0), {0.0, 2.0}), kPi2 / 6.0) < 1e-10);
  // q_x at (1, 0): Fc G_0 = (pi^2 / 2)(1 / 12)
  CHECK(rel(affine_convolve(spec, Observable::qx(), {1.0, 0.0}), kPi2 / 24.0) < 1e-10);
  CHECK(std::abs(affine_convolve(spec, Observable::qy(), {1.0, 0.0})) < 1e-12);
}

TEST_CASE("isotropic observables give isotropic symbols") {
  const MultiplicationSymbol m(default_spec(), Observable::power(1.5));
  const double a = m({1.3, 0.0});
  const double b = m(rotate({1.3, 0.0}, 2.1));
  CHECK(rel(a, b) < 1e-10);
}

TEST_CASE("power-law closure") {
  const auto spec = default_spec();
  const auto xs = sample_points(10);
  for (double beta : {0.0, 1.0, 2.0, 2.5}) {
    CAPTURE(beta);
    const auto r = power_law_check(spec, beta, xs);
    CHECK(r.pass);
    CHECK(r.max_deviation < 1e-8);
  }
  // q^2 closes onto 2 N1 |x|^2 = |x|^2 / 6.
  const MultiplicationSymbol m(default_spec(), Observable::power(2.0));
  CHECK(rel(m({0.0, 3.0}), 9.0 / 6.0) < 1e-10);
  // q^2.5 uses G_{1.5} / G_{-1} = 4 Gamma(1.5) / 24.
  const MultiplicationSymbol h(default_spec(), Observable::power(2.5));
  CHECK(rel(h({2.0, 0.0}), 4.0 * std::tgamma(1.5) / 24.0 * std::pow(2.0, 2.5)) < 1e-9);
}

TEST_CASE("observables outside the moment ladder are rejected") {
  const FiducialSpec spec(AngularProfile::paper_cosine(), RadialProfile::gamma(2.5, 1.0));
  try {
    affine_convolve(spec, Observable::power(2.0), {1.0, 0.0});
    FAIL("expected DivergentSymbol");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivergentSymbol);
  }
  CHECK_THROWS_AS(power_law_check(spec, 2.0, sample_points(2)), DivergentMoment);
}

TEST_CASE("resolution of identity check") {
  const auto r = identity_check(default_spec(), sample_points(20));
  CHECK(r.pass);
  CHECK(r.max_deviation <= 1e-8);
  CHECK(r.deviations.size() == 20);
  CHECK(r.check == "identity");
}

TEST_CASE("position symbol") {
  CHECK(rel(position_symbol(default_spec(), compute_moments(default_spec())).coefficient, 1.0 / 6.0) < 1e-12);
  CHECK(rel(position_symbol(default_spec(2.0), compute_moments(default_spec(2.0))).coefficient, 1.0 / 12.0) <
        1e-12);

  const FiducialSpec flat(AngularProfile::parse("tabulated:" + data("angular_isotropic.dat")),
                          RadialProfile::gamma(5.0, 1.0));
  const auto p = position_symbol(flat, compute_moments(flat));
  CHECK(p.coefficient == 0.0);
  CHECK(has(p.warnings, Warning::DegeneratePosition));

  const FiducialSpec tilted(AngularProfile::parse("tabulated:" + data("angular_tilted.dat")),
                            RadialProfile::gamma(5.0, 1.0));
  try {
    position_symbol(tilted, compute_moments(tilted));
    FAIL("expected AnisotropyError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Anisotropy);
  }
}

TEST_CASE("kinetic operator descriptor") {
  const auto k = kinetic_operator(analyze(default_spec()));
  CHECK(k.laplacian_coeff == -1.0);
  CHECK(rel(k.inverse_square_coeff, 1.25) < 1e-10);
  CHECK(k.warnings.empty());

  const auto soft = kinetic_operator(
      analyze({AngularProfile::paper_cosine(), RadialProfile::gamma(3.2, 1.0)}, std::vector<double>{-1.0, 0.0, 1.0}));
  CHECK(rel(soft.inverse_square_coeff, 0.8) < 1e-10);
  CHECK(has(soft.warnings, Warning::SelfAdjointness));
}

TEST_CASE("canonical commutation") {
  const std::vector<TestFunction> fns{gaussian_ring(1.2, 0.3), offset_gaussian({0.8, 0.5}, 0.35)};
  const auto pos = position_symbol(default_spec(), compute_moments(default_spec()));
  const auto rep = commutator_check(pos, fns);
  CHECK(rep.summary.pass);
  CHECK(rep.summary.max_deviation <= 1e-6);
  REQUIRE(rep.entries.size() == 8);
  for (const auto& e : rep.entries) {
    CAPTURE(e.function);
    const double want = e.i == e.j ? 1.0 / 6.0 : 0.0;
    CHECK(std::abs(e.constant.real()) < 1e-9);
    CHECK(std::abs(e.constant.imag() - want) < 1e-6);
    CHECK(e.max_deviation < 1e-6);
  }

  const auto pos2 = position_symbol(default_spec(2.0), compute_moments(default_spec(2.0)));
  const auto rep2 = commutator_check(pos2, std::span(fns).first(1));
  CHECK(std::abs(rep2.entries[0].constant.imag() - 1.0 / 12.0) < 1e-6);
}

TEST_CASE("commutator with a degenerate position symbol is skipped") {
  PositionSymbol zero;
  zero.warnings.push_back(Warning::DegeneratePosition);
  const std::vector<TestFunction> fns{gaussian_ring(1.2, 0.3)};
  const auto rep = commutator_check(zero, fns);
  CHECK(rep.summary.skipped);
  CHECK(has(rep.summary.warnings, Warning::DegeneratePosition));
}

TEST_CASE("an unresolved test function is reported as a coarse grid") {
  const std::vector<TestFunction> fns{gaussian_ring(1.0, 0.01)};
  const PositionSymbol pos{1.0 / 6.0, {}};
  try {
    commutator_check(pos, fns, PolarGrid{0.15, 4.0, 60, 16});
    FAIL("expected GridTooCoarse");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GridTooCoarse);
  }
}

TEST_CASE("covariance of multiplication symbols") {
  const auto spec = default_spec();
  const auto xs = sample_points(4);
  CHECK(covariance_check(spec, Observable::qx(), GroupElement::identity(), xs).max_deviation < 1e-12);
  CHECK(covariance_check(spec, Observable::power(2.0), GroupElement(1.0, std::numbers::pi / 2, {}), xs).pass);
  const auto moved = covariance_check(spec, Observable::qx(), GroupElement(1.7, 0.9, {0.3, -2.0}), xs);
  CHECK(moved.pass);
  CHECK(moved.max_deviation < 1e-9);

  // Dilation by 2 on q^2: the symbol picks up a factor 4 at matched points.
  const MultiplicationSymbol m(spec, Observable::power(2.0));
  const MultiplicationSymbol md(spec, Observable::power(2.0).transformed(GroupElement(2.0, 0.0, {})));
  const Vec2 x{0.7, 1.1};
  CHECK(rel(md(x), 4.0 * m(x)) < 1e-10);
}

TEST_CASE("linearity of the quantization map") {
  const auto r = linearity_check(default_spec(), Observable::qx(), Observable::power(2.0), 2.5, -0.75,
                                 sample_points(5));
  CHECK(r.pass);
}

TEST_CASE("the radial convolution is commutative") {
  const auto flat = AngularProfile::parse("tabulated:" + data("angular_isotropic.dat"));
  const auto g1 = RadialProfile::gamma(5.0, 1.0);
  const auto g2 = RadialProfile::gamma(3.5, 2.0);
  auto as_observable = [](const RadialProfile& g) {
    return Observable(g.describe(), [g](Vec2 q) { return g.value(q.norm()); }, std::nullopt, true);
  };
  for (double r : {0.4, 1.0, 3.0}) {
    const double a = affine_convolve({flat, g1}, as_observable(g2), {r, 0.0});
    const double b = affine_convolve({flat, g2}, as_observable(g1), {r, 0.0});
    CHECK(rel(a, b) < 1e-9);
  }
}

TEST_CASE("observable spec strings") {
  CHECK(Observable::parse("const:2.5")({1.0, 1.0}) == 2.5);
  CHECK(Observable::parse("power:2")({3.0, 4.0}) == doctest::Approx(25.0));
  CHECK(Observable::parse("qy")({3.0, 4.0}) == 4.0);
  CHECK(Observable::parse("harmonic:2,3")({1.0, 0.0}) == doctest::Approx(9.0));
  CHECK_THROWS_AS(Observable::parse("cubic"), Error);
}
