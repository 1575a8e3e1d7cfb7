#include <doctest.h>

#include <cmath>
#include <numbers>

#include "acsq/quadrature.hpp"

using namespace acsq;

TEST_CASE("polynomials are exact on a single panel") {
  const auto r = quad::integrate([](double x) { return x * x * x - 2.0 * x; }, 0.0, 2.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("endpoint singularity x^-1/2") {
  const auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0) < 1e-10);
}

TEST_CASE("half line: Gamma integrals") {
  for (double nu : {1.5, 3.0, 7.25}) {
    const auto r = quad::integrate_half_line(
        [nu](double q) { return std::pow(q, nu - 1.0) * std::exp(-q); }, nu - 1.0);
    CHECK(r.converged);
    CHECK(std::abs(r.value / std::tgamma(nu) - 1.0) < 1e-12);
  }
}

TEST_CASE("to infinity: 1/(1+t^2)") {
  const auto r = quad::integrate_to_infinity([](double t) { return 1.0 / (1.0 + t * t); });
  CHECK(std::abs(r.value - std::numbers::pi / 2.0) < 1e-12);
}

TEST_CASE("results are reproducible bit for bit") {
  auto f = [](double x) { return std::sin(20.0 * x) * std::exp(-x); };
  const auto a = quad::integrate(f, 0.0, 10.0);
  const auto b = quad::integrate(f, 0.0, 10.0);
  CHECK(a.value == b.value);
  CHECK(a.intervals == b.intervals);
}

TEST_CASE("composite Gauss-Legendre") {
  const double v = quad::gauss_legendre([](double x) { return std::cos(x); }, 0.0, std::numbers::pi / 2, 4);
  CHECK(std::abs(v - 1.0) < 1e-14);
}
