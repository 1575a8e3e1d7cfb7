#pragma once

// Deterministic globally adaptive Gauss-Kronrod quadrature.
//
// The 15-point Kronrod rule (abscissae and weights from Boost.Math) is
// driven by a QAG-style bisection loop: the interval with the largest
// error estimate is split until the total error meets the tolerance.
// Interval selection breaks ties by position and the final sum is a
// pairwise reduction in left-endpoint order, so the result depends only
// on the integrand and the options.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace acsq::quad {

struct Options {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  std::size_t max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t intervals = 0;
  bool converged = false;
};

namespace detail {

struct Panel {
  double a, b;
  double value, error, l1;
};

inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

template <class F>
Panel gk15(F& f, double a, double b) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using gauss = boost::math::quadrature::gauss<double, 7>;
  static const auto& xk = kronrod::abscissa();
  static const auto& wk = kronrod::weights();
  static const auto& wg = gauss::weights();

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[15];
  fv[0] = f(center);
  for (int i = 1; i < 8; ++i) {
    fv[2 * i - 1] = f(center - half * xk[i]);
    fv[2 * i] = f(center + half * xk[i]);
  }

  // Gauss nodes sit at even Kronrod indices.
  double kron = wk[0] * fv[0];
  double gs = wg[0] * fv[0];
  double l1 = wk[0] * std::abs(fv[0]);
  for (int i = 1; i < 8; ++i) {
    const double pair = fv[2 * i - 1] + fv[2 * i];
    kron += wk[i] * pair;
    l1 += wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
    if (i % 2 == 0) gs += wg[i / 2] * pair;
  }
  const double mean = 0.5 * kron;
  double asc = wk[0] * std::abs(fv[0] - mean);
  for (int i = 1; i < 8; ++i)
    asc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));

  kron *= half;
  gs *= half;
  l1 *= std::abs(half);
  asc *= std::abs(half);

  double err = std::abs(kron - gs);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * l1;
  if (floor > err) err = floor;
  if (!std::isfinite(kron)) err = std::numeric_limits<double>::infinity();
  return {a, b, kron, err, l1};
}

}  // namespace detail

/// Integrates f over [a, b], pre-split at the given interior breakpoints.
template <class F>
Result integrate(F&& f, std::span<const double> points, const Options& opt = {}) {
  std::vector<detail::Panel> panels;
  panels.reserve(points.size() + 64);
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    if (points[i + 1] > points[i]) panels.push_back(detail::gk15(f, points[i], points[i + 1]));

  auto totals = [&panels] {
    double v = 0.0, e = 0.0, l1 = 0.0;
    for (const auto& p : panels) {
      v += p.value;
      e += p.error;
      l1 += p.l1;
    }
    return std::tuple{v, e, l1};
  };

  Result out;
  for (;;) {
    auto [value, error, l1] = totals();
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    const double roundoff = 100.0 * std::numeric_limits<double>::epsilon() * l1;
    if (error <= target || error <= roundoff) {
      out.converged = std::isfinite(value);
      break;
    }
    if (panels.size() >= opt.max_intervals) break;

    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].error > panels[worst].error) worst = i;
    const auto [a, b, v, e, l] = panels[worst];
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) break;  // interval exhausted in double precision
    panels[worst] = detail::gk15(f, a, mid);
    panels.push_back(detail::gk15(f, mid, b));
  }

  std::sort(panels.begin(), panels.end(),
            [](const auto& x, const auto& y) { return x.a < y.a; });
  std::vector<double> values, errors;
  values.reserve(panels.size());
  errors.reserve(panels.size());
  for (const auto& p : panels) {
    values.push_back(p.value);
    errors.push_back(p.error);
  }
  out.value = detail::pairwise_sum(values);
  out.error = detail::pairwise_sum(errors);
  out.intervals = panels.size();
  if (!std::isfinite(out.value) || !std::isfinite(out.error)) out.converged = false;
  return out;
}

template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
  const double pts[2] = {a, b};
  return integrate(f, std::span<const double>(pts, 2), opt);
}

/// Integral of h over [0, inf) through t = x / (1 - x).
template <class F>
Result integrate_to_infinity(F&& h, const Options& opt = {}) {
  auto mapped = [&h](double x) {
    const double one_minus = 1.0 - x;
    const double t = x / one_minus;
    if (!std::isfinite(t)) return 0.0;
    const double v = h(t) / (one_minus * one_minus);
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate(mapped, 0.0, 1.0, opt);
}

/// Integral of f over (0, inf), split at `split`. The lower piece uses
/// q = split * exp(-t) and the upper piece q = split * exp(t), which
/// turns power-law endpoint behaviour and exponential tails into smooth
/// decaying integrands in t.
template <class F>
Result integrate_half_line(F&& f, double split, const Options& opt = {}) {
  auto lower = [&f, split](double t) {
    const double q = split * std::exp(-t);
    if (q <= 0.0) return 0.0;
    return f(q) * q;
  };
  auto upper = [&f, split](double t) {
    const double q = split * std::exp(t);
    if (!std::isfinite(q)) return 0.0;
    const double v = f(q) * q;
    return std::isfinite(v) ? v : 0.0;
  };
  const Result lo = integrate_to_infinity(lower, opt);
  const Result hi = integrate_to_infinity(upper, opt);
  return {lo.value + hi.value, lo.error + hi.error, lo.intervals + hi.intervals,
          lo.converged && hi.converged};
}

/// Composite fixed-order Gauss-Legendre over equal panels of [a, b].
template <class F>
double gauss_legendre(F&& f, double a, double b, int panels) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  std::vector<double> parts;
  parts.reserve(static_cast<std::size_t>(panels));
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    parts.push_back(rule::integrate(f, lo, lo + width));
  }
  return detail::pairwise_sum(parts);
}

}  // namespace acsq::quad
