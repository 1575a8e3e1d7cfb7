#include "acsq/observable.hpp"

#include <algorithm>
#include <cmath>

#include "acsq/error.hpp"
#include "acsq/text.hpp"

namespace acsq {

Observable::Observable(std::string label, Function fn, std::optional<double> growth, bool isotropic)
    : label_(std::move(label)), fn_(std::move(fn)), growth_(growth), isotropic_(isotropic) {}

Observable Observable::constant(double c) {
  return {"const:" + text::format_double(c), [c](Vec2) { return c; }, 0.0, true};
}

Observable Observable::power(double beta) {
  return {"power:" + text::format_double(beta),
          [beta](Vec2 q) { return std::pow(q.norm(), beta); }, beta, true};
}

Observable Observable::qx() {
  return {"qx", [](Vec2 q) { return q.x; }, 1.0, false};
}

Observable Observable::qy() {
  return {"qy", [](Vec2 q) { return q.y; }, 1.0, false};
}

Observable Observable::harmonic(double mass, double omega) {
  const double k = 0.5 * mass * omega * omega;
  return {"harmonic:" + text::format_double(mass) + "," + text::format_double(omega),
          [k](Vec2 q) { return k * (q.x * q.x + q.y * q.y); }, 2.0, true};
}

Observable Observable::parse(std::string_view spec) {
  auto number = [&](std::string_view s) {
    const auto v = text::parse_double(s);
    if (!v) throw Error(ErrorKind::ConfigError, "malformed number in observable '" + std::string(spec) + "'");
    return *v;
  };
  if (spec == "qx") return qx();
  if (spec == "qy") return qy();
  if (spec.starts_with("const:")) return constant(number(spec.substr(6)));
  if (spec.starts_with("power:")) return power(number(spec.substr(6)));
  if (spec.starts_with("harmonic:")) {
    const auto parts = text::split(spec.substr(9), ',');
    if (parts.size() != 2)
      throw Error(ErrorKind::ConfigError, "harmonic observable needs <m>,<omega>");
    return harmonic(number(parts[0]), number(parts[1]));
  }
  throw Error(ErrorKind::ConfigError, "unknown observable '" + std::string(spec) + "'");
}

Observable Observable::transformed(const GroupElement& g) const {
  const double a = g.dilation();
  const double theta = g.rotation();
  auto base = fn_;
  return {label_ + "@g", [base, a, theta](Vec2 q) { return base(a * rotate(q, -theta)); }, growth_,
          isotropic_};
}

Observable combine(double alpha, const Observable& u, double beta, const Observable& v) {
  std::optional<double> growth;
  if (u.growth_ && v.growth_) growth = std::max(*u.growth_, *v.growth_);
  auto fu = u.fn_;
  auto fv = v.fn_;
  return {text::format_double(alpha) + "*" + u.label_ + "+" + text::format_double(beta) + "*" + v.label_,
          [=](Vec2 q) { return alpha * fu(q) + beta * fv(q); }, growth,
          u.isotropic_ && v.isotropic_};
}

}  // namespace acsq
