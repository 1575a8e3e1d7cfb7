#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "acsq/group.hpp"

namespace acsq {

/// A classical observable u(q) depending on position only.
class Observable {
 public:
  using Function = std::function<double(Vec2)>;

  /// `growth` is the exponent beta with |u(q)| ~ |q|^beta; it decides
  /// which radial moment must converge for the symbol to exist.
  Observable(std::string label, Function fn, std::optional<double> growth, bool isotropic);

  static Observable constant(double c);
  static Observable power(double beta);
  static Observable qx();
  static Observable qy();
  /// m omega^2 |q|^2 / 2.
  static Observable harmonic(double mass, double omega);
  /// "const:<c>", "power:<beta>", "qx", "qy", "harmonic:<m>,<omega>".
  static Observable parse(std::string_view spec);

  double operator()(Vec2 q) const { return fn_(q); }
  const std::string& label() const noexcept { return label_; }
  std::optional<double> growth() const noexcept { return growth_; }
  bool isotropic() const noexcept { return isotropic_; }

  /// The classical action of g on u: (U u)(q) = u(g^-1 q) with positions
  /// transported as q -> a R(-theta) q. Momentum translations do not
  /// touch position-only observables.
  Observable transformed(const GroupElement& g) const;

  /// alpha u + beta v.
  friend Observable combine(double alpha, const Observable& u, double beta, const Observable& v);

 private:
  std::string label_;
  Function fn_;
  std::optional<double> growth_;
  bool isotropic_ = false;
};

}  // namespace acsq
