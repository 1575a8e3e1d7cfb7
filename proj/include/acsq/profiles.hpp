#pragma once

// Fiducial vectors with factorized density |psi|^2 = f(theta) g(q).

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace acsq {

struct Sample {
  double x;
  double value;
};

/// Reads a two-column whitespace separated table. Blank lines and `#`
/// comments are skipped. Coordinates must be strictly ascending.
std::vector<Sample> read_table(const std::string& path);

class MonotoneCubic;

/// Angular factor f(theta) on [0, 2pi).
class AngularProfile {
 public:
  enum class Kind { PaperCosine, Tabulated };

  /// f(theta) = pi (cos theta + 1) / 2.
  static AngularProfile paper_cosine();
  /// Periodic monotone-cubic interpolant through samples in [0, 2pi).
  static AngularProfile tabulated(std::vector<Sample> samples);
  /// "paper" or "tabulated:<path>".
  static AngularProfile parse(std::string_view spec);

  Kind kind() const noexcept { return kind_; }
  double value(double theta) const;
  double derivative(double theta) const;
  /// Panel boundaries for quadrature over [0, 2pi], both ends included.
  const std::vector<double>& breakpoints() const noexcept { return breaks_; }
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  std::string describe() const;

 private:
  AngularProfile() = default;

  Kind kind_ = Kind::PaperCosine;
  std::vector<Sample> samples_;
  std::vector<double> breaks_;
  std::shared_ptr<const MonotoneCubic> interp_;
};

/// Radial factor g(q) on (0, inf).
class RadialProfile {
 public:
  enum class Kind { GammaRadial, Tabulated };

  /// g(q) = lambda^nu q^(nu-1) exp(-lambda q) / Gamma(nu); nu > 1, lambda > 0.
  static RadialProfile gamma(double nu, double lambda);
  /// Monotone cubic through samples, zero outside [q_first, q_last].
  /// The first sample must have value 0.
  static RadialProfile tabulated(std::vector<Sample> samples);
  /// "gamma:nu=<float>,lambda=<float>" or "tabulated:<path>".
  static RadialProfile parse(std::string_view spec);

  Kind kind() const noexcept { return kind_; }
  double nu() const noexcept { return nu_; }
  double lambda() const noexcept { return lambda_; }

  double value(double q) const;
  double derivative(double q) const;
  /// q * g'(q)^2 / (4 g(q)), the radial density of |d psi/dq|^2 d^2q.
  double gradient_density(double q) const;
  /// Where the profile peaks; used as the split point for half-line quadrature.
  double mode() const;
  /// Finite support [lo, hi] for tabulated profiles, nullopt for (0, inf).
  std::optional<std::pair<double, double>> support() const;
  /// Knots of a tabulated profile (empty for closed-form kinds).
  std::vector<double> knots() const;
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  /// Whether G_s = int q^-(s+2) g dq is finite.
  bool moment_converges(double s) const;
  std::string describe() const;

 private:
  RadialProfile() = default;

  Kind kind_ = Kind::GammaRadial;
  double nu_ = 0.0;
  double lambda_ = 0.0;
  double log_norm_ = 0.0;
  std::vector<Sample> samples_;
  std::shared_ptr<const MonotoneCubic> interp_;
};

/// The fiducial vector together with its dilation parameter kappa.
/// The dilated density is f(theta) g(q / kappa).
struct FiducialSpec {
  AngularProfile angular = AngularProfile::paper_cosine();
  RadialProfile radial = RadialProfile::gamma(5.0, 1.0);
  double kappa = 1.0;

  FiducialSpec() = default;
  FiducialSpec(AngularProfile a, RadialProfile r, double k = 1.0);

  /// |psi(q, theta)|^2 including the dilation.
  double density(double q, double theta) const;
  double radial_value(double q) const { return radial.value(q / kappa); }
  double radial_mode() const { return kappa * radial.mode(); }
};

}  // namespace acsq
