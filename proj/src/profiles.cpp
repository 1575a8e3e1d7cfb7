#include "acsq/profiles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

// This Boost release calls isnan unqualified inside pchip.hpp.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "acsq/error.hpp"
#include "acsq/text.hpp"

namespace acsq {

class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y, double left_slope,
                double right_slope)
      : lo_(x.front()), hi_(x.back()), spline_(std::move(x), std::move(y), left_slope, right_slope) {}

  double value(double x) const { return spline_(std::clamp(x, lo_, hi_)); }
  double slope(double x) const { return spline_.prime(std::clamp(x, lo_, hi_)); }

 private:
  double lo_, hi_;
  boost::math::interpolators::pchip<std::vector<double>> spline_;
};

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_samples(const std::vector<Sample>& s, std::size_t min_count, const char* what) {
  if (s.size() < min_count)
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + ": need at least " + std::to_string(min_count) + " samples");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i].x) || !std::isfinite(s[i].value))
      throw Error(ErrorKind::InvalidArgument, std::string(what) + ": non-finite sample");
    if (s[i].value < 0.0)
      throw Error(ErrorKind::InvalidArgument, std::string(what) + ": negative sample value");
    if (i > 0 && !(s[i].x > s[i - 1].x))
      throw Error(ErrorKind::InvalidArgument, std::string(what) + ": coordinates must ascend");
  }
}

std::string_view strip_prefix(std::string_view spec, std::string_view prefix) {
  return spec.substr(prefix.size());
}

}  // namespace

std::vector<Sample> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open table '" + path + "'");
  std::vector<Sample> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    fields.imbue(std::locale::classic());
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra))
      throw Error(ErrorKind::ConfigError,
                  path + ":" + std::to_string(line_no) + ": expected two columns");
    const auto x = text::parse_double(a);
    const auto y = text::parse_double(b);
    if (!x || !y)
      throw Error(ErrorKind::ConfigError,
                  path + ":" + std::to_string(line_no) + ": malformed number");
    if (!out.empty() && !(*x > out.back().x))
      throw Error(ErrorKind::ConfigError,
                  path + ":" + std::to_string(line_no) + ": coordinates must ascend");
    out.push_back({*x, *y});
  }
  return out;
}

// ---------------------------------------------------------------- angular

AngularProfile AngularProfile::paper_cosine() {
  AngularProfile p;
  p.kind_ = Kind::PaperCosine;
  p.breaks_.reserve(9);
  for (int k = 0; k <= 8; ++k) p.breaks_.push_back(k * kTwoPi / 8.0);
  return p;
}

AngularProfile AngularProfile::tabulated(std::vector<Sample> samples) {
  check_samples(samples, 3, "angular table");
  if (samples.front().x < 0.0 || samples.back().x >= kTwoPi)
    throw Error(ErrorKind::InvalidArgument, "angular table: angles must lie in [0, 2pi)");

  // Two periodic images on each side make every interior slope periodic.
  const std::size_t n = samples.size();
  std::vector<double> x, y;
  x.reserve(n + 4);
  y.reserve(n + 4);
  for (std::size_t i = n - 2; i < n; ++i) {
    x.push_back(samples[i].x - kTwoPi);
    y.push_back(samples[i].value);
  }
  for (const auto& s : samples) {
    x.push_back(s.x);
    y.push_back(s.value);
  }
  for (std::size_t i = 0; i < 2; ++i) {
    x.push_back(samples[i].x + kTwoPi);
    y.push_back(samples[i].value);
  }

  AngularProfile p;
  p.kind_ = Kind::Tabulated;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  p.interp_ = std::make_shared<const MonotoneCubic>(std::move(x), std::move(y), nan, nan);
  p.breaks_.push_back(0.0);
  for (const auto& s : samples)
    if (s.x > 0.0) p.breaks_.push_back(s.x);
  p.breaks_.push_back(kTwoPi);
  p.samples_ = std::move(samples);
  return p;
}

AngularProfile AngularProfile::parse(std::string_view spec) {
  if (spec == "paper") return paper_cosine();
  if (spec.starts_with("tabulated:"))
    return tabulated(read_table(std::string(strip_prefix(spec, "tabulated:"))));
  throw Error(ErrorKind::ConfigError, "unknown angular profile '" + std::string(spec) + "'");
}

double AngularProfile::value(double theta) const {
  if (kind_ == Kind::PaperCosine) return std::numbers::pi * (std::cos(theta) + 1.0) / 2.0;
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return interp_->value(t);
}

double AngularProfile::derivative(double theta) const {
  if (kind_ == Kind::PaperCosine) return -std::numbers::pi * std::sin(theta) / 2.0;
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return interp_->slope(t);
}

std::string AngularProfile::describe() const {
  if (kind_ == Kind::PaperCosine) return "paper";
  return "tabulated(" + std::to_string(samples_.size()) + " samples)";
}

// ----------------------------------------------------------------- radial

RadialProfile RadialProfile::gamma(double nu, double lambda) {
  if (!(nu > 1.0) || !std::isfinite(nu))
    throw Error(ErrorKind::InvalidArgument, "gamma radial profile requires nu > 1 (g(0) = 0)");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw Error(ErrorKind::InvalidArgument, "gamma radial profile requires lambda > 0");
  RadialProfile p;
  p.kind_ = Kind::GammaRadial;
  p.nu_ = nu;
  p.lambda_ = lambda;
  p.log_norm_ = nu * std::log(lambda) - std::lgamma(nu);
  return p;
}

RadialProfile RadialProfile::tabulated(std::vector<Sample> samples) {
  check_samples(samples, 3, "radial table");
  if (!(samples.front().x > 0.0))
    throw Error(ErrorKind::InvalidArgument, "radial table: coordinates must be positive");
  if (samples.front().value != 0.0)
    throw Error(ErrorKind::InvalidArgument, "radial table: first sample must be 0 (g(0) = 0)");

  std::vector<double> x, y;
  x.reserve(samples.size());
  y.reserve(samples.size());
  for (const auto& s : samples) {
    x.push_back(s.x);
    y.push_back(s.value);
  }
  // Zero endpoint values are approached with zero slope so that sqrt(g)
  // stays differentiable when continued by zero.
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double right = samples.back().value == 0.0 ? 0.0 : nan;

  RadialProfile p;
  p.kind_ = Kind::Tabulated;
  p.interp_ = std::make_shared<const MonotoneCubic>(std::move(x), std::move(y), 0.0, right);
  p.samples_ = std::move(samples);
  return p;
}

RadialProfile RadialProfile::parse(std::string_view spec) {
  if (spec.starts_with("tabulated:"))
    return tabulated(read_table(std::string(strip_prefix(spec, "tabulated:"))));
  if (!spec.starts_with("gamma:"))
    throw Error(ErrorKind::ConfigError, "unknown radial profile '" + std::string(spec) + "'");

  std::optional<double> nu;
  double lambda = 1.0;
  for (auto item : text::split(strip_prefix(spec, "gamma:"), ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::ConfigError, "malformed gamma parameter '" + std::string(item) + "'");
    const auto key = text::trim(item.substr(0, eq));
    const auto val = text::parse_double(text::trim(item.substr(eq + 1)));
    if (!val)
      throw Error(ErrorKind::ConfigError, "malformed number in '" + std::string(item) + "'");
    if (key == "nu")
      nu = *val;
    else if (key == "lambda")
      lambda = *val;
    else
      throw Error(ErrorKind::ConfigError, "unknown gamma parameter '" + std::string(key) + "'");
  }
  if (!nu) throw Error(ErrorKind::ConfigError, "gamma profile needs nu=<float>");
  return gamma(*nu, lambda);
}

double RadialProfile::value(double q) const {
  if (kind_ == Kind::GammaRadial) {
    if (!(q > 0.0)) return 0.0;
    return std::exp(log_norm_ + (nu_ - 1.0) * std::log(q) - lambda_ * q);
  }
  if (q <= samples_.front().x || q >= samples_.back().x) return 0.0;
  return interp_->value(q);
}

double RadialProfile::derivative(double q) const {
  if (kind_ == Kind::GammaRadial) {
    if (!(q > 0.0)) return 0.0;
    return value(q) * ((nu_ - 1.0) / q - lambda_);
  }
  if (q <= samples_.front().x || q >= samples_.back().x) return 0.0;
  return interp_->slope(q);
}

double RadialProfile::gradient_density(double q) const {
  if (kind_ == Kind::GammaRadial) {
    if (!(q > 0.0)) return 0.0;
    const double log_slope = (nu_ - 1.0) / q - lambda_;
    return 0.25 * q * value(q) * log_slope * log_slope;
  }
  const double g = value(q);
  const double dg = derivative(q);
  if (g <= 0.0) return dg == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return 0.25 * q * dg * dg / g;
}

double RadialProfile::mode() const {
  if (kind_ == Kind::GammaRadial) return (nu_ - 1.0) / lambda_;
  auto peak = std::max_element(samples_.begin(), samples_.end(),
                               [](const Sample& a, const Sample& b) { return a.value < b.value; });
  return peak->x;
}

std::optional<std::pair<double, double>> RadialProfile::support() const {
  if (kind_ == Kind::GammaRadial) return std::nullopt;
  return std::pair{samples_.front().x, samples_.back().x};
}

std::vector<double> RadialProfile::knots() const {
  std::vector<double> k;
  k.reserve(samples_.size());
  for (const auto& s : samples_) k.push_back(s.x);
  return k;
}

bool RadialProfile::moment_converges(double s) const {
  if (kind_ == Kind::GammaRadial) return nu_ > s + 2.0;
  return std::isfinite(s);
}

std::string RadialProfile::describe() const {
  if (kind_ == Kind::GammaRadial)
    return "gamma:nu=" + text::format_double(nu_) + ",lambda=" + text::format_double(lambda_);
  return "tabulated(" + std::to_string(samples_.size()) + " samples)";
}

// --------------------------------------------------------------- fiducial

FiducialSpec::FiducialSpec(AngularProfile a, RadialProfile r, double k)
    : angular(std::move(a)), radial(std::move(r)), kappa(k) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw Error(ErrorKind::InvalidArgument, "dilation kappa must be positive");
}

double FiducialSpec::density(double q, double theta) const {
  return angular.value(theta) * radial.value(q / kappa);
}

}  // namespace acsq
