#include "config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "acsq/error.hpp"
#include "acsq/text.hpp"

namespace acsq::cli {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ConfigError, where.empty() ? what : where + ": " + what);
}

double to_double(std::string_view key, std::string_view v, const std::string& where) {
  const auto d = text::parse_double(text::trim(v));
  if (!d) fail(where, "'" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
  return *d;
}

int to_int(std::string_view key, std::string_view v, const std::string& where) {
  const auto d = text::parse_long(text::trim(v));
  if (!d) fail(where, "'" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
  return static_cast<int>(*d);
}

bool to_bool(std::string_view key, std::string_view v, const std::string& where) {
  const auto t = text::trim(v);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  fail(where, "'" + std::string(key) + "' expects true or false, got '" + std::string(v) + "'");
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + text::format_double(v[i]);
  return s;
}

void parse_into(double& out, std::string_view key, std::string_view v, const std::string& w) {
  out = to_double(key, v, w);
}
void parse_into(int& out, std::string_view key, std::string_view v, const std::string& w) {
  out = to_int(key, v, w);
}
void parse_into(bool& out, std::string_view key, std::string_view v, const std::string& w) {
  out = to_bool(key, v, w);
}
void parse_into(std::string& out, std::string_view, std::string_view v, const std::string&) {
  out = std::string(text::trim(v));
}
void parse_into(std::optional<double>& out, std::string_view key, std::string_view v, const std::string& w) {
  if (text::trim(v).empty())
    out.reset();
  else
    out = to_double(key, v, w);
}

std::string show(double v) { return text::format_double(v); }
std::string show(int v) { return std::to_string(v); }
std::string show(bool v) { return v ? "true" : "false"; }
std::string show(const std::string& v) { return v; }
std::string show(const std::optional<double>& v) { return v ? text::format_double(*v) : ""; }

using Setter = std::function<void(RunConfig&, std::string_view, const std::string&)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Field {
  std::string_view key;
  Setter set;
  Getter get;
};

template <class T>
Field member(std::string_view key, T RunConfig::*m) {
  return {key, [key, m](RunConfig& c, std::string_view v, const std::string& w) { parse_into(c.*m, key, v, w); },
          [m](const RunConfig& c) { return show(c.*m); }};
}

// Enumerations spelled as words.
template <class E>
Field choice(std::string_view key, E RunConfig::*m, std::vector<std::pair<std::string_view, E>> names) {
  return {key,
          [key, m, names](RunConfig& c, std::string_view v, const std::string& w) {
            const auto t = text::trim(v);
            std::string allowed;
            for (const auto& [name, value] : names) {
              if (t == name) {
                c.*m = value;
                return;
              }
              allowed += (allowed.empty() ? "" : ", ") + std::string(name);
            }
            fail(w, "'" + std::string(key) + "' must be one of " + allowed + ", got '" + std::string(v) + "'");
          },
          [m, names](const RunConfig& c) {
            for (const auto& [name, value] : names)
              if (c.*m == value) return std::string(name);
            return std::string();
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table{
      member("fiducial", &RunConfig::fiducial),
      member("angular", &RunConfig::angular),
      member("kappa", &RunConfig::kappa),
      member("mass", &RunConfig::mass),
      member("omega", &RunConfig::omega),
      member("Omega", &RunConfig::Omega),
      Field{"varsigma",
            [](RunConfig& c, std::string_view v, const std::string& w) {
              const double x = to_double("varsigma", v, w);
              if (x != 0.0 && x != 0.5) fail(w, "'varsigma' must be 0 or 0.5, got '" + std::string(v) + "'");
              c.varsigma = x;
            },
            [](const RunConfig& c) { return show(c.varsigma); }},
      choice("mode", &RunConfig::mode,
             {{"paper", ModeSelection::Paper}, {"derived", ModeSelection::Derived}, {"both", ModeSelection::Both}}),
      member("N0", &RunConfig::n0),
      member("N1", &RunConfig::n1),
      member("sigma", &RunConfig::sigma),
      Field{"orders",
            [](RunConfig& c, std::string_view v, const std::string& w) {
              std::vector<double> out;
              for (auto item : text::split(v, ',')) out.push_back(to_double("orders", item, w));
              c.orders = out;
            },
            [](const RunConfig& c) { return list(c.orders); }},
      member("n_max", &RunConfig::n_max),
      member("l_min", &RunConfig::l_min),
      member("l_max", &RunConfig::l_max),
      member("grid_n", &RunConfig::grid_n),
      member("r_min", &RunConfig::r_min),
      member("r_max", &RunConfig::r_max),
      choice("spacing", &RunConfig::spacing, {{"geometric", Spacing::Geometric}, {"uniform", Spacing::Uniform}}),
      member("rungs", &RunConfig::rungs),
      member("n", &RunConfig::n),
      member("l", &RunConfig::l),
      member("samples", &RunConfig::samples),
      member("qx", &RunConfig::qx),
      member("qy", &RunConfig::qy),
      member("vx", &RunConfig::vx),
      member("vy", &RunConfig::vy),
      member("periods", &RunConfig::periods),
      choice("format", &RunConfig::format, {{"csv", Format::Csv}, {"json", Format::Json}}),
      member("out", &RunConfig::out),
      member("tol", &RunConfig::tol),
      member("allow_unbounded", &RunConfig::allow_unbounded),
      member("omega_unit", &RunConfig::omega_unit),
  };
  return table;
}

const Field* find_field(std::string_view key) {
  for (const auto& f : fields())
    if (f.key == key) return &f;
  return nullptr;
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

void set_key(RunConfig& cfg, std::string_view key, std::string_view value, const std::string& where) {
  const auto* f = find_field(key);
  if (!f) fail(where, "unknown key '" + std::string(key) + "'");
  f->set(cfg, value, where);
}

RunConfig parse_config(std::string_view text, const std::string& source, RunConfig base) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;

    const auto first = line.find_first_not_of(" \t");
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(source + ":" + std::to_string(line_no) + ":" + std::to_string(first + 1), "expected key = value");
    const auto key = text::trim(line.substr(0, eq));
    const auto value = line.substr(eq + 1);
    const auto value_col = line.find_first_not_of(" \t", eq + 1);
    const auto col = find_field(key) ? (value_col == std::string_view::npos ? eq + 2 : value_col + 1) : first + 1;
    set_key(base, key, value, source + ":" + std::to_string(line_no) + ":" + std::to_string(col));
    if (end == text.size()) break;
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path, std::move(base));
}

std::string dump_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& f : fields()) out += std::string(f.key) + " = " + f.get(cfg) + "\n";
  return out;
}

FiducialSpec fiducial_spec(const RunConfig& cfg) {
  if (!(cfg.kappa > 0.0)) throw Error(ErrorKind::ConfigError, "kappa must be positive");
  return {AngularProfile::parse(cfg.angular), RadialProfile::parse(cfg.fiducial), cfg.kappa};
}

FrameParams frame_params(const RunConfig& cfg, Mode mode) {
  FrameParams p;
  p.mass = cfg.mass;
  p.omega = cfg.omega;
  p.Omega = cfg.Omega;
  p.varsigma = cfg.varsigma;
  p.mode = mode;
  p.validate();
  return p;
}

std::vector<Mode> selected_modes(const RunConfig& cfg) {
  switch (cfg.mode) {
    case ModeSelection::Paper: return {Mode::PaperFormula};
    case ModeSelection::Derived: return {Mode::HamiltonianDerived};
    case ModeSelection::Both: return {Mode::PaperFormula, Mode::HamiltonianDerived};
  }
  return {};
}

}  // namespace acsq::cli
