#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "acsq/error.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"

using namespace acsq;
using namespace acsq::cli;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run acsq_run(std::vector<std::string> args) {
  args.insert(args.begin(), "acsq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const char* name) { return std::string(ACSQ_TEST_DATA) + "/" + name; }

struct Csv {
  std::vector<std::string> notes;
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;

  double num(std::size_t i, const std::string& col) const { return std::stod(rows.at(i).at(col)); }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with("# ")) {
      csv.notes.push_back(line.substr(2));
    } else if (csv.header.empty()) {
      csv.header = split(line);
    } else {
      const auto cells = split(line);
      REQUIRE(cells.size() == csv.header.size());
      std::map<std::string, std::string> row;
      for (std::size_t i = 0; i < cells.size(); ++i) row[csv.header[i]] = cells[i];
      csv.rows.push_back(std::move(row));
    }
  }
  return csv;
}

const std::map<std::string, std::string>* find_row(const Csv& csv,
                                                   const std::map<std::string, std::string>& key) {
  for (const auto& row : csv.rows) {
    bool match = true;
    for (const auto& [k, v] : key) match = match && row.at(k) == v;
    if (match) return &row;
  }
  return nullptr;
}

double quantity(const Csv& csv, const std::string& name, const std::string& s = "") {
  std::map<std::string, std::string> key{{"quantity", name}};
  if (!s.empty()) key["s"] = s;
  const auto* row = find_row(csv, key);
  REQUIRE(row != nullptr);
  return std::stod(row->at("value"));
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const std::vector<std::string> kUnitCoefficients{"--N0", "1", "--N1", "0.5", "--sigma", "1.25"};

std::vector<std::string> with(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST_CASE("moments with defaults") {
  const auto r = acsq_run({"moments"});
  REQUIRE(r.code == kOk);
  CHECK(r.err.empty());
  const auto csv = parse_csv(r.out);
  CHECK(csv.header == std::vector<std::string>{"quantity", "s", "value"});
  CHECK(rel(quantity(csv, "c_psi"), std::numbers::pi * std::numbers::pi / 4.0) < 1e-12);
  CHECK(rel(quantity(csv, "N", "0"), 1.0 / 6.0) < 1e-12);
  CHECK(rel(quantity(csv, "N", "1"), 1.0 / 12.0) < 1e-12);
  CHECK(rel(quantity(csv, "sigma"), 1.25) < 1e-12);
}

TEST_CASE("moments: divergent order is named and mapped to exit 2") {
  const auto r = acsq_run({"--fiducial", "gamma:nu=2.5,lambda=1", "moments", "--orders", "2"});
  CHECK(r.code == kDivergentMoment);
  CHECK(r.out.empty());
  CHECK(r.err.find("DivergentMoment(s=2)") != std::string::npos);

  // With the full default ladder the first failing order is s = 1.
  const auto full = acsq_run({"--fiducial", "gamma:nu=2.5,lambda=1", "moments"});
  CHECK(full.code == kDivergentMoment);
  CHECK(full.err.find("DivergentMoment(s=1)") != std::string::npos);
}

TEST_CASE("moments: c_psi does not depend on kappa") {
  const auto a = parse_csv(acsq_run({"moments"}).out);
  const auto r = acsq_run({"--kappa", "2", "moments"});
  REQUIRE(r.code == kOk);
  const auto b = parse_csv(r.out);
  CHECK(rel(quantity(b, "c_psi"), quantity(a, "c_psi")) < 1e-12);
  CHECK(rel(quantity(b, "N", "0"), quantity(a, "N", "0") / 2.0) < 1e-12);
}

TEST_CASE("moments JSON output") {
  const auto r = acsq_run({"--format", "json", "moments"});
  REQUIRE(r.code == kOk);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.contains("rows"));
  CHECK(doc["rows"][0]["quantity"] == "c_psi");
  CHECK(doc["rows"][0]["value"].get<double>() == doctest::Approx(std::numbers::pi * std::numbers::pi / 4.0));
}

TEST_CASE("sigma command and the self-adjointness warning") {
  auto r = acsq_run({"sigma"});
  REQUIRE(r.code == kOk);
  CHECK(rel(quantity(parse_csv(r.out), "sigma"), 1.25) < 1e-12);

  r = acsq_run({"--fiducial", "gamma:nu=3.2,lambda=1", "sigma"});
  REQUIRE(r.code == kOk);
  CHECK(rel(quantity(parse_csv(r.out), "sigma"), 0.8) < 1e-10);
  CHECK(r.err.find("SelfAdjointness") != std::string::npos);
}

TEST_CASE("spectrum in paper mode") {
  const auto s = acsq_run(with({"--mode", "paper", "spectrum"}, kUnitCoefficients));
  REQUIRE(s.code == kOk);
  const auto csv = parse_csv(s.out);
  CHECK(csv.header == std::vector<std::string>{"n", "l", "varsigma", "mode", "E", "bounded"});
  CHECK(csv.rows.size() == 5 * 7);
  const auto* row = find_row(csv, {{"n", "0"}, {"l", "0"}});
  REQUIRE(row != nullptr);
  CHECK(std::stod(row->at("E")) == doctest::Approx(1.0 + std::sqrt(1.25)).epsilon(1e-14));
  CHECK(row->at("bounded") == "true");
}

TEST_CASE("spectrum beyond the critical velocity") {
  auto r = acsq_run(with({"--mode", "paper", "--Omega", "1.5", "spectrum"}, kUnitCoefficients));
  CHECK(r.code == kUnbounded);
  CHECK(r.out.empty());
  CHECK(r.err.find("critical") != std::string::npos);

  // 1.3 < sqrt(2) is fine in paper mode but beyond the derived critical value 1.
  r = acsq_run(with({"--mode", "paper", "--Omega", "1.3", "spectrum"}, kUnitCoefficients));
  CHECK(r.code == kOk);
  r = acsq_run(with({"--mode", "derived", "--Omega", "1.3", "spectrum"}, kUnitCoefficients));
  CHECK(r.code == kUnbounded);

  r = acsq_run(with({"--mode", "paper", "--Omega", "1.5", "--allow-unbounded", "spectrum"}, kUnitCoefficients));
  CHECK(r.code == kOk);
  const auto csv = parse_csv(r.out);
  CHECK(csv.rows.front().at("bounded") == "false");
}

TEST_CASE("spectrum --mode both pairs the couplings") {
  const double n0 = 1.0, Omega = 0.4, vs = 0.5;
  const auto r = acsq_run(with({"--mode", "both", "--Omega", "0.4", "--varsigma", "0.5", "spectrum"}, kUnitCoefficients));
  REQUIRE(r.code == kOk);
  const auto csv = parse_csv(r.out);
  bool open_question = false;
  for (const auto& n : csv.notes) open_question = open_question || n.starts_with("open question");
  CHECK(open_question);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const double l = csv.num(i, "l");
    const double diff = n0 * Omega * (l + vs) - n0 / std::sqrt(2.0) * Omega * l;
    CHECK(csv.num(i, "coupling_difference") == doctest::Approx(diff).epsilon(1e-13));
    CHECK(csv.num(i, "E_paper") - csv.num(i, "E_derived") == doctest::Approx(diff).epsilon(1e-12));
    CHECK(csv.num(i, "coupling_paper") - csv.num(i, "coupling_derived") ==
          doctest::Approx(diff).epsilon(1e-13));
  }
}

TEST_CASE("spectrum --omega-unit rescales energies") {
  const auto a = parse_csv(acsq_run(with({"--omega", "2", "spectrum"}, kUnitCoefficients)).out);
  const auto b = parse_csv(acsq_run(with({"--omega", "2", "--omega-unit", "spectrum"}, kUnitCoefficients)).out);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(b.num(i, "E") == doctest::Approx(a.num(i, "E") / 2.0));
}

TEST_CASE("spectrum --solver agrees with the closed form") {
  const auto r = acsq_run({"spectrum", "--solver", "--n-max", "1", "--l-min", "0", "--l-max", "1", "--grid-n", "2048"});
  REQUIRE(r.code == kOk);
  const auto csv = parse_csv(r.out);
  for (std::size_t i = 0; i < csv.rows.size(); ++i)
    CHECK(rel(csv.num(i, "E_solver"), csv.num(i, "E")) < 1e-4);
}

TEST_CASE("critical-omega") {
  auto csv = parse_csv(acsq_run({"--N0", "1", "--N1", "0.5", "critical-omega"}).out);
  CHECK(std::abs(quantity(csv, "paper") - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(quantity(csv, "derived") - 1.0) < 1e-12);
  CHECK(quantity(csv, "classical") == 1.0);

  csv = parse_csv(acsq_run({"--N0", "2", "--N1", "0.5", "critical-omega"}).out);
  CHECK(std::abs(quantity(csv, "paper") - 1.0 / std::sqrt(2.0)) < 1e-12);

  // N0 ~ 1/kappa and N1 ~ 1/kappa^2, so both quantum values are dilation
  // invariant; the classical one never depends on the fiducial.
  const auto k1 = parse_csv(acsq_run({"critical-omega"}).out);
  const auto k2 = parse_csv(acsq_run({"--kappa", "3", "critical-omega"}).out);
  CHECK(rel(quantity(k2, "paper"), quantity(k1, "paper")) < 1e-10);
  CHECK(rel(quantity(k2, "derived"), quantity(k1, "derived")) < 1e-10);
  CHECK(quantity(k2, "classical") == quantity(k1, "classical"));
  CHECK(std::abs(quantity(k1, "paper") - 2.0 * std::sqrt(1.0 / 12.0) * 6.0) < 1e-10);
}

TEST_CASE("eigenfunction samples") {
  SUBCASE("ground state has a single maximum on the ray") {
    const auto r = acsq_run({"eigenfunction", "--samples", "400"});
    REQUIRE(r.code == kOk);
    const auto csv = parse_csv(r.out);
    CHECK(csv.header == std::vector<std::string>{"r", "theta", "re", "im"});
    std::vector<double> ray;
    for (std::size_t i = 0; i < 400; ++i) ray.push_back(std::abs(csv.num(i, "re")));
    int turns = 0;
    for (std::size_t i = 1; i + 1 < ray.size(); ++i)
      if (ray[i] > ray[i - 1] && ray[i] >= ray[i + 1]) ++turns;
    CHECK(turns == 1);

    bool exponent_note = false;
    for (const auto& n : csv.notes)
      if (n.starts_with("near_origin_exponent=")) {
        exponent_note = true;
        CHECK(std::stod(n.substr(21)) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-3));
      }
    CHECK(exponent_note);
    // Circle rows follow the ray and all sit at one radius.
    CHECK(csv.rows.size() == 800);
    CHECK(csv.num(400, "r") == csv.num(799, "r"));
  }

  SUBCASE("n = 2 has two radial nodes") {
    const auto csv = parse_csv(acsq_run({"eigenfunction", "--n", "2", "--samples", "300"}).out);
    int nodes = 0;
    for (std::size_t i = 1; i < 300; ++i)
      if ((csv.num(i - 1, "re") > 0) != (csv.num(i, "re") > 0)) ++nodes;
    CHECK(nodes == 2);
  }

  SUBCASE("winding phase on the circle") {
    const auto csv = parse_csv(acsq_run({"eigenfunction", "--l", "1", "--samples", "64"}).out);
    for (std::size_t i = 64; i < 128; ++i) {
      const double theta = csv.num(i, "theta");
      const double mod = std::hypot(csv.num(i, "re"), csv.num(i, "im"));
      CHECK(std::atan2(csv.num(i, "im"), csv.num(i, "re")) ==
            doctest::Approx(std::remainder(theta, 2.0 * std::numbers::pi)).epsilon(1e-9));
      CHECK(mod == doctest::Approx(std::hypot(csv.num(64, "re"), csv.num(64, "im"))));
    }
  }
}

TEST_CASE("verify emits JSON and the documented exit codes") {
  auto r = acsq_run({"verify", "identity"});
  REQUIRE(r.code == kOk);
  auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.is_array());
  CHECK(doc[0]["check"] == "identity");
  CHECK(doc[0]["pass"] == true);
  CHECK(doc[0]["max_deviation"].get<double>() < 1e-8);

  // An impossible tolerance fails and the report names the check.
  r = acsq_run({"--tol", "1e-300", "verify", "covariance"});
  CHECK(r.code == kVerifyFailed);
  CHECK(r.err.find("covariance") != std::string::npos);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc[0]["pass"] == false);

  r = acsq_run({"verify", "cancellation", "--l-min", "0"});
  CHECK(r.code == kOk);
  r = acsq_run({"--Omega", "0.3", "verify", "cancellation"});
  CHECK(r.code == kOk);
}

TEST_CASE("verify commutator with an isotropic angular profile is skipped") {
  const auto r = acsq_run({"--angular", "tabulated:" + data("angular_isotropic.dat"), "verify", "commutator"});
  CHECK(r.code == kOk);
  CHECK(r.err.find("DegeneratePosition") != std::string::npos);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc[0]["skipped"] == true);
}

TEST_CASE("verify oracle on a small range") {
  const auto r = acsq_run({"verify", "oracle", "--n-max", "1", "--l-min", "0", "--l-max", "1", "--grid-n", "1024"});
  REQUIRE(r.code == kOk);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.size() == 3);
  CHECK(doc[0]["check"] == "oracle");
  CHECK(doc[1]["check"] == "oracle_richardson");
  CHECK(doc[2]["check"] == "oracle_order");
}

TEST_CASE("radial command") {
  auto r = acsq_run({"radial", "--n-max", "0", "--l-min", "0", "--l-max", "0", "--grid-n", "512"});
  REQUIRE(r.code == kOk);
  const auto csv = parse_csv(r.out);
  CHECK(csv.header ==
        std::vector<std::string>{"l", "n", "grid_N", "E", "E_extrapolated", "order", "err_estimate"});
  REQUIRE(csv.rows.size() == 3);
  CHECK(csv.rows[0].at("grid_N") == "512");
  CHECK(csv.rows[1].at("grid_N") == "1025");
  CHECK(rel(csv.num(2, "E_extrapolated"), std::sqrt(1.0 / 6.0) * (1.0 + std::sqrt(1.25))) < 1e-6);

  r = acsq_run({"--mode", "paper", "radial"});
  CHECK(r.code == kConfigError);
  r = acsq_run({"radial", "--rungs", "2"});
  CHECK(r.code == kConfigError);
  r = acsq_run({"radial", "--r-min", "-1"});
  CHECK(r.code == kConfigError);
}

TEST_CASE("classical trajectories") {
  auto r = acsq_run({"--Omega", "0.5", "classical", "--periods", "5"});
  REQUIRE(r.code == kOk);
  const auto csv = parse_csv(r.out);
  CHECK(csv.header == std::vector<std::string>{"t", "qx", "qy"});
  CHECK(csv.num(0, "qx") == 1.0);
  CHECK(r.err.find("verdict=bounded") != std::string::npos);

  r = acsq_run({"--Omega", "1", "classical", "--periods", "5"});
  REQUIRE(r.code == kOk);
  CHECK(r.err.find("marginal=true") != std::string::npos);
}

TEST_CASE("config files") {
  SUBCASE("flags override the file") {
    const auto path = std::filesystem::temp_directory_path() / "acsq_test_cli.conf";
    {
      std::ofstream f(path);
      f << "# unit coefficients\nN0 = 1\nN1 = 0.5\nsigma = 1.25\nmode = paper\nOmega = 1.5\n";
    }
    auto r = acsq_run({"--config", path.string(), "spectrum"});
    CHECK(r.code == kUnbounded);
    r = acsq_run({"--config", path.string(), "--Omega", "0", "spectrum"});
    CHECK(r.code == kOk);
    std::filesystem::remove(path);
  }

  SUBCASE("parse errors carry line and column") {
    try {
      parse_config("kappa = 1\n\nomega =  abc\n", "run.conf");
      FAIL("expected a ConfigError");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ConfigError);
      CHECK(std::string(e.what()).find("run.conf:3:10") != std::string::npos);
    }
    try {
      parse_config("  bogus = 1\n", "run.conf");
      FAIL("expected a ConfigError");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("run.conf:1:3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("no equals sign\n", "x"), Error);
    CHECK_THROWS_AS(parse_config("varsigma = 0.25\n", "x"), Error);

    const auto path = std::filesystem::temp_directory_path() / "acsq_test_bad.conf";
    {
      std::ofstream f(path);
      f << "mode = sideways\n";
    }
    const auto r = acsq_run({"--config", path.string(), "moments"});
    CHECK(r.code == kConfigError);
    CHECK(r.err.find(":1:") != std::string::npos);
    std::filesystem::remove(path);
  }

  SUBCASE("dump-config round trip") {
    RunConfig cfg;
    cfg.kappa = 0.3;
    cfg.Omega = 1.0 / 3.0;
    cfg.varsigma = 0.5;
    cfg.mode = ModeSelection::Both;
    cfg.n1 = 0.1;
    cfg.orders = {-1.0, 0.5, 2.25};
    cfg.r_max = 17.125;
    cfg.spacing = Spacing::Uniform;
    cfg.format = Format::Json;
    cfg.out = "result.json";
    cfg.tol = 1e-7;
    cfg.omega_unit = true;
    CHECK(parse_config(dump_config(cfg), "dump") == cfg);
    CHECK(parse_config(dump_config(RunConfig{}), "dump") == RunConfig{});

    const auto r = acsq_run({"--Omega", "0.7", "--mode", "both", "--dump-config"});
    REQUIRE(r.code == kOk);
    const auto back = parse_config(r.out, "stdout");
    CHECK(back.Omega == 0.7);
    CHECK(back.mode == ModeSelection::Both);
  }
}

TEST_CASE("usage errors") {
  CHECK(acsq_run({}).code == kConfigError);
  CHECK(acsq_run({"frobnicate"}).code == kConfigError);
  CHECK(acsq_run({"--varsigma", "0.3", "spectrum"}).code == kConfigError);
  CHECK(acsq_run({"verify", "everything"}).code == kConfigError);
  CHECK(acsq_run({"--help"}).code == kOk);
  CHECK(acsq_run({"--mass", "-1", "spectrum"}).code == kConfigError);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "acsq_test_out.csv";
  const auto r = acsq_run({"--out", path.string(), "critical-omega"});
  REQUIRE(r.code == kOk);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("quantity,value") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("exit code table") {
  CHECK(exit_code(ErrorKind::ConfigError) == 1);
  CHECK(exit_code(ErrorKind::InvalidArgument) == 1);
  CHECK(exit_code(ErrorKind::DivergentMoment) == 2);
  CHECK(exit_code(ErrorKind::GridTooCoarse) == 4);
  CHECK(exit_code(ErrorKind::StepSizeError) == 5);
  CHECK(exit_code(ErrorKind::NonConvergent) == 5);
}
