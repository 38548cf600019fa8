// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hsfsim::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hsfsim_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path minimal_scene() {
  const fs::path p = scratch("minimal.json");
  std::ofstream(p) << R"({
  "units": {"length": "m", "frequency": "GHz", "power": "dBmW", "angle": "deg"},
  "frequency_ghz": 60, "power_dbmw": 100,
  "tx": [1, 1, 1], "rx": [[1, 2, 2]],
  "walls": [{"id": "w", "corner": [0, 0, 0], "edge_u": [0, 4, 0], "edge_v": [0, 0, 3],
             "role": "plain_wall", "material": "concrete"}]
})";
  return p;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("design") {
  auto r = run({"design", "--theta-i", "15", "--theta-r", "60"});
  CHECK(r.code == 0);
  CHECK(std::regex_search(r.out, std::regex(R"(N_m\s+8\n)")));

  r = run({"design", "--theta-i", "15", "--theta-r", "50"});
  CHECK(r.code == 0);
  CHECK(std::regex_search(r.out, std::regex(R"(N_m\s+10\n)")));
  CHECK(r.out.find("49.330 deg") != std::string::npos);

  r = run({"design", "--theta-i", "30", "--theta-r", "30"});
  CHECK(r.code == 2);
  CHECK(r.err.find("specular") != std::string::npos);

  r = run({"design", "--theta-i", "30", "--theta-r", "10"});
  CHECK(r.code == 2);
  r = run({"design", "--theta-i", "15"});
  CHECK(r.code == 2);
}

TEST_CASE("simulate") {
  const fs::path scene = minimal_scene();
  auto r = run({"simulate", "--scene", scene.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("components 1") != std::string::npos);
  CHECK(std::regex_search(r.out, std::regex(R"(\n\s+0\s+los\s)")));

  const fs::path csv = scratch("cir.csv");
  r = run({"simulate", "--scene", scene.string(), "--mode", "plain", "--csv-out", csv.string()});
  REQUIRE(r.code == 0);
  const auto rows = lines(slurp(csv));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "path_id,kind,delay_ns,gain_db,phase_rad,aoa_el_deg,aoa_az_deg,bounce_count,via_ids");
  CHECK(rows[1].rfind("0,los,", 0) == 0);
  CHECK(rows[2].find(",plain_reflected,") != std::string::npos);

  r = run({"simulate", "--rx-index", "0", "--paper-chain"});
  REQUIRE(r.code == 0);
  CHECK(std::regex_search(r.out, std::regex(R"(hsf_reflected\s.*10/3\.5/0\.5;4\.5/0/0\.5)")));

  r = run({"simulate", "--rx-index", "0", "--perfect-absorber"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("components 0") != std::string::npos);
  CHECK(r.out.find("-inf dBmW") != std::string::npos);

  CHECK(run({"simulate", "--rx-index", "9"}).code == 2);
  CHECK(run({"simulate", "--scene", "/nonexistent.json"}).code == 2);
  CHECK(run({"simulate", "--mode", "fancy"}).code == 2);
  CHECK(run({"simulate", "--chain", "10/3.5/0.5,99/99/99"}).code == 2);
}

TEST_CASE("compare") {
  const fs::path csv = scratch("compare.csv");
  auto r = run({"compare", "--chains", "paper", "--csv-out", csv.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# hsfsim ", 0) == 0);
  const auto rows = lines(slurp(csv));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "rx_index,rx_x,rx_y,rx_z,chain,plain_dbmw,hsf_dbmw,gain_pct,gain_pct_linear");

  const fs::path ideal_csv = scratch("compare_ideal.csv");
  REQUIRE(run({"compare", "--chains", "paper", "--ideal-hsf", "--csv-out", ideal_csv.string()}).code == 0);
  const auto ideal = lines(slurp(ideal_csv));
  REQUIRE(ideal.size() == 5);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    auto fields = [](const std::string& row) {
      std::vector<std::string> f;
      std::istringstream in(row);
      for (std::string x; std::getline(in, x, ',');) f.push_back(x);
      return f;
    };
    const auto a = fields(rows[k]);
    const auto b = fields(ideal[k]);
    REQUIRE(a.size() == 9);
    CHECK(a[0] == std::to_string(k - 1));
    CHECK(a[4] == b[4]);
    const double plain = std::stod(a[5]);
    const double hsf = std::stod(a[6]);
    CHECK(hsf > plain);
    CHECK(std::stod(a[7]) == doctest::Approx(100.0 * (hsf - plain) / plain).epsilon(1e-6));
    CHECK(std::stod(b[6]) >= hsf);
  }

  const fs::path sel = scratch("compare_select.csv");
  r = run({"compare", "--csv-out", sel.string()});
  REQUIRE(r.code == 0);
  CHECK(lines(slurp(sel)).size() == 5);
}

TEST_CASE("tables") {
  auto r = run({"tables", "--which", "2"});
  REQUIRE(r.code == 0);
  const std::regex row(R"(^\s+(\d+)\s+(\d+)\s+(\d+)\s+(\d+)\s+([+-]\d+)\s)");
  int rows = 0;
  for (const auto& l : lines(r.out)) {
    std::smatch m;
    if (!std::regex_search(l, m, row)) continue;
    ++rows;
    CHECK(std::abs(std::stoi(m[5])) <= 1);
  }
  CHECK(rows == 14);

  r = run({"tables", "--which", "1"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 8);
  CHECK(r.out.find("-42") != std::string::npos);

  r = run({"tables", "--which", "3"});
  REQUIRE(r.code == 0);
  CHECK(std::regex_search(r.out, std::regex(R"(\n\s*1\s.*\s147\s+147\.46)")));

  CHECK(run({"tables", "--which", "4"}).code == 2);
}

TEST_CASE("csv output is byte-identical across runs") {
  for (const std::vector<std::string>& cmd :
       {std::vector<std::string>{"compare", "--chains", "paper"}, std::vector<std::string>{"simulate", "--mode", "plain"},
        std::vector<std::string>{"tables", "--which", "2"}}) {
    const fs::path a = scratch("a.csv");
    const fs::path b = scratch("b.csv");
    auto args = cmd;
    args.insert(args.end(), {"--csv-out", a.string()});
    REQUIRE(run(args).code == 0);
    args.back() = b.string();
    REQUIRE(run(args).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
  }
}

TEST_CASE("export-scene writes the reference fixture") {
  const fs::path p = scratch("fig6.json");
  REQUIRE(run({"export-scene", "--out", p.string()}).code == 0);
  CHECK(slurp(p) == slurp(fs::path(HSFSIM_DATA_DIR) / "paper_fig6.json"));
}

TEST_CASE("exit codes and the data directory override") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"--version"}).code == 0);

  ::setenv("HSF_SIM_DATA_DIR", "/nonexistent/hsfsim-data", 1);
  auto r = run({"simulate", "--paper-chain"});
  ::unsetenv("HSF_SIM_DATA_DIR");
  CHECK(r.code == 2);
  CHECK(!r.err.empty());

  ::setenv("HSF_SIM_DATA_DIR", HSFSIM_DATA_DIR, 1);
  r = run({"simulate", "--paper-chain"});
  ::unsetenv("HSF_SIM_DATA_DIR");
  CHECK(r.code == 0);
}
