#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "test_support.hpp"
#include "vimpact/cli_io.hpp"
#include "vimpact/io_util.hpp"

using namespace vimpact;

namespace {

// Silences std::cout and std::cerr for the lifetime of the guard.
struct Quiet {
  std::ostringstream sink;
  std::streambuf* out;
  std::streambuf* err;
  Quiet() : out(std::cout.rdbuf(sink.rdbuf())), err(std::cerr.rdbuf(sink.rdbuf())) {}
  ~Quiet() {
    std::cout.rdbuf(out);
    std::cerr.rdbuf(err);
  }
};

int run(const std::vector<std::string>& args, std::string* captured = nullptr) {
  Quiet q;
  const int rc = run_command(args);
  if (captured) *captured = q.sink.str();
  return rc;
}

}  // namespace

TEST_CASE("minimal nondimensional config") {
  const RunConfig c = parse_config(R"({"nondimensional": {"d": 0.35, "r": 0.5}})");
  CHECK(c.params.d == 0.35);
  CHECK(c.params.r == 0.5);
  CHECK(c.params.gbar == doctest::Approx(reference_gbar()));
  CHECK(c.grid.n_v == 200);
  CHECK(c.delta == 1.2);
  CHECK_FALSE(c.physical.has_value());
}

TEST_CASE("physical block derives the nondimensional parameters") {
  const RunConfig c = parse_config(R"({"physical": {"capsule_mass": 0.1245, "capsule_length": 0.5622,
    "forcing_norm": 5.0, "incline": 1.0471975511965976, "restitution": 0.5}})");
  CHECK(c.params.gbar == doctest::Approx(0.1245 * 9.8 * std::sin(kPi / 3.0) / 5.0).epsilon(1e-12));
  CHECK(c.params.gbar == doctest::Approx(0.2113).epsilon(1e-3));
  CHECK(c.params.d == doctest::Approx(0.35).epsilon(1e-3));
}

TEST_CASE("config schema violations") {
  CHECK_THROWS_AS(parse_config(R"({"physical": {}, "nondimensional": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"nondimensional": {"d": 0.35, "q": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"schema_version": 2})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"delta": 0.5})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"nondimensional": {"d": "x"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"case": "ZZ"})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{oops"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("config round trip") {
  const RunConfig c = parse_config(R"({"nondimensional": {"d": 0.3, "r": 0.45, "psi": 0.25},
    "grid": {"n_v": 50, "n_phi": 40}, "d_values": [0.26, 0.3], "delta": 1.3, "case": "PD",
    "output_dir": "o", "solver": {"dt": 0.002}})");
  const RunConfig b = parse_config(config_to_json(c));
  CHECK(b.params.d == c.params.d);
  CHECK(b.params.r == c.params.r);
  CHECK(b.params.psi == c.params.psi);
  CHECK(b.params.gbar == c.params.gbar);
  CHECK(b.grid.n_v == 50);
  CHECK(b.grid.n_phi == 40);
  CHECK(b.d_values == c.d_values);
  CHECK(b.delta == 1.3);
  CHECK(b.case_tag == CaseTag::PD);
  CHECK(b.output_dir == "o");
  CHECK(b.solver.dt == 0.002);
  CHECK(config_to_json(b) == config_to_json(c));
}

TEST_CASE("number formatting round trips") {
  for (double x : {0.1, 1.0 / 3.0, 2.0e-300, -123456.789, kPi}) CHECK(parse_num(fmt_num(x)) == x);
}

TEST_CASE("grid parsing") {
  const GridSpec g = parse_grid("100x80");
  CHECK(g.n_v == 100);
  CHECK(g.n_phi == 80);
  CHECK_THROWS_AS(parse_grid("100"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0x5"), ConfigError);
  CHECK_THROWS_AS(parse_grid("ax5"), ConfigError);
}

TEST_CASE("error records are machine readable") {
  const auto j = nlohmann::json::parse(error_json("config", "bad \"value\""));
  CHECK(j.at("status") == "error");
  CHECK(j.at("error").at("kind") == "config");
}

TEST_CASE("unknown commands and bad configs fail with nonzero status") {
  std::string out;
  CHECK(run({"bogus"}, &out) != 0);
  CHECK(out.find("\"status\":\"error\"") != std::string::npos);
  CHECK(run({}) != 0);
  const auto dir = testing::scratch_dir("cli_bad");
  CHECK(run({"composite", "--config", (dir / "missing.json").string(), "--out", dir.string()}) != 0);
  CHECK(run({"sweep", "--grid", "7", "--out", dir.string()}) != 0);
}

TEST_CASE("unwritable output paths fail") {
  const auto dir = testing::scratch_dir("cli_unwritable");
  write_text_file(dir / "file", "x");
  CHECK(run({"composite", "--out", (dir / "file" / "sub").string()}) != 0);
}

TEST_CASE("composite command writes the trajectory") {
  const auto dir = testing::scratch_dir("cli_composite");
  std::string out;
  REQUIRE(run({"composite", "--d", "0.35", "--v0", "0.2", "--phi0", "0.1", "--steps", "4", "--out", dir.string()},
              &out) == 0);
  CHECK(out.find("region") != std::string::npos);
  std::ifstream f(dir / "trajectory.csv");
  int rows = 0;
  std::string line;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 6);
  CHECK(std::filesystem::exists(dir / "trajectory.gp"));
  CHECK(std::filesystem::exists(dir / "run_meta.json"));
}

TEST_CASE("sweep writes one row per grid node") {
  const auto dir = testing::scratch_dir("cli_sweep");
  REQUIRE(run({"sweep", "--d", "0.26", "--grid", "20x15", "--out", dir.string()}) == 0);
  std::ifstream f(dir / "surface.csv");
  int rows = 0;
  std::string line;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 301);
}

TEST_CASE("identical configs give byte-identical artifacts") {
  const auto a = testing::scratch_dir("cli_repro_a");
  const auto b = testing::scratch_dir("cli_repro_b");
  const auto cfg = testing::scratch_dir("cli_repro_cfg") / "run.json";
  write_text_file(cfg, R"({"nondimensional": {"d": 0.30}, "grid": {"n_v": 12, "n_phi": 12}})");
  for (const auto& dir : {a, b}) {
    REQUIRE(run({"partition", "--config", cfg.string(), "--out", dir.string()}) == 0);
    REQUIRE(run({"case", "--name", "CD", "--out", dir.string()}) == 0);
  }
  for (const auto& e : std::filesystem::directory_iterator(a)) {
    const auto name = e.path().filename();
    REQUIRE(std::filesystem::exists(b / name));
    if (name == "run_meta.json") continue;  // records the output directory
    CHECK_MESSAGE(read_text_file(a / name) == read_text_file(b / name), name.string());
  }
}

TEST_CASE("output directory falls back to the environment") {
  const auto dir = testing::scratch_dir("cli_env");
  setenv("VIMPACT_OUT", dir.string().c_str(), 1);
  CHECK(default_output_dir() == dir);
  REQUIRE(run({"composite", "--steps", "2"}) == 0);
  unsetenv("VIMPACT_OUT");
  CHECK(std::filesystem::exists(dir / "trajectory.csv"));
  CHECK(default_output_dir() == "vimpact_out");
}

TEST_CASE("aux-domain and compare commands") {
  const auto dir = testing::scratch_dir("cli_aux");
  REQUIRE(run({"aux-domain", "--case", "FP", "--out", dir.string()}) == 0);
  const auto j = nlohmann::json::parse(read_text_file(dir / "aux_report.json"));
  CHECK(j.at("case") == "FP");
  CHECK(j.contains("two_cycle"));
  REQUIRE(run({"compare", "--d", "0.35", "--ic", "0.2,0.1", "--steps", "30", "--tail", "10", "--out", dir.string()}) == 0);
  CHECK(std::filesystem::exists(dir / "compare_0.csv"));
  CHECK(run({"aux-domain", "--out", dir.string()}) != 0);
}
