#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <sstream>

#include "chrec/commands.hpp"

using namespace chrec;
using namespace chrec::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "chrec_test_cli" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

int line_count(const std::string& text) { return static_cast<int>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST_CASE("config errors name the offending field") {
  CHECK(config_error(R"({"grid": {"N_x": 63}})").find("grid.N_x") != std::string::npos);
  CHECK(config_error(R"({"grid": {"N_x": "64"}})").find("grid.N_x") != std::string::npos);
  CHECK(config_error(R"({"grid": {"Nx": 64}})").find("grid.Nx") != std::string::npos);
  CHECK(config_error(R"({"colour": 1})").find("colour") != std::string::npos);
  CHECK(config_error(R"({"solver": {"cfl": 0.4, "fixed_dt": 0.01}})").find("fixed_dt") != std::string::npos);
  CHECK(config_error(R"({"recurrence": {"T": 1, "eddy_turnovers": 2, "M": 5, "delta": 1}})").find("eddy_turnovers") !=
        std::string::npos);
  CHECK(config_error(R"({"recurrence": {"T": 1, "M": 5}})").find("delta") != std::string::npos);
  CHECK(config_error(R"({"initial": "vortex"})").find("vortex") != std::string::npos);
  CHECK(config_error("{not json").size() > 0);
  CHECK(config_error(R"({"grid": {"N_x": 8}, "initial": "random max_mode=4"})").find("max_mode") !=
        std::string::npos);
}

TEST_CASE("config defaults and overrides") {
  RunConfig cfg = parse_config(R"({"initial": "random seed=2 max_mode=3"})");
  CHECK(cfg.grid.nx == 64);
  CHECK(cfg.solver.cfl == 0.4);
  CHECK_FALSE(cfg.recurrence.has_value());
  override_seed(cfg, 9);
  CHECK(cfg.initial.params.at("seed") == "9");
  CHECK(cfg.verify.seed == 9);
}

TEST_CASE("format_double round trips") {
  for (double x : {0.1, 1.0 / 3, 1e-300, -2.5e17, 0.0}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("simulate with t_end = 0 writes one row") {
  RunConfig cfg = parse_config(R"({"grid": {"N_x": 16, "N_y": 17}, "initial": "random seed=1 max_mode=3"})");
  cfg.output.dir = scratch("t0");
  std::ostringstream out, err;
  CHECK(cmd_simulate(cfg, out, err) == kOk);
  const std::string csv = slurp(cfg.output.dir / "diagnostics.csv");
  CHECK(csv.substr(0, csv.find('\n')) == "t,E,G,mean_u,mean_v,lemma1_residual,h1_seminorm_sq");
  CHECK(line_count(csv) == 2);
}

TEST_CASE("steady shear run keeps its invariants") {
  RunConfig cfg = parse_config(
      R"({"grid": {"N_x": 16, "N_y": 33}, "solver": {"t_end": 1, "record_every": 5}, "initial": "shear"})");
  cfg.output.dir = scratch("shear");
  std::ostringstream out, err;
  CHECK(cmd_simulate(cfg, out, err) == kOk);
  CHECK(out.str().find("max_drift_E 0\n") != std::string::npos);
}

TEST_CASE("simulate writes snapshots on request") {
  RunConfig cfg = parse_config(
      R"({"grid": {"N_x": 16, "N_y": 17}, "solver": {"fixed_dt": 0.05, "t_end": 0.2},
          "output": {"snapshot_every": 2}, "initial": "eigenstate"})");
  cfg.output.dir = scratch("snapshots");
  std::ostringstream out, err;
  CHECK(cmd_simulate(cfg, out, err) == kOk);
  int count = 0;
  for (const auto& entry : fs::directory_iterator(cfg.output.dir))
    count += entry.path().extension() == ".bin";
  CHECK(count == 3);
}

TEST_CASE("same config and seed give byte-identical outputs") {
  const std::string text = R"({"grid": {"N_x": 16, "N_y": 17}, "solver": {"t_end": 1},
      "recurrence": {"T": 0.25, "M": 5, "delta_rel": 0.2}, "initial": "random seed=4 max_mode=3"})";
  std::string first[3];
  for (int run = 0; run < 2; ++run) {
    RunConfig cfg = parse_config(text);
    cfg.output.dir = scratch("det" + std::to_string(run));
    std::ostringstream out, err;
    CHECK(cmd_recurrence(cfg, out, err) == kOk);
    const std::string files[3] = {"diagnostics.csv", "cover.json", "closest_return.csv"};
    for (int f = 0; f < 3; ++f) {
      const std::string content = slurp(cfg.output.dir / files[f]);
      if (run == 0) first[f] = content;
      else CHECK(content == first[f]);
    }
  }
}

TEST_CASE("recurrence of a steady flow") {
  RunConfig cfg = parse_config(R"({"grid": {"N_x": 16, "N_y": 17},
      "recurrence": {"T": 0.1, "M": 50, "delta_rel": 0.01}, "initial": "shear"})");
  cfg.output.dir = scratch("steady");
  std::ostringstream out, err;
  CHECK(cmd_recurrence(cfg, out, err) == kOk);
  const auto cover = nlohmann::json::parse(slurp(cfg.output.dir / "cover.json"));
  CHECK(cover["n_centers"] == 1);
  CHECK(cover["max_visits"] == 50);
  CHECK(cover["pigeonhole_holds"] == true);
  CHECK(out.str().find("pigeonhole: max_visits = 50 >= ceil(M/N_centers) = 50 : true") != std::string::npos);
}

TEST_CASE("traveling wave returns at even sample indices") {
  RunConfig cfg = parse_config(R"({"grid": {"N_x": 32, "N_y": 33},
      "recurrence": {"T": 3.141592653589793, "M": 7, "delta_rel": 0.01}, "initial": "traveling_wave c=1"})");
  cfg.output.dir = scratch("wave");
  std::ostringstream out, err;
  CHECK(cmd_recurrence(cfg, out, err) == kOk);
  const auto cover = nlohmann::json::parse(slurp(cfg.output.dir / "cover.json"));
  bool found = false;
  for (const auto& ball : cover["returns"])
    if (ball["center"] == 0) {
      CHECK(ball["visits"] == nlohmann::json::array({0, 2, 4, 6}));
      found = true;
    }
  CHECK(found);
}

TEST_CASE("recurrence needs its config block") {
  RunConfig cfg = parse_config("{}");
  std::ostringstream out, err;
  CHECK_THROWS_AS(cmd_recurrence(cfg, out, err), ConfigError);
}

TEST_CASE("verify battery") {
  std::ostringstream out, err;
  SUBCASE("empty battery is a config error") {
    RunConfig cfg = parse_config(R"({"verify": {"checks": []}})");
    cfg.output.dir = scratch("verify_empty");
    try {
      cmd_verify(cfg, {}, out, err);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("no checks requested") != std::string::npos);
    }
  }
  SUBCASE("default conservation passes and the dealiasing fault fails") {
    RunConfig cfg = parse_config(R"({"verify": {"checks": ["conservation", "tail_bound"], "n_fields": 5}})");
    cfg.output.dir = scratch("verify_ok");
    CHECK(cmd_verify(cfg, {}, out, err) == kOk);
    const auto verdict = nlohmann::json::parse(slurp(cfg.output.dir / "verify.json"));
    CHECK(verdict["passed"] == true);

    cfg.output.dir = scratch("verify_fault");
    CHECK(cmd_verify(cfg, VerifyOptions{true}, out, err) == kCheckFailed);
    const auto broken = nlohmann::json::parse(slurp(cfg.output.dir / "verify.json"));
    CHECK(broken["passed"] == false);
    CHECK(err.str().find("conservation") != std::string::npos);
  }
  SUBCASE("lemma battery on a few fields") {
    RunConfig cfg = parse_config(R"({"verify": {"checks": ["lemma1"], "n_fields": 3}})");
    cfg.output.dir = scratch("verify_lemma");
    CHECK(cmd_verify(cfg, {}, out, err) == kOk);
  }
}

TEST_CASE("annulus table") {
  std::ostringstream out, err;
  CHECK(cmd_annulus(annulus::AnnulusSpec{1, 2, 64, 64}, out, err) == kOk);
  CHECK(out.str().rfind("R1,R2,enstrophy,h1_seminorm_sq,analytic,relative_error\n", 0) == 0);
}
