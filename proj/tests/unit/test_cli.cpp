#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "io.hpp"
#include "kinetic/error.hpp"
#include "kinetic/parallel.hpp"
#include "kinetic/snapshot.hpp"
#include "scenario.hpp"

using namespace kinetic;
using namespace kinetic::app;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"({
  "grid": {"dim": 1, "cells": [8], "extent": [1.0], "shells": 2, "angles": 8, "s_max": 2.0},
  "kernel": {"profile": "forward-peaked", "kappa": 2.0, "lambda": 1.0},
  "damping": {"kind": "linear", "c": 0.5},
  "picard": {"horizon": 0.2, "steps": 8},
  "initial": {"generator": "gaussian-beam"}
})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("kinetic_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string config_error(const std::string& text) {
  try {
    validate(parse_config(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("config errors name the offending field") {
  CHECK(config_error(kSmall).empty());
  CHECK(config_error(R"({"grid": {"cellz": [8]}})").find("grid.cellz") != std::string::npos);
  CHECK(config_error(R"({"grid": {"shells": "six"}})").find("grid.shells") != std::string::npos);
  CHECK(config_error(R"({"picard": {"max_iter": 0}})").find("picard") != std::string::npos);
  CHECK(config_error(R"({"grid": {"angles": 6}})").find("angles") != std::string::npos);
  CHECK(config_error(R"({"kernel": {"profile": "henyey"}})").find("kernel.profile") != std::string::npos);
  CHECK(config_error(R"({"damping": {"kind": "linear", "c": -1}})").find("damping") != std::string::npos);
  CHECK(config_error(R"({"bogus": 1})").find("bogus") != std::string::npos);
  const std::string syntax = config_error("{\n  \"grid\": {\n    \"dim\": 1,,\n  }\n}");
  CHECK(syntax.find("line 3") != std::string::npos);
}

TEST_CASE("config checksum is stable and sensitive") {
  const RunConfig a = parse_config(kSmall);
  const RunConfig b = parse_config(kSmall);
  CHECK(a.checksum() == b.checksum());
  CHECK(a.checksum().size() == 16);
  // Formatting does not matter; values do.
  const RunConfig c = parse_config(parse_config(kSmall).canonical());
  CHECK(c.checksum() == a.checksum());
  std::string changed = kSmall;
  changed.replace(changed.find("\"steps\": 8"), 10, "\"steps\": 9");
  CHECK(parse_config(changed).checksum() != a.checksum());
}

TEST_CASE("shipped configs parse and validate") {
  for (const auto& entry : fs::directory_iterator(KINETIC_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path());
    CHECK_NOTHROW(validate(load_config(entry.path())));
  }
}

TEST_CASE("coarsened configs halve cells and steps") {
  RunConfig cfg = parse_config(kSmall);
  const RunConfig half = coarsened(cfg, 2);
  CHECK(half.grid.cells[0] == 4);
  CHECK(half.picard.steps == 4);
  CHECK(half.picard.horizon == cfg.picard.horizon);
  CHECK_THROWS_AS(coarsened(cfg, 16), ConfigError);
}

TEST_CASE("verify-kernel: passes for a normalized kernel, fails loudly for a defect") {
  const RunConfig cfg = parse_config(kSmall);
  const auto dir = scratch("kernel");
  std::ostringstream log;
  CHECK(cmd_verify_kernel(cfg, dir, log) == 0);
  CHECK(fs::exists(dir / "h_law.csv"));
  std::ostringstream bad_log;
  const int code = cmd_verify_kernel(cfg, dir, bad_log, [](const ScatteringKernel& K) {
    std::vector<double> raw(K.matrix().begin(), K.matrix().end());
    for (auto& v : raw) v *= 1.01;
    return ScatteringKernel(std::make_shared<const VelocityGrid>(K.grid()), std::move(raw), K.lambda());
  });
  CHECK(code == 1);
  CHECK(bad_log.str().find("normalization_defect") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("run is deterministic across reruns and thread counts; reports read back") {
  const RunConfig cfg = parse_config(kSmall);
  const auto a = scratch("run_a");
  const auto b = scratch("run_b");
  std::ostringstream log;
  set_worker_count(1);
  REQUIRE(cmd_run(cfg, a, log) == 0);
  set_worker_count(3);
  REQUIRE(cmd_run(cfg, b, log) == 0);
  set_worker_count(0);
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), a);
    CAPTURE(rel);
    REQUIRE(fs::exists(b / rel));
    CHECK(slurp(entry.path()) == slurp(b / rel));
    ++compared;
  }
  CHECK(compared > 10);

  // Every CSV row starts with the config checksum.
  std::ifstream csv(a / "energy_ledger.csv");
  std::string line;
  std::getline(csv, line);
  while (std::getline(csv, line)) CHECK(line.rfind(cfg.checksum() + ",", 0) == 0);

  CHECK(cmd_energy_report(a / "picard", a / "report", log) == 0);
  CHECK(fs::exists(a / "report" / "energy_report.csv"));
  CHECK(cmd_weak_form(a / "picard", a / "report", log) >= 0);
  CHECK(fs::exists(a / "report" / "weak_form.csv"));

  const StoredTrajectory st = read_trajectory(a / "picard");
  CHECK(st.info.config_checksum == cfg.checksum());
  CHECK(st.trajectory.size() == cfg.picard.steps + 1);
  CHECK(st.kernel.lambda() == cfg.kernel.lambda);

  CHECK_THROWS_AS(read_trajectory(a / "nowhere"), KineticError);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("from-snapshot initial data reproduces the stored field") {
  const RunConfig cfg = parse_config(kSmall);
  const Scenario sc = build_scenario(cfg);
  const auto dir = scratch("snap");
  write_snapshot(sc.initial, dir / "f0");
  std::ofstream(dir / "cfg.json") << R"({
  "grid": {"dim": 1, "cells": [8], "extent": [1.0], "shells": 2, "angles": 8, "s_max": 2.0},
  "picard": {"horizon": 0.2, "steps": 8},
  "initial": {"generator": "from-snapshot", "snapshot": "f0"}
})";
  const Scenario back = build_scenario(load_config(dir / "cfg.json"));
  REQUIRE(back.initial.values().size() == sc.initial.values().size());
  for (std::size_t k = 0; k < sc.initial.values().size(); ++k) CHECK(back.initial.values()[k] == sc.initial.values()[k]);
  fs::remove_all(dir);
}

TEST_CASE("convergence needs at least two levels") {
  const RunConfig cfg = parse_config(kSmall);
  CHECK_THROWS_AS(convergence_study(cfg, 1), ConfigError);
  const auto study = convergence_study(cfg, 2);
  CHECK(study.levels.size() == 2);
  CHECK(study.levels[0].cells[0] == 4);
  CHECK(study.levels[1].cells[0] == 8);
  CHECK_FALSE(study.orders.empty());
}

namespace {

int cli(const std::string& args) {
  const std::string cmd = std::string(KINETIC_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("binary exit codes") {
  const auto dir = scratch("exit");
  std::ofstream(dir / "small.json") << kSmall;
  std::ofstream(dir / "broken.json") << R"({"grid": {"dim": 7}})";
  std::ofstream(dir / "stubborn.json") << R"({
  "grid": {"dim": 1, "cells": [8], "extent": [1.0], "shells": 2, "angles": 8},
  "kernel": {"lambda": 2.0},
  "picard": {"horizon": 0.5, "steps": 8, "max_iter": 1}
})";
  const std::string out = " --out " + (dir / "out").string();
  CHECK(cli("--config " + (dir / "small.json").string() + out + " verify-kernel") == 0);
  CHECK(cli("--config " + (dir / "small.json").string() + out + " run") == 0);
  CHECK(cli("--config " + (dir / "broken.json").string() + out + " run") == 2);
  CHECK(cli("--config " + (dir / "missing.json").string() + out + " run") == 2);
  CHECK(cli("--config " + (dir / "stubborn.json").string() + out + " run") == 4);
  CHECK(cli("energy-report " + (dir / "nothing").string()) == 3);
  CHECK(cli("energy-report " + (dir / "out" / "picard").string()) == 0);
  fs::remove_all(dir);
}
