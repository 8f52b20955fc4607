#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "alphapi/cli.hpp"
#include "alphapi/config.hpp"
#include "alphapi/errors.hpp"

using namespace alphapi;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config: parse, typed access, round-trip") {
  const std::string text =
      "[game]\n"
      "gamma = 2.5   # comment\n"
      "r_diag = 1 2\n"
      "A = 0 1; -1 -1\n"
      "[learner]\n"
      "seed = 42\n"
      "use_thing = true\n";
  const Config cfg = Config::parse(text);
  CHECK(cfg.get_double("game.gamma", 0.0) == 2.5);
  CHECK(cfg.get_vector("game.r_diag", Eigen::VectorXd())[1] == 2.0);
  const Eigen::MatrixXd A = cfg.get_matrix("game.A", Eigen::MatrixXd());
  CHECK(A(1, 0) == -1.0);
  CHECK(cfg.get_u64("learner.seed", 0) == 42);
  CHECK(cfg.get_bool("learner.use_thing", false));
  CHECK(cfg.get_double("learner.missing", 7.5) == 7.5);

  const Config back = Config::parse(cfg.to_text());
  CHECK(back.get_double("game.gamma", 0.0) == 2.5);
  CHECK(back.get_matrix("game.A", Eigen::MatrixXd())(0, 1) == 1.0);

  CHECK_THROWS_AS(Config::parse("novalue\n"), ConfigError);
  CHECK_THROWS_AS(cfg.get_double("game.r_diag", 0.0), ConfigError);
}

TEST_CASE("oracle command: scalar instance hits the closed form") {
  TempDir tmp("alphapi_cli_oracle");
  Config cfg;
  cfg.set_matrix("game.A", Eigen::MatrixXd::Constant(1, 1, -1.0));
  cfg.set_matrix("game.B", Eigen::MatrixXd::Constant(1, 1, 1.0));
  cfg.set_matrix("game.D", Eigen::MatrixXd::Constant(1, 1, 0.0));
  cfg.set_matrix("game.Qm", Eigen::MatrixXd::Constant(1, 1, 1.0));
  cfg.set_double("game.gamma", 2.0);
  cfg.set_int("learner.windows", 30);

  const int rc = cmd_oracle(cfg, (tmp.path / "out").string());
  CHECK(rc == kExitOk);

  const Config manifest = Config::load_file((tmp.path / "out" / "manifest.txt").string());
  const Eigen::MatrixXd P =
      manifest.get_matrix("result.P_oracle", Eigen::MatrixXd());
  CHECK(P(0, 0) == doctest::Approx(0.4142136).epsilon(1e-6));
  CHECK(manifest.get_double("result.max_abs_delta", 1.0) <= 1e-3);
}

TEST_CASE("oracle command: default 2-state instance delta within 1e-3") {
  TempDir tmp("alphapi_cli_oracle2");
  const int rc = cmd_oracle(Config(), (tmp.path / "out").string());
  CHECK(rc == kExitOk);
  const Config manifest = Config::load_file((tmp.path / "out" / "manifest.txt").string());
  CHECK(manifest.get_double("result.max_abs_delta", 1.0) <= 1e-3);
}

TEST_CASE("oracle command: infeasible attenuation level exits 3") {
  TempDir tmp("alphapi_cli_oracle3");
  Config cfg;
  cfg.set_matrix("game.A", Eigen::MatrixXd::Constant(1, 1, -1.0));
  cfg.set_matrix("game.B", Eigen::MatrixXd::Constant(1, 1, 1.0));
  cfg.set_matrix("game.D", Eigen::MatrixXd::Constant(1, 1, 1.0));
  cfg.set_matrix("game.Qm", Eigen::MatrixXd::Constant(1, 1, 1.0));
  cfg.set_double("game.gamma", 0.2);
  CHECK(cmd_oracle(cfg, (tmp.path / "out").string()) == kExitInfeasible);
}

TEST_CASE("example-a command: artifacts, convergence, reproducibility") {
  TempDir tmp("alphapi_cli_exa");
  Config cfg;
  cfg.set_u64("learner.seed", 1);

  const int rc1 = cmd_example_a(cfg, (tmp.path / "run1").string());
  CHECK(rc1 == kExitOk);
  for (const char* name : {"weights_per_iter.csv", "trajectory.csv", "inputs.csv",
                           "attenuation.csv", "manifest.txt"})
    CHECK(fs::exists(tmp.path / "run1" / name));

  const Config manifest =
      Config::load_file((tmp.path / "run1" / "manifest.txt").string());
  CHECK(manifest.get_bool("result.converged", false));
  CHECK(manifest.get_double("result.final_attenuation", 10.0) <= 0.7);

  // Re-running the manifest reproduces every CSV byte for byte.
  const Config again =
      Config::load_file((tmp.path / "run1" / "manifest.txt").string());
  const int rc2 = cmd_example_a(again, (tmp.path / "run2").string());
  CHECK(rc2 == kExitOk);
  for (const char* name : {"weights_per_iter.csv", "trajectory.csv", "inputs.csv",
                           "attenuation.csv", "manifest.txt"})
    CHECK(slurp(tmp.path / "run1" / name) == slurp(tmp.path / "run2" / name));
}

TEST_CASE("collect + solve commands round-trip through dataset.txt") {
  TempDir tmp("alphapi_cli_collect");
  Config ccfg;
  ccfg.set_u64("collect.seed", 5);
  ccfg.set_int("collect.windows", 50);
  CHECK(cmd_collect(ccfg, (tmp.path / "cap").string()) == kExitOk);
  CHECK(fs::exists(tmp.path / "cap" / "dataset.txt"));

  Config scfg;
  scfg.set_string("solve.dataset", (tmp.path / "cap" / "dataset.txt").string());
  scfg.set_double("solve.alpha", 0.3);
  CHECK(cmd_solve(scfg, (tmp.path / "sol").string()) == kExitOk);
  CHECK(fs::exists(tmp.path / "sol" / "weights_per_iter.csv"));

  const Config manifest =
      Config::load_file((tmp.path / "sol" / "manifest.txt").string());
  CHECK(manifest.get_bool("result.converged", false));
}
