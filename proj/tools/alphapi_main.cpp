#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "alphapi/cli.hpp"
#include "alphapi/errors.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::string format = "csv";
  double alpha = -1.0;           // < 0 means "not set"
  long long seed = -1;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
  sub->add_option("--config", opts.config_path, "configuration file (key = value)");
  sub->add_option("--out-dir", opts.out_dir, "output directory for CSV artifacts");
  sub->add_option("--format", opts.format, "output format (csv)")
      ->check(CLI::IsMember({"csv"}));
  sub->add_option("--alpha", opts.alpha, "override the damping step in (0, 1]");
  sub->add_option("--seed", opts.seed, "override the RNG seed");
}

alphapi::Config build_config(const CommonOpts& opts, const std::string& section) {
  alphapi::Config cfg;
  if (!opts.config_path.empty())
    cfg = alphapi::Config::load_file(opts.config_path);
  if (opts.alpha >= 0.0) cfg.set_double(section + ".alpha", opts.alpha);
  if (opts.seed >= 0) cfg.set_u64(section + ".seed", static_cast<std::uint64_t>(opts.seed));
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data-driven H-infinity control: damped policy iteration "
               "learners and benchmark experiments"};
  app.require_subcommand(1);

  CommonOpts ex_opts, mi_opts, or_opts, co_opts, so_opts;
  CLI::App* ex = app.add_subcommand("example-a", "nonlinear benchmark experiment");
  add_common(ex, ex_opts);
  CLI::App* mi = app.add_subcommand("missile", "interception experiment");
  add_common(mi, mi_opts);
  CLI::App* orc = app.add_subcommand("oracle", "linear-game verification");
  add_common(orc, or_opts);
  CLI::App* co = app.add_subcommand("collect", "standalone dataset capture");
  add_common(co, co_opts);
  CLI::App* so = app.add_subcommand("solve", "off-policy solve on a stored dataset");
  add_common(so, so_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (ex->parsed())
      return alphapi::cmd_example_a(build_config(ex_opts, "learner"), ex_opts.out_dir);
    if (mi->parsed())
      return alphapi::cmd_missile(build_config(mi_opts, "engagement"), mi_opts.out_dir);
    if (orc->parsed())
      return alphapi::cmd_oracle(build_config(or_opts, "learner"), or_opts.out_dir);
    if (co->parsed())
      return alphapi::cmd_collect(build_config(co_opts, "collect"), co_opts.out_dir);
    if (so->parsed())
      return alphapi::cmd_solve(build_config(so_opts, "solve"), so_opts.out_dir);
  } catch (const alphapi::GammaTooSmallError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return alphapi::kExitInfeasible;
  } catch (const alphapi::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return alphapi::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return alphapi::kExitUsage;
  }
  return alphapi::kExitUsage;
}
