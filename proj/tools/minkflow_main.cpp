#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "minkflow/commands.hpp"
#include "minkflow/errors.hpp"

using namespace minkflow;

namespace {

struct CommonArgs {
  std::string config_path;
  CliOverrides overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "run configuration file")
      ->required();
  cmd->add_option("--out", args.overrides.out_dir, "output directory");
  cmd->add_option("--n", args.overrides.n, "grid size override");
  cmd->add_option("--cfl", args.overrides.cfl, "CFL factor override");
  cmd->add_option("--stop-area-frac", args.overrides.stop_area_frac,
                  "area stopping fraction override");
  cmd->add_option("--stop-kmax", args.overrides.stop_kmax,
                  "curvature stopping threshold override");
}

int load_and_dispatch(const CommonArgs& args, int (*cmd)(const RunConfig&)) {
  RunConfig cfg;
  try {
    cfg = parse_config_file(args.config_path);
    CliOverrides ovr = args.overrides;
    if (ovr.out_dir.empty()) {
      const char* env = std::getenv("MINKFLOW_OUT");
      if (env && *env) ovr.out_dir = env;
    }
    apply_overrides(cfg, ovr);
  } catch (const std::exception& e) {
    std::cerr << "minkflow: " << args.config_path << ": " << e.what() << "\n";
    return 1;
  }
  return cmd(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curve evolution by Minkowskian curvature in time-dependent "
               "Minkowski planes"};
  app.require_subcommand(1);

  CommonArgs run_args, blowup_args, verify_args;
  CLI::App* run = app.add_subcommand("run", "evolve a curve and write the "
                                            "trace and snapshots");
  add_common(run, run_args);
  CLI::App* blowup = app.add_subcommand(
      "blowup-study", "compare terminal times against the extinction bound");
  add_common(blowup, blowup_args);
  CLI::App* verify = app.add_subcommand(
      "verify", "evolve and check every evolution identity and bound");
  add_common(verify, verify_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (run->parsed()) return load_and_dispatch(run_args, cmd_run);
  if (blowup->parsed()) return load_and_dispatch(blowup_args, cmd_blowup_study);
  return load_and_dispatch(verify_args, cmd_verify);
}
