// chrec: simulate / recurrence / verify / annulus front end.
#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "chrec/commands.hpp"
#include "chrec/snapshot_io.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string preset;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON run configuration");
  cmd->add_option("--out", opts.out_dir, "Output directory (overrides output.dir)");
  cmd->add_option("--seed", opts.seed, "Random seed (overrides the preset and verify seeds)");
  cmd->add_option("--preset", opts.preset, "Initial-condition preset, e.g. \"random seed=7 max_mode=4\"");
}

chrec::RunConfig resolve(const CommonOptions& opts) {
  chrec::RunConfig cfg = opts.config_path.empty() ? chrec::parse_config("{}") : chrec::load_config(opts.config_path);
  if (!opts.preset.empty()) cfg.initial = chrec::PresetSpec::parse(opts.preset);
  if (opts.seed) chrec::override_seed(cfg, *opts.seed);
  if (!opts.out_dir.empty()) cfg.output.dir = opts.out_dir;
  chrec::validate(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace chrec::cli;
  CLI::App app{"2D inviscid channel flow: simulation, invariants and recurrence detection"};
  app.require_subcommand(1);

  CommonOptions sim_opts, rec_opts, ver_opts;
  auto* simulate = app.add_subcommand("simulate", "Run the solver and write diagnostics.csv");
  add_common(simulate, sim_opts);
  auto* recurrence = app.add_subcommand("recurrence", "Sample the orbit and build a delta-cover");
  add_common(recurrence, rec_opts);
  auto* verify = app.add_subcommand("verify", "Run the invariant check battery");
  add_common(verify, ver_opts);
  VerifyOptions verify_options;
  verify->add_flag("--break-dealias", verify_options.break_dealias,
                   "Inject a dealiasing defect into the conservation run");

  chrec::annulus::AnnulusSpec annulus_spec;
  auto* annulus = app.add_subcommand("annulus", "Point-vortex contrast on an annulus");
  annulus->add_option("--R1", annulus_spec.r1, "Inner radius");
  annulus->add_option("--R2", annulus_spec.r2, "Outer radius");
  annulus->add_option("--n-r", annulus_spec.n_r, "Radial Simpson intervals (even)");
  annulus->add_option("--n-theta", annulus_spec.n_theta, "Angular nodes");

  auto* inspect = app.add_subcommand("inspect", "Print the header of a snapshot file");
  std::string snapshot_path;
  inspect->add_option("file", snapshot_path, "Snapshot file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*simulate) return cmd_simulate(resolve(sim_opts), std::cout, std::cerr);
    if (*recurrence) return cmd_recurrence(resolve(rec_opts), std::cout, std::cerr);
    if (*verify) return cmd_verify(resolve(ver_opts), verify_options, std::cout, std::cerr);
    if (*annulus) return cmd_annulus(annulus_spec, std::cout, std::cerr);
    if (*inspect) {
      const auto snap = chrec::read_snapshot(snapshot_path);
      const auto& g = snap.velocity.grid();
      std::cout << "t " << format_double(snap.t) << "\ngrid " << g.describe() << "\n";
      return kOk;
    }
  } catch (const chrec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const chrec::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kConfigError;
  } catch (const chrec::NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return kNumericalAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}
