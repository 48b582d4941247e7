#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chrec/euler.hpp"
#include "chrec/presets.hpp"

namespace chrec {

struct GridSpec {
  double length_x = 6.283185307179586;  // 2 pi
  double a = 0;
  double b = 3.141592653589793;  // pi
  int nx = 64;
  int ny = 65;

  ChannelGrid make() const { return ChannelGrid(length_x, a, b, nx, ny); }
};

struct RecurrenceSpec {
  std::optional<double> period;          ///< "T"
  std::optional<double> eddy_turnovers;  ///< total span (M-1) T in units of L_x / u_rms
  int samples = 0;                       ///< "M"
  std::optional<double> delta;
  std::optional<double> delta_rel;  ///< fraction of the initial reduced velocity norm
};

struct OutputSpec {
  std::filesystem::path dir = "out";
  int snapshot_every = 0;  ///< simulate: write a snapshot every N steps (0 = never)
  bool write_samples = false;  ///< recurrence: write every orbit sample as a snapshot
};

struct VerifySpec {
  std::vector<std::string> checks{"lemma1", "tail_bound", "conservation"};
  int n_fields = 100;
  std::uint64_t seed = 1;
  int max_mode = 6;
  std::vector<int> tail_cutoffs{1, 2, 4, 8, 16};
  double lemma1_order_min = 1.8;
  /// Streamfunction-generated fields superconverge (wall stencils dominate at third order).
  double lemma1_order_max = 3.5;
  std::string conservation_preset = "random seed=3 max_mode=6 amplitude=0.25";
  GridSpec conservation_grid{6.283185307179586, 0, 3.141592653589793, 32, 65};
  double conservation_t_end = 2;
  double energy_tolerance = 1e-3;
  double enstrophy_tolerance = 1e-2;
};

struct RunConfig {
  GridSpec grid;
  SolverConfig solver;
  std::optional<RecurrenceSpec> recurrence;
  PresetSpec initial{"shear", {}};
  OutputSpec output;
  VerifySpec verify;
};

/// Strict parse of a JSON config: unknown keys, wrong types and out-of-range
/// values raise ConfigError naming the offending field.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Replaces the seed of the initial preset (when it takes one) and of the verify battery.
void override_seed(RunConfig& config, std::uint64_t seed);

/// Checks the cross-field invariants once more after command-line overrides.
void validate(const RunConfig& config);

}  // namespace chrec
