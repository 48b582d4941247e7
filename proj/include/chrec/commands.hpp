#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chrec/annulus.hpp"
#include "chrec/config.hpp"
#include "chrec/diagnostics.hpp"
#include "chrec/recurrence.hpp"

namespace chrec::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericalAbort = 2, kCheckFailed = 3 };

inline constexpr const char* kDiagnosticsHeader = "t,E,G,mean_u,mean_v,lemma1_residual,h1_seminorm_sq";
inline constexpr const char* kClosestReturnHeader = "m,t,distance,running_min";

/// Shortest decimal text that round-trips the double.
std::string format_double(double value);
std::string diagnostics_row(const DiagnosticsRecord& r);

/// Initial reduced state for a config's preset.
State initial_state(const RunConfig& config);

/// Writes diagnostics.csv (and snapshots when requested) under config.output.dir.
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Writes diagnostics.csv, cover.json and closest_return.csv.
int cmd_recurrence(const RunConfig& config, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  bool break_dealias = false;
};

/// Runs the configured check battery and writes verify.json.
int cmd_verify(const RunConfig& config, const VerifyOptions& options, std::ostream& out, std::ostream& err);

/// Prints R1, R2, enstrophy, h1_seminorm_sq, analytic value, relative error.
int cmd_annulus(const annulus::AnnulusSpec& spec, std::ostream& out, std::ostream& err);

/// Observed convergence order of the engine's Lemma-1 residual for one series
/// across N_y, 2 N_y - 1, 4 N_y - 3 at fixed N_x.
struct Lemma1Convergence {
  std::vector<int> ny;
  std::vector<double> residual;
  std::vector<double> order;
  bool hypotheses_hold = true;
};
Lemma1Convergence lemma1_convergence(const StreamfunctionSeries& series, const GridSpec& base);

}  // namespace chrec::cli
