#include "chrec/commands.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "chrec/snapshot_io.hpp"

namespace chrec::cli {

using nlohmann::ordered_json;

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string diagnostics_row(const DiagnosticsRecord& r) {
  std::string row;
  for (double v : {r.t, r.E, r.G, r.mean_u, r.mean_v, r.lemma1_residual, r.h1_seminorm_sq}) {
    if (!row.empty()) row += ',';
    row += format_double(v);
  }
  return row;
}

State initial_state(const RunConfig& config) {
  const ChannelGrid grid = config.grid.make();
  const InitialCondition ic = make_initial(grid, config.initial);
  return State{0.0, ic.omega, ic.mean_u};
}

namespace {

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_text(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
  return os;
}

std::string snapshot_name(const char* prefix, long index) {
  std::ostringstream os;
  os << prefix << std::setw(6) << std::setfill('0') << index << ".bin";
  return os.str();
}

}  // namespace

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  State initial = initial_state(config);
  prepare_dir(config.output.dir);
  auto csv = open_text(config.output.dir / "diagnostics.csv");
  csv << kDiagnosticsHeader << '\n';

  std::vector<DiagnosticsRecord> records;
  RunSinks sinks;
  sinks.on_record = [&](const DiagnosticsRecord& r) {
    records.push_back(r);
    csv << diagnostics_row(r) << '\n';
  };
  if (config.output.snapshot_every > 0) {
    sinks.on_step = [&](long step, const State& s) {
      if (step % config.output.snapshot_every != 0) return;
      VectorField lab = velocity_from_vorticity(s.omega);
      lab.u().values() += s.mean_u;
      write_snapshot(config.output.dir / snapshot_name("snapshot_", step), lab, s.t);
    };
  }

  try {
    run(initial, config.solver, sinks);
  } catch (const NumericalAbort& e) {
    csv.flush();
    err << "numerical abort: " << e.what() << '\n';
    return kNumericalAbort;
  }
  const auto summary = conservation_report(records, config.grid.make().area());
  out << "rows " << records.size() << "\n"
      << "max_drift_E " << format_double(summary.max_drift_E) << "\n"
      << "max_drift_G " << format_double(summary.max_drift_G) << "\n"
      << "max_drift_mean_u " << format_double(summary.max_drift_mean_u) << "\n"
      << "max_abs_mean_v " << format_double(summary.max_abs_mean_v) << "\n";
  return kOk;
}

int cmd_recurrence(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.recurrence) throw ConfigError("recurrence: config has no recurrence block");
  const RecurrenceSpec& spec = *config.recurrence;
  const State initial = initial_state(config);
  const ChannelGrid grid = initial.omega.grid();

  const VectorField v0 = velocity_from_vorticity(initial.omega);
  const double norm0 = l2_norm(v0);
  RecurrenceConfig rc;
  rc.samples = spec.samples;
  if (spec.period) {
    rc.period = *spec.period;
  } else {
    const double rms = std::sqrt(kinetic_energy(v0) / grid.area());
    if (!(rms > 0)) throw ConfigError("recurrence.eddy_turnovers needs a moving initial state");
    const double span = *spec.eddy_turnovers * grid.length_x() / rms;
    rc.period = span / std::max(1, spec.samples - 1);
  }
  rc.delta = spec.delta ? *spec.delta : *spec.delta_rel * norm0;
  if (!(rc.delta > 0)) throw ConfigError("recurrence: delta_rel of a zero initial field gives delta = 0");
  rc.validate();

  prepare_dir(config.output.dir);
  auto csv = open_text(config.output.dir / "diagnostics.csv");
  csv << kDiagnosticsHeader << '\n';
  RunSinks sinks;
  sinks.on_record = [&](const DiagnosticsRecord& r) { csv << diagnostics_row(r) << '\n'; };
  if (config.output.write_samples) {
    sinks.on_sample = [&](std::size_t m, const State& s, const VectorField& vel) {
      write_snapshot(config.output.dir / snapshot_name("sample_", static_cast<long>(m)), vel, s.t);
    };
  }
  const SnapshotStore store = sample_trajectory(initial, rc, config.solver, sinks);
  csv.flush();

  const CoverNet net = build_cover(store, rc.delta);
  const CoverAudit audit = audit_cover(store, net);
  const auto returns = detect_returns(net, 2);
  const std::size_t bound = pigeonhole_bound(store.size(), net.balls.size());
  const bool pigeonhole_holds = net.max_visits() >= bound;

  const double g0 = store.size() ? store[0].G : 0;
  bool confined = true;
  for (const auto& s : store.samples()) confined = confined && s.G <= 2 * g0 * (1 + 1e-6);

  ordered_json cover;
  cover["delta"] = rc.delta;
  cover["T"] = rc.period;
  cover["M"] = rc.samples;
  cover["n_samples"] = store.size();
  cover["initial_norm"] = norm0;
  cover["n_centers"] = net.balls.size();
  cover["max_visits"] = net.max_visits();
  cover["pigeonhole_bound"] = bound;
  cover["pigeonhole_holds"] = pigeonhole_holds;
  cover["audit"] = {{"covers_all", audit.covers_all},
                    {"within_radius", audit.within_radius},
                    {"separated", audit.separated},
                    {"max_member_distance", audit.max_member_distance},
                    {"min_center_separation",
                     std::isfinite(audit.min_center_separation) ? ordered_json(audit.min_center_separation)
                                                                : ordered_json(nullptr)}};
  cover["enstrophy_confined"] = confined;
  ordered_json centers = ordered_json::array();
  for (const auto& ball : net.balls) centers.push_back({{"center", ball.center}, {"visits", ball.visits}});
  cover["centers"] = centers;
  ordered_json rets = ordered_json::array();
  for (const auto& ball : returns) rets.push_back({{"center", ball.center}, {"visits", ball.visits}});
  cover["returns"] = rets;
  cover["error"] = store.error() ? ordered_json(*store.error()) : ordered_json(nullptr);
  open_text(config.output.dir / "cover.json") << cover.dump(2) << '\n';

  auto curve_csv = open_text(config.output.dir / "closest_return.csv");
  curve_csv << kClosestReturnHeader << '\n';
  if (store.size() > 1) {
    for (const auto& p : closest_return_curve(store, 0))
      curve_csv << p.m << ',' << format_double(p.t) << ',' << format_double(p.distance) << ','
                << format_double(p.running_min) << '\n';
  }

  out << "samples " << store.size() << "\n"
      << "delta " << format_double(rc.delta) << "\n"
      << "centers " << net.balls.size() << "\n"
      << "pigeonhole: max_visits = " << net.max_visits() << " >= ceil(M/N_centers) = " << bound << " : "
      << (pigeonhole_holds ? "true" : "false") << "\n"
      << "cover audit: " << (audit.ok() ? "pass" : "FAIL") << "\n";
  for (const auto& ball : returns) {
    out << "return ball " << ball.center << ": m_j =";
    for (int m : ball.visits) out << ' ' << m;
    out << '\n';
  }
  if (store.error()) {
    err << "numerical abort: " << *store.error() << '\n';
    return kNumericalAbort;
  }
  return kOk;
}

Lemma1Convergence lemma1_convergence(const StreamfunctionSeries& series, const GridSpec& base) {
  Lemma1Convergence c;
  for (int level = 0; level < 3; ++level) {
    const int ny = (base.ny - 1) * (1 << level) + 1;
    const ChannelGrid grid(base.length_x, base.a, base.b, base.nx, ny);
    const auto result = lemma1_check(series.sample_velocity(grid));
    c.ny.push_back(ny);
    c.residual.push_back(result.residual);
    c.hypotheses_hold = c.hypotheses_hold && result.hypotheses_hold;
  }
  for (std::size_t i = 1; i < c.residual.size(); ++i)
    c.order.push_back(std::log2(c.residual[i - 1] / c.residual[i]));
  return c;
}

int cmd_verify(const RunConfig& config, const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  const VerifySpec& spec = config.verify;
  const bool needs_fields = std::any_of(spec.checks.begin(), spec.checks.end(),
                                        [](const std::string& c) { return c != "conservation"; });
  const bool has_conservation =
      std::find(spec.checks.begin(), spec.checks.end(), "conservation") != spec.checks.end();
  if (spec.checks.empty() || (needs_fields && spec.n_fields == 0 && !has_conservation))
    throw ConfigError("no checks requested");
  prepare_dir(config.output.dir);

  const GridSpec& g = config.grid;
  std::vector<StreamfunctionSeries> battery;
  for (int f = 0; f < spec.n_fields; ++f)
    battery.push_back(random_streamfunction(g.length_x, g.a, g.b, spec.seed + static_cast<std::uint64_t>(f),
                                            spec.max_mode, 1.0));

  ordered_json verdicts = ordered_json::array();
  bool all_passed = true;
  auto report = [&](const std::string& name, bool passed, ordered_json detail) {
    verdicts.push_back({{"name", name}, {"passed", passed}, {"detail", std::move(detail)}});
    out << name << ": " << (passed ? "pass" : "FAIL") << '\n';
    if (!passed) err << "check failed: " << name << '\n';
    all_passed = all_passed && passed;
  };

  for (const auto& check : spec.checks) {
    if (check == "lemma1") {
      if (2 * spec.max_mode >= g.nx) throw ConfigError("verify.max_mode must stay below N_x/2");
      double worst_low = INFINITY, worst_high = -INFINITY, worst_residual = 0;
      int flagged = 0;
      for (const auto& series : battery) {
        const auto conv = lemma1_convergence(series, g);
        for (double o : conv.order) {
          worst_low = std::min(worst_low, o);
          worst_high = std::max(worst_high, o);
        }
        worst_residual = std::max(worst_residual, conv.residual.front());
        if (!conv.hypotheses_hold) ++flagged;
      }
      const bool passed = !battery.empty() && flagged == 0 && worst_low >= spec.lemma1_order_min &&
                          worst_high <= spec.lemma1_order_max;
      report("lemma1", passed,
             {{"fields", battery.size()},
              {"min_order", battery.empty() ? ordered_json(nullptr) : ordered_json(worst_low)},
              {"max_order", battery.empty() ? ordered_json(nullptr) : ordered_json(worst_high)},
              {"max_residual_coarse", worst_residual},
              {"hypothesis_flags", flagged}});
    } else if (check == "tail_bound") {
      const ChannelGrid grid = g.make();
      long evaluated = 0, failures = 0;
      for (const auto& series : battery) {
        const VectorField vel = series.sample_velocity(grid);
        for (int cutoff : spec.tail_cutoffs) {
          if (2 * cutoff >= grid.nx()) continue;
          ++evaluated;
          if (!tail_bound_check(vel, cutoff).holds) ++failures;
        }
      }
      report("tail_bound", evaluated > 0 && failures == 0,
             {{"evaluated", evaluated}, {"failures", failures}});
    } else if (check == "conservation") {
      RunConfig run_cfg = config;
      run_cfg.grid = spec.conservation_grid;
      run_cfg.initial = PresetSpec::parse(spec.conservation_preset);
      run_cfg.solver.t_end = spec.conservation_t_end;
      run_cfg.solver.dealias = true;
      run_cfg.solver.fault = options.break_dealias ? DealiasFault::skip_velocity_filter : DealiasFault::none;
      std::vector<DiagnosticsRecord> records;
      RunSinks sinks;
      sinks.on_record = [&](const DiagnosticsRecord& r) { records.push_back(r); };
      std::string abort_message;
      try {
        run(initial_state(run_cfg), run_cfg.solver, sinks);
      } catch (const NumericalAbort& e) {
        abort_message = e.what();
      }
      const auto s = conservation_report(records, run_cfg.grid.make().area());
      const bool passed = abort_message.empty() && s.max_drift_E <= spec.energy_tolerance &&
                          s.max_drift_G <= spec.enstrophy_tolerance;
      report("conservation", passed,
             {{"preset", run_cfg.initial.to_string()},
              {"fault_injected", options.break_dealias},
              {"max_drift_E", s.max_drift_E},
              {"max_drift_G", s.max_drift_G},
              {"max_drift_mean_u", s.max_drift_mean_u},
              {"max_abs_mean_v", s.max_abs_mean_v},
              {"energy_tolerance", spec.energy_tolerance},
              {"enstrophy_tolerance", spec.enstrophy_tolerance},
              {"abort", abort_message.empty() ? ordered_json(nullptr) : ordered_json(abort_message)}});
    }
  }

  ordered_json verdict{{"passed", all_passed}, {"checks", verdicts}};
  open_text(config.output.dir / "verify.json") << verdict.dump(2) << '\n';
  return all_passed ? kOk : kCheckFailed;
}

int cmd_annulus(const annulus::AnnulusSpec& spec, std::ostream& out, std::ostream&) {
  spec.validate();
  const double g = annulus::pr_enstrophy(spec);
  const double h1 = annulus::pr_h1_seminorm_sq(spec);
  const double exact = annulus::pr_h1_closed_form(spec.r1, spec.r2);
  out << "R1,R2,enstrophy,h1_seminorm_sq,analytic,relative_error\n"
      << format_double(spec.r1) << ',' << format_double(spec.r2) << ',' << format_double(g) << ','
      << format_double(h1) << ',' << format_double(exact) << ',' << format_double(std::abs(h1 - exact) / exact)
      << '\n';
  return kOk;
}

}  // namespace chrec::cli
