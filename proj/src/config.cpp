#include "chrec/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace chrec {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : obj.items())
    if (!keys.contains(item.key()))
      throw ConfigError("unknown key '" + (where.empty() ? "" : where + ".") + item.key() + "'");
}

std::string path_of(const std::string& where, const char* key) {
  return where.empty() ? key : where + "." + key;
}

double number(const json& obj, const std::string& where, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path_of(where, key) + " must be a number");
  return v.get<double>();
}

std::optional<double> optional_number(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  return number(obj, where, key, 0);
}

long long integer(const json& obj, const std::string& where, const char* key, long long fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(path_of(where, key) + " must be an integer");
  return v.get<long long>();
}

bool boolean(const json& obj, const std::string& where, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(path_of(where, key) + " must be true or false");
  return v.get<bool>();
}

std::string string(const json& obj, const std::string& where, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(path_of(where, key) + " must be a string");
  return v.get<std::string>();
}

GridSpec parse_grid(const json& obj, const std::string& where, GridSpec g) {
  reject_unknown(obj, where, {"L_x", "a", "b", "N_x", "N_y"});
  g.length_x = number(obj, where, "L_x", g.length_x);
  g.a = number(obj, where, "a", g.a);
  g.b = number(obj, where, "b", g.b);
  const long long nx = integer(obj, where, "N_x", g.nx);
  const long long ny = integer(obj, where, "N_y", g.ny);
  if (!(g.length_x > 0)) throw ConfigError(where + ".L_x must be positive");
  if (!(g.b > g.a)) throw ConfigError(where + ".b must exceed " + where + ".a");
  if (nx <= 0 || nx % 2 != 0 || nx > (1 << 20)) throw ConfigError(where + ".N_x must be an even positive integer");
  if (ny < 3 || ny > (1 << 20)) throw ConfigError(where + ".N_y must be an integer >= 3");
  g.nx = static_cast<int>(nx);
  g.ny = static_cast<int>(ny);
  return g;
}

SolverConfig parse_solver(const json& obj) {
  reject_unknown(obj, "solver", {"cfl", "fixed_dt", "t_end", "dealias", "record_every"});
  SolverConfig s;
  if (obj.contains("cfl") && obj.contains("fixed_dt"))
    throw ConfigError("solver: give either cfl or fixed_dt, not both");
  s.cfl = number(obj, "solver", "cfl", s.cfl);
  s.fixed_dt = optional_number(obj, "solver", "fixed_dt");
  s.t_end = number(obj, "solver", "t_end", s.t_end);
  s.dealias = boolean(obj, "solver", "dealias", s.dealias);
  const long long every = integer(obj, "solver", "record_every", s.record_every);
  if (every < 1 || every > (1 << 30)) throw ConfigError("solver.record_every must be a positive integer");
  s.record_every = static_cast<int>(every);
  s.validate();
  return s;
}

RecurrenceSpec parse_recurrence(const json& obj) {
  reject_unknown(obj, "recurrence", {"T", "eddy_turnovers", "M", "delta", "delta_rel"});
  RecurrenceSpec r;
  r.period = optional_number(obj, "recurrence", "T");
  r.eddy_turnovers = optional_number(obj, "recurrence", "eddy_turnovers");
  if (r.period.has_value() == r.eddy_turnovers.has_value())
    throw ConfigError("recurrence: give exactly one of T or eddy_turnovers");
  if (r.period && !(*r.period > 0)) throw ConfigError("recurrence.T must be positive");
  if (r.eddy_turnovers && !(*r.eddy_turnovers > 0))
    throw ConfigError("recurrence.eddy_turnovers must be positive");
  const long long m = integer(obj, "recurrence", "M", 0);
  if (m < 1 || m > 1000000) throw ConfigError("recurrence.M must be a positive integer");
  r.samples = static_cast<int>(m);
  r.delta = optional_number(obj, "recurrence", "delta");
  r.delta_rel = optional_number(obj, "recurrence", "delta_rel");
  if (r.delta.has_value() == r.delta_rel.has_value())
    throw ConfigError("recurrence: give exactly one of delta or delta_rel");
  if (r.delta && !(*r.delta > 0)) throw ConfigError("recurrence.delta must be positive");
  if (r.delta_rel && !(*r.delta_rel > 0)) throw ConfigError("recurrence.delta_rel must be positive");
  return r;
}

OutputSpec parse_output(const json& obj) {
  reject_unknown(obj, "output", {"dir", "snapshot_every", "write_samples"});
  OutputSpec o;
  o.dir = string(obj, "output", "dir", o.dir.string());
  const long long every = integer(obj, "output", "snapshot_every", 0);
  if (every < 0 || every > (1 << 30)) throw ConfigError("output.snapshot_every must be >= 0");
  o.snapshot_every = static_cast<int>(every);
  o.write_samples = boolean(obj, "output", "write_samples", false);
  return o;
}

VerifySpec parse_verify(const json& obj) {
  reject_unknown(obj, "verify",
                 {"checks", "n_fields", "seed", "max_mode", "tail_N", "lemma1_order_min", "lemma1_order_max",
                  "conservation_preset", "conservation_grid", "conservation_t_end", "energy_tolerance",
                  "enstrophy_tolerance"});
  VerifySpec v;
  if (obj.contains("checks")) {
    const auto& list = obj.at("checks");
    if (!list.is_array()) throw ConfigError("verify.checks must be an array of names");
    v.checks.clear();
    for (const auto& item : list) {
      if (!item.is_string()) throw ConfigError("verify.checks entries must be strings");
      const auto name = item.get<std::string>();
      if (name != "lemma1" && name != "tail_bound" && name != "conservation")
        throw ConfigError("verify.checks: unknown check '" + name + "'");
      v.checks.push_back(name);
    }
  }
  const long long n = integer(obj, "verify", "n_fields", v.n_fields);
  if (n < 0 || n > 1000000) throw ConfigError("verify.n_fields must be >= 0");
  v.n_fields = static_cast<int>(n);
  const long long seed = integer(obj, "verify", "seed", static_cast<long long>(v.seed));
  if (seed < 0) throw ConfigError("verify.seed must be >= 0");
  v.seed = static_cast<std::uint64_t>(seed);
  const long long mm = integer(obj, "verify", "max_mode", v.max_mode);
  if (mm < 1 || mm > 100000) throw ConfigError("verify.max_mode must be a positive integer");
  v.max_mode = static_cast<int>(mm);
  if (obj.contains("tail_N")) {
    const auto& list = obj.at("tail_N");
    if (!list.is_array()) throw ConfigError("verify.tail_N must be an array of integers");
    v.tail_cutoffs.clear();
    for (const auto& item : list) {
      if (!item.is_number_integer() || item.get<long long>() < 1)
        throw ConfigError("verify.tail_N entries must be positive integers");
      v.tail_cutoffs.push_back(item.get<int>());
    }
  }
  v.lemma1_order_min = number(obj, "verify", "lemma1_order_min", v.lemma1_order_min);
  v.lemma1_order_max = number(obj, "verify", "lemma1_order_max", v.lemma1_order_max);
  v.conservation_preset = string(obj, "verify", "conservation_preset", v.conservation_preset);
  PresetSpec::parse(v.conservation_preset);
  if (obj.contains("conservation_grid"))
    v.conservation_grid = parse_grid(obj.at("conservation_grid"), "verify.conservation_grid", v.conservation_grid);
  v.conservation_t_end = number(obj, "verify", "conservation_t_end", v.conservation_t_end);
  if (!(v.conservation_t_end > 0)) throw ConfigError("verify.conservation_t_end must be positive");
  v.energy_tolerance = number(obj, "verify", "energy_tolerance", v.energy_tolerance);
  v.enstrophy_tolerance = number(obj, "verify", "enstrophy_tolerance", v.enstrophy_tolerance);
  if (!(v.energy_tolerance > 0) || !(v.enstrophy_tolerance > 0))
    throw ConfigError("verify tolerances must be positive");
  return v;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(root, "", {"grid", "solver", "recurrence", "initial", "output", "verify"});
  RunConfig cfg;
  if (root.contains("grid")) cfg.grid = parse_grid(root.at("grid"), "grid", cfg.grid);
  if (root.contains("solver")) cfg.solver = parse_solver(root.at("solver"));
  if (root.contains("recurrence")) cfg.recurrence = parse_recurrence(root.at("recurrence"));
  if (root.contains("initial")) cfg.initial = PresetSpec::parse(string(root, "", "initial", ""));
  if (root.contains("output")) cfg.output = parse_output(root.at("output"));
  if (root.contains("verify")) cfg.verify = parse_verify(root.at("verify"));
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << is.rdbuf();
  return parse_config(text.str());
}

void override_seed(RunConfig& config, std::uint64_t seed) {
  if (config.initial.name == "random" || config.initial.name == "eigenstate")
    config.initial.params["seed"] = std::to_string(seed);
  config.verify.seed = seed;
}

void validate(const RunConfig& config) {
  config.solver.validate();
  const double max_mode = config.initial.number("max_mode", config.initial.name == "random" ? 4 : 1);
  if (2 * max_mode >= config.grid.nx)
    throw ConfigError("initial: max_mode must stay below N_x/2 = " + std::to_string(config.grid.nx / 2));
  if (config.verify.lemma1_order_min > config.verify.lemma1_order_max)
    throw ConfigError("verify: lemma1_order_min exceeds lemma1_order_max");
}

}  // namespace chrec
