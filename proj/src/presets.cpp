#include "chrec/presets.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "chrec/errors.hpp"

namespace chrec {

namespace {
constexpr double kPi = std::numbers::pi;
}

StreamfunctionSeries::StreamfunctionSeries(double length_x, double a, double b, std::vector<Term> terms)
    : length_x_(length_x), a_(a), b_(b), alpha_(2 * kPi / length_x), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.n < 0 || t.k < 1) throw InvalidArgument("streamfunction series: need n >= 0 and k >= 1");
}

double StreamfunctionSeries::psi(double x, double y) const {
  const double s = (y - a_) / (b_ - a_);
  double sum = 0;
  for (const auto& t : terms_)
    sum += std::sin(t.k * kPi * s) * (t.cos_coeff * std::cos(t.n * alpha_ * x) +
                                      t.sin_coeff * std::sin(t.n * alpha_ * x));
  return sum;
}

double StreamfunctionSeries::u(double x, double y) const {
  const double s = (y - a_) / (b_ - a_);
  double sum = 0;
  for (const auto& t : terms_) {
    const double kappa = t.k * kPi / (b_ - a_);
    sum += kappa * std::cos(t.k * kPi * s) *
           (t.cos_coeff * std::cos(t.n * alpha_ * x) + t.sin_coeff * std::sin(t.n * alpha_ * x));
  }
  return sum;
}

double StreamfunctionSeries::v(double x, double y) const {
  const double s = (y - a_) / (b_ - a_);
  double sum = 0;
  for (const auto& t : terms_) {
    const double kx = t.n * alpha_;
    sum -= std::sin(t.k * kPi * s) *
           kx * (-t.cos_coeff * std::sin(kx * x) + t.sin_coeff * std::cos(kx * x));
  }
  return sum;
}

double StreamfunctionSeries::omega(double x, double y) const {
  const double s = (y - a_) / (b_ - a_);
  double sum = 0;
  for (const auto& t : terms_) {
    const double kx = t.n * alpha_, kappa = t.k * kPi / (b_ - a_);
    sum += (kx * kx + kappa * kappa) * std::sin(t.k * kPi * s) *
           (t.cos_coeff * std::cos(kx * x) + t.sin_coeff * std::sin(kx * x));
  }
  return sum;
}

double StreamfunctionSeries::energy() const {
  // Terms sharing (n, k) are merged before squaring.
  std::map<std::pair<int, int>, std::pair<double, double>> merged;
  for (const auto& t : terms_) {
    auto& c = merged[{t.n, t.k}];
    c.first += t.cos_coeff;
    c.second += t.sin_coeff;
  }
  const double h = b_ - a_;
  double e = 0;
  for (const auto& [nk, c] : merged) {
    const auto [n, k] = nk;
    const double kx = n * alpha_, kappa = k * kPi / h;
    const double amp2 = n == 0 ? 2 * c.first * c.first : c.first * c.first + c.second * c.second;
    e += (kx * kx + kappa * kappa) * amp2 * (length_x_ / 2) * (h / 2);
  }
  return e;
}

StreamfunctionSeries& StreamfunctionSeries::operator*=(double s) {
  for (auto& t : terms_) {
    t.cos_coeff *= s;
    t.sin_coeff *= s;
  }
  return *this;
}

StreamfunctionSeries& StreamfunctionSeries::operator+=(const StreamfunctionSeries& other) {
  if (other.length_x_ != length_x_ || other.a_ != a_ || other.b_ != b_)
    throw InvalidArgument("streamfunction series: geometry mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

namespace {

enum class Component { u, v, omega };

// Each term is X_n(x) Y_k(y). Terms sharing n are folded into one pair of y
// profiles (for cos and sin in x), so the grid sum costs two outer products per n.
RealArray<double> sample_component(const StreamfunctionSeries& series, const ChannelGrid& grid, Component which) {
  using Row = Eigen::Array<double, 1, Eigen::Dynamic>;
  const double h = series.b() - series.a();
  Eigen::ArrayXd x(grid.nx());
  Row s(grid.ny());
  for (int i = 0; i < grid.nx(); ++i) x(i) = grid.x(i);
  for (int j = 0; j < grid.ny(); ++j) s(j) = (grid.y(j) - series.a()) / h;

  std::map<int, Row> sines, cosines;
  auto y_table = [&](int k, bool sine) -> const Row& {
    auto& cache = sine ? sines : cosines;
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    Row f = sine ? Row((k * kPi * s).sin()) : Row((k * kPi * s).cos());
    if (sine) f(0) = f(grid.ny() - 1) = 0;  // exact zeros on the walls
    return cache.emplace(k, std::move(f)).first->second;
  };

  std::map<int, std::pair<Row, Row>> profiles;
  for (const auto& t : series.terms()) {
    const double kx = t.n * series.alpha(), kappa = t.k * kPi / h;
    double a = t.cos_coeff, b = t.sin_coeff, w = 1;
    bool sine = true;
    switch (which) {
      case Component::u:
        w = kappa;
        sine = false;
        break;
      case Component::v:
        a = -kx * t.sin_coeff;
        b = kx * t.cos_coeff;
        break;
      case Component::omega:
        w = kx * kx + kappa * kappa;
        break;
    }
    auto it = profiles.try_emplace(t.n, Row::Zero(grid.ny()), Row::Zero(grid.ny())).first;
    const Row& f = y_table(t.k, sine);
    it->second.first += (a * w) * f;
    it->second.second += (b * w) * f;
  }

  RealArray<double> out = RealArray<double>::Zero(grid.nx(), grid.ny());
  for (const auto& [n, p] : profiles) {
    const Eigen::ArrayXd arg = (n * series.alpha()) * x;
    out.matrix() += arg.cos().matrix() * p.first.matrix();
    out.matrix() += arg.sin().matrix() * p.second.matrix();
  }
  return out;
}

}  // namespace

ScalarField StreamfunctionSeries::sample_omega(const ChannelGrid& grid) const {
  return ScalarField(grid, sample_component(*this, grid, Component::omega));
}

VectorField StreamfunctionSeries::sample_velocity(const ChannelGrid& grid, double mean_u) const {
  ScalarField u(grid, sample_component(*this, grid, Component::u));
  u.values() += mean_u;
  return VectorField(std::move(u), ScalarField(grid, sample_component(*this, grid, Component::v)));
}

StreamfunctionSeries random_streamfunction(double length_x, double a, double b, std::uint64_t seed,
                                           int max_mode, double rms_velocity) {
  if (max_mode < 1) throw InvalidArgument("random_streamfunction: max_mode must be >= 1");
  if (!(rms_velocity >= 0)) throw InvalidArgument("random_streamfunction: amplitude must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const double alpha = 2 * kPi / length_x, h = b - a;
  std::vector<StreamfunctionSeries::Term> terms;
  for (int n = 0; n <= max_mode; ++n) {
    for (int k = 1; k <= max_mode; ++k) {
      const double kx = n * alpha, kappa = k * kPi / h;
      const double damp = 1.0 / (kx * kx + kappa * kappa);
      const double c = coeff(rng) * damp;
      const double d = n == 0 ? 0.0 : coeff(rng) * damp;
      terms.push_back({n, k, c, d});
    }
  }
  StreamfunctionSeries series(length_x, a, b, std::move(terms));
  const double rms = std::sqrt(series.energy() / (length_x * h));
  if (rms > 0) series *= rms_velocity / rms;
  return series;
}

namespace {

const std::map<std::string, std::set<std::string>>& preset_params() {
  static const std::map<std::string, std::set<std::string>> table{
      {"shear", {}},
      {"eigenstate", {"perturbation", "seed", "max_mode"}},
      {"traveling_wave", {"c"}},
      {"random", {"seed", "max_mode", "amplitude"}},
  };
  return table;
}

}  // namespace

PresetSpec PresetSpec::parse(const std::string& text) {
  std::istringstream is(text);
  PresetSpec spec;
  if (!(is >> spec.name)) throw ConfigError("initial: empty preset");
  const auto it = preset_params().find(spec.name);
  if (it == preset_params().end()) throw ConfigError("initial: unknown preset '" + spec.name + "'");
  std::string token;
  while (is >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == token.size())
      throw ConfigError("initial: malformed preset parameter '" + token + "' (expected key=value)");
    const std::string key = token.substr(0, eq);
    if (!it->second.contains(key))
      throw ConfigError("initial: preset '" + spec.name + "' has no parameter '" + key + "'");
    const std::string value = token.substr(eq + 1);
    try {
      std::size_t used = 0;
      std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ConfigError("initial: parameter '" + key + "' must be numeric, got '" + value + "'");
    }
    spec.params[key] = value;
  }
  return spec;
}

std::string PresetSpec::to_string() const {
  std::string out = name;
  for (const auto& [k, v] : params) out += " " + k + "=" + v;
  return out;
}

double PresetSpec::number(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : std::stod(it->second);
}

namespace {

int integer_param(const PresetSpec& p, const std::string& key, int fallback, int min_value) {
  const double value = p.number(key, fallback);
  if (value != std::floor(value) || value < min_value)
    throw ConfigError("initial: parameter '" + key + "' must be an integer >= " +
                      std::to_string(min_value));
  return static_cast<int>(value);
}

StreamfunctionSeries eigen_series(const ChannelGrid& grid) {
  return StreamfunctionSeries(grid.length_x(), grid.a(), grid.b(), {{1, 1, 0.0, 1.0}});
}

}  // namespace

InitialCondition make_initial(const ChannelGrid& grid, const PresetSpec& preset) {
  const double lx = grid.length_x(), a = grid.a(), b = grid.b();
  StreamfunctionSeries series(lx, a, b);
  double mean_u = 0;
  if (preset.name == "shear") {
    series = StreamfunctionSeries(lx, a, b, {{0, 1, (b - a) / kPi, 0.0}});
  } else if (preset.name == "eigenstate") {
    series = eigen_series(grid);
    const double eps = preset.number("perturbation", 0.0);
    if (!(eps >= 0)) throw ConfigError("initial: perturbation must be >= 0");
    if (eps > 0) {
      const double rms = std::sqrt(series.energy() / grid.area());
      const auto seed = static_cast<std::uint64_t>(integer_param(preset, "seed", 0, 0));
      series += random_streamfunction(lx, a, b, seed, integer_param(preset, "max_mode", 4, 1),
                                      eps * rms);
    }
  } else if (preset.name == "traveling_wave") {
    series = eigen_series(grid);
    mean_u = preset.number("c", 1.0);
  } else if (preset.name == "random") {
    const auto seed = static_cast<std::uint64_t>(integer_param(preset, "seed", 0, 0));
    const double amplitude = preset.number("amplitude", 1.0);
    if (!(amplitude > 0)) throw ConfigError("initial: amplitude must be positive");
    series = random_streamfunction(lx, a, b, seed, integer_param(preset, "max_mode", 4, 1), amplitude);
  } else {
    throw ConfigError("initial: unknown preset '" + preset.name + "'");
  }
  for (const auto& t : series.terms())
    if (2 * t.n >= grid.nx())
      throw ConfigError("initial: max_mode must stay below N_x/2 = " + std::to_string(grid.nx() / 2));
  return InitialCondition{series, mean_u, series.sample_omega(grid), series.sample_velocity(grid, mean_u)};
}

}  // namespace chrec
