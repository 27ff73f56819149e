#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "snewton/error.hpp"

namespace snsim {

using snewton::ConfigurationError;

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::single: return "single";
    case Mode::sweep: return "sweep";
    case Mode::compare: return "compare";
    case Mode::feasibility: return "feasibility";
  }
  return "unknown";
}

snewton::Lattice RunConfig::lattice() const {
  return snewton::make_lattice(x_min, x_max, n_points, t_final, n_steps);
}

std::string format_number(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string format_csv_number(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto result = std::from_chars(t.data(), t.data() + t.size(), value);
  if (result.ec != std::errc{} || result.ptr != t.data() + t.size()) {
    throw ConfigurationError("'" + text + "' is not a number");
  }
  return value;
}

unsigned long long parse_unsigned(const std::string& text) {
  const std::string t = trim(text);
  unsigned long long value = 0;
  const auto result = std::from_chars(t.data(), t.data() + t.size(), value);
  if (result.ec != std::errc{} || result.ptr != t.data() + t.size()) {
    throw ConfigurationError("'" + text + "' is not a non-negative integer");
  }
  return value;
}

bool parse_bool(const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "on" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "off" || t == "no" || t == "0") return false;
  throw ConfigurationError("'" + text + "' is not a boolean (on/off)");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (trim(item).empty()) continue;
    values.push_back(parse_double(item));
  }
  return values;
}

std::string print_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_number(values[i]);
  }
  return out;
}

std::string print_bool(bool value) { return value ? "on" : "off"; }

Mode parse_mode(const std::string& text) {
  const std::string t = trim(text);
  if (t == "single") return Mode::single;
  if (t == "sweep") return Mode::sweep;
  if (t == "compare") return Mode::compare;
  if (t == "feasibility") return Mode::feasibility;
  throw ConfigurationError("unknown mode '" + t + "' (single|sweep|compare|feasibility)");
}

snewton::CouplingMode parse_scheme(const std::string& text) {
  const std::string t = trim(text);
  if (t == "frozen") return snewton::CouplingMode::frozen_potential;
  if (t == "pc") return snewton::CouplingMode::predictor_corrector;
  throw ConfigurationError("unknown scheme '" + t + "' (frozen|pc)");
}

snewton::PotentialMethod parse_method(const std::string& text) {
  const std::string t = trim(text);
  if (t == "auto") return snewton::PotentialMethod::automatic;
  if (t == "direct") return snewton::PotentialMethod::direct;
  if (t == "fast") return snewton::PotentialMethod::fast;
  throw ConfigurationError("unknown potential method '" + t + "' (auto|direct|fast)");
}

std::string print_method(snewton::PotentialMethod method) {
  switch (method) {
    case snewton::PotentialMethod::automatic: return "auto";
    case snewton::PotentialMethod::direct: return "direct";
    case snewton::PotentialMethod::fast: return "fast";
  }
  return "auto";
}

std::vector<KeySpec> build_keys() {
  using C = RunConfig;
  using S = const std::string&;
  return {
      {"mode", "single|sweep|compare|feasibility", false,
       [](C& c, S v) { c.mode = parse_mode(v); },
       [](const C& c) { return std::string(to_string(c.mode)); }},
      {"x_min", "left edge of the domain", false,
       [](C& c, S v) { c.x_min = parse_double(v); },
       [](const C& c) { return format_number(c.x_min); }},
      {"x_max", "right edge of the domain", false,
       [](C& c, S v) { c.x_max = parse_double(v); },
       [](const C& c) { return format_number(c.x_max); }},
      {"n_points", "number of lattice nodes", false,
       [](C& c, S v) { c.n_points = parse_unsigned(v); },
       [](const C& c) { return std::to_string(c.n_points); }},
      {"t_final", "final dimensionless time", false,
       [](C& c, S v) { c.t_final = parse_double(v); },
       [](const C& c) { return format_number(c.t_final); }},
      {"n_steps", "number of time steps", false,
       [](C& c, S v) { c.n_steps = parse_unsigned(v); },
       [](const C& c) { return std::to_string(c.n_steps); }},
      {"d", "half slit separation", false,
       [](C& c, S v) { c.setup.d = parse_double(v); },
       [](const C& c) { return format_number(c.setup.d); }},
      {"sigma", "width of each Gaussian", false,
       [](C& c, S v) { c.setup.sigma = parse_double(v); },
       [](const C& c) { return format_number(c.setup.sigma); }},
      {"mass", "dimensionless mass for single/compare runs", false,
       [](C& c, S v) { c.setup.m_tilde = parse_double(v); },
       [](const C& c) { return format_number(c.setup.m_tilde); }},
      {"epsilon", "kernel regularization length", false,
       [](C& c, S v) { c.setup.epsilon = parse_double(v); },
       [](const C& c) { return format_number(c.setup.epsilon); }},
      {"gravity", "on|off (single mode)", false,
       [](C& c, S v) { c.setup.gravity_on = parse_bool(v); },
       [](const C& c) { return print_bool(c.setup.gravity_on); }},
      {"coupling_scale", "multiplier on the m^2 coupling (1 = physical)", false,
       [](C& c, S v) { c.setup.coupling_scale = parse_double(v); },
       [](const C& c) { return format_number(c.setup.coupling_scale); }},
      {"scheme", "frozen|pc nonlinear coupling per step", false,
       [](C& c, S v) { c.scheme.mode = parse_scheme(v); },
       [](const C& c) {
         return std::string(c.scheme.mode == snewton::CouplingMode::frozen_potential ? "frozen"
                                                                                    : "pc");
       }},
      {"picard_iterations", "corrector passes in pc mode (1-8)", false,
       [](C& c, S v) { c.scheme.picard_iterations = static_cast<int>(parse_unsigned(v)); },
       [](const C& c) { return std::to_string(c.scheme.picard_iterations); }},
      {"potential_method", "auto|direct|fast", false,
       [](C& c, S v) { c.potential_method = parse_method(v); },
       [](const C& c) { return print_method(c.potential_method); }},
      {"guard_density", "largest |psi|^2 allowed next to the boundary", false,
       [](C& c, S v) { c.guard_density = parse_double(v); },
       [](const C& c) { return format_number(c.guard_density); }},
      {"snapshot_times", "comma-separated snapshot times", false,
       [](C& c, S v) { c.snapshot_times = parse_list(v); },
       [](const C& c) { return print_list(c.snapshot_times); }},
      {"masses", "comma-separated masses for sweeps", false,
       [](C& c, S v) { c.masses = parse_list(v); },
       [](const C& c) { return print_list(c.masses); }},
      {"t_eval", "time at which fringe widths are evaluated", false,
       [](C& c, S v) { c.t_eval = parse_double(v); },
       [](const C& c) { return format_number(c.t_eval); }},
      {"min_prominence", "peak acceptance threshold (fraction of max)", false,
       [](C& c, S v) { c.analysis.min_prominence = parse_double(v); },
       [](const C& c) { return format_number(c.analysis.min_prominence); }},
      {"dominant_fraction", "height fraction that makes a peak dominant", false,
       [](C& c, S v) { c.analysis.dominant_fraction = parse_double(v); },
       [](const C& c) { return format_number(c.analysis.dominant_fraction); }},
      {"feasibility_masses_u", "particle masses in u for feasibility mode", false,
       [](C& c, S v) { c.feasibility_masses_u = parse_list(v); },
       [](const C& c) { return print_list(c.feasibility_masses_u); }},
      {"target_m_tilde", "dimensionless mass targeted by feasibility mode", false,
       [](C& c, S v) { c.target_m_tilde = parse_double(v); },
       [](const C& c) { return format_number(c.target_m_tilde); }},
      {"target_t_tilde", "dimensionless time targeted by feasibility mode", false,
       [](C& c, S v) { c.target_t_tilde = parse_double(v); },
       [](const C& c) { return format_number(c.target_t_tilde); }},
      {"outdir", "output directory", false,
       [](C& c, S v) { c.outdir = trim(v); },
       [](const C& c) { return c.outdir.string(); }},
      {"jobs", "parallel sweep members (0 = all cores)", false,
       [](C& c, S v) { c.jobs = static_cast<unsigned>(parse_unsigned(v)); },
       [](const C& c) { return std::to_string(c.jobs); }},
      {"emit_potential", "add the potential column to snapshots", true,
       [](C& c, S v) { c.emit_potential = parse_bool(v); },
       [](const C& c) { return print_bool(c.emit_potential); }},
      {"emit_plot_script", "write plot.py next to the CSVs", true,
       [](C& c, S v) { c.emit_plot_script = parse_bool(v); },
       [](const C& c) { return print_bool(c.emit_plot_script); }},
      {"seed", "reserved; the simulation is deterministic", false,
       [](C& c, S v) { c.seed = parse_unsigned(v); },
       [](const C& c) { return std::to_string(c.seed); }},
  };
}

const KeySpec* find_key(const std::string& name) {
  for (const KeySpec& key : config_keys()) {
    if (key.name == name) return &key;
  }
  return nullptr;
}

}  // namespace

const std::vector<KeySpec>& config_keys() {
  static const std::vector<KeySpec> keys = build_keys();
  return keys;
}

void apply_config_text(RunConfig& config, const std::string& text, const std::string& source) {
  std::vector<std::string> problems;
  std::stringstream stream(text);
  std::string line;
  int number = 0;
  while (std::getline(stream, line)) {
    ++number;
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = source + ":" + std::to_string(number) + ": ";
    if (eq == std::string::npos) {
      problems.push_back(where + "expected 'key = value'");
      continue;
    }
    const std::string key = trim(body.substr(0, eq));
    const KeySpec* spec = find_key(key);
    if (!spec) {
      problems.push_back(where + "unknown key '" + key + "'");
      continue;
    }
    try {
      spec->parse(config, trim(body.substr(eq + 1)));
    } catch (const ConfigurationError& e) {
      problems.push_back(where + key + ": " + e.what());
    }
  }
  if (!problems.empty()) {
    std::string message = "invalid configuration:";
    for (const auto& p : problems) message += "\n  " + p;
    throw ConfigurationError(message);
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw snewton::IoError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(config, buffer.str(), path.string());
}

void apply_overrides(RunConfig& config, const std::map<std::string, std::string>& values) {
  std::vector<std::string> problems;
  for (const auto& [key, value] : values) {
    const KeySpec* spec = find_key(key);
    if (!spec) {
      problems.push_back("unknown key '" + key + "'");
      continue;
    }
    try {
      spec->parse(config, value);
    } catch (const ConfigurationError& e) {
      problems.push_back("--" + key + ": " + e.what());
    }
  }
  if (!problems.empty()) {
    std::string message = "invalid command line:";
    for (const auto& p : problems) message += "\n  " + p;
    throw ConfigurationError(message);
  }
}

void validate(const RunConfig& c) {
  std::vector<std::string> problems;
  auto require = [&](bool ok, const std::string& message) {
    if (!ok) problems.push_back(message);
  };
  auto finite_positive = [](double v) { return std::isfinite(v) && v > 0.0; };

  require(std::isfinite(c.x_min) && std::isfinite(c.x_max) && c.x_min < c.x_max,
          "x_min must be below x_max");
  require(c.n_points >= 16, "n_points must be at least 16");
  require(c.n_steps >= 1, "n_steps must be at least 1");
  require(finite_positive(c.t_final), "t_final must be positive");
  require(finite_positive(c.setup.d), "d must be positive");
  require(finite_positive(c.setup.sigma), "sigma must be positive");
  require(finite_positive(c.setup.epsilon), "epsilon must be positive");
  require(std::isfinite(c.setup.coupling_scale) && c.setup.coupling_scale >= 0.0,
          "coupling_scale must be non-negative");
  require(c.setup.d + 3.0 * c.setup.sigma < c.x_max &&
              -c.setup.d - 3.0 * c.setup.sigma > c.x_min,
          "packets (d + 3 sigma) must fit inside the domain");
  require(c.scheme.picard_iterations >= 1 && c.scheme.picard_iterations <= 8,
          "picard_iterations must lie in [1, 8]");
  require(finite_positive(c.guard_density), "guard_density must be positive");
  require(c.analysis.min_prominence > 0.0 && c.analysis.min_prominence < 1.0,
          "min_prominence must lie in (0, 1)");
  require(c.analysis.dominant_fraction > 0.0 && c.analysis.dominant_fraction <= 1.0,
          "dominant_fraction must lie in (0, 1]");

  const double half_dt = c.n_steps >= 1 ? 0.5 * c.t_final / static_cast<double>(c.n_steps) : 0.0;
  auto in_time_range = [&](double t) {
    return std::isfinite(t) && t >= -half_dt && t <= c.t_final + half_dt;
  };

  switch (c.mode) {
    case Mode::single:
    case Mode::compare:
      require(finite_positive(c.setup.m_tilde), "mass must be positive");
      for (double t : c.snapshot_times) {
        require(in_time_range(t), "snapshot time " + format_number(t) + " lies outside [0, t_final]");
      }
      if (c.mode == Mode::compare) {
        require(in_time_range(c.t_eval), "t_eval must lie in [0, t_final]");
      }
      break;
    case Mode::sweep:
      require(!c.masses.empty(), "sweep needs at least one mass");
      for (double m : c.masses) require(finite_positive(m), "sweep mass " + format_number(m) + " must be positive");
      {
        std::set<double> unique(c.masses.begin(), c.masses.end());
        require(unique.size() == c.masses.size(), "sweep masses must be distinct");
      }
      require(in_time_range(c.t_eval), "t_eval must lie in [0, t_final]");
      break;
    case Mode::feasibility:
      require(!c.feasibility_masses_u.empty(), "feasibility needs at least one mass");
      for (double m : c.feasibility_masses_u) {
        require(finite_positive(m), "feasibility mass " + format_number(m) + " must be positive");
      }
      require(finite_positive(c.target_m_tilde), "target_m_tilde must be positive");
      require(finite_positive(c.target_t_tilde), "target_t_tilde must be positive");
      break;
  }

  if (!problems.empty()) {
    std::string message = "configuration violates " + std::to_string(problems.size()) +
                          " precondition(s):";
    for (const auto& p : problems) message += "\n  - " + p;
    throw ConfigurationError(message);
  }
}

std::string render_config(const RunConfig& config) {
  std::string out;
  for (const KeySpec& key : config_keys()) {
    out += key.name + " = " + key.print(config) + "\n";
  }
  return out;
}

}  // namespace snsim
