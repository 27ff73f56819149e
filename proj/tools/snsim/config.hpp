#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "snewton/analysis.hpp"
#include "snewton/lattice.hpp"
#include "snewton/potential.hpp"
#include "snewton/propagator.hpp"

namespace snsim {

enum class Mode { single, sweep, compare, feasibility };

const char* to_string(Mode mode) noexcept;

/// Fully resolved campaign configuration. Defaults reproduce the reference
/// double-slit setup.
struct RunConfig {
  Mode mode = Mode::single;

  double x_min = -70.0;
  double x_max = 70.0;
  std::size_t n_points = 2001;
  double t_final = 10.0;
  std::size_t n_steps = 1000;

  snewton::SetupParams setup{};  // m_tilde defaults to 0.5 here
  snewton::StepScheme scheme{};
  snewton::PotentialMethod potential_method = snewton::PotentialMethod::automatic;
  double guard_density = 1e-6;

  std::vector<double> snapshot_times{0.0, 2.0, 4.0, 6.0, 8.9, 10.0};
  std::vector<double> masses{0.2, 0.3, 0.4, 0.5, 0.6};
  double t_eval = 8.9;
  snewton::AnalysisOptions analysis{};

  std::vector<double> feasibility_masses_u{16e9, 1e8};
  double target_m_tilde = 0.5;
  double target_t_tilde = 8.0;

  std::filesystem::path outdir = "snsim_out";
  unsigned jobs = 0;  // 0: one per hardware thread
  bool emit_potential = false;
  bool emit_plot_script = false;
  /// Reserved. The simulation is deterministic and never draws random numbers.
  unsigned long long seed = 0;

  snewton::Lattice lattice() const;
};

/// One configuration key: its textual name, a parser and a printer. The same
/// table drives config files, command-line overrides and the manifest.
struct KeySpec {
  std::string name;
  std::string help;
  bool is_flag = false;  // boolean switch on the command line
  void (*parse)(RunConfig&, const std::string&);
  std::string (*print)(const RunConfig&);
};

const std::vector<KeySpec>& config_keys();

/// Applies `key = value` lines; `#` starts a comment. Throws
/// snewton::ConfigurationError naming every malformed line and unknown key.
void apply_config_text(RunConfig& config, const std::string& text,
                       const std::string& source = "<config>");
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Applies already-split key/value overrides (command-line flags).
void apply_overrides(RunConfig& config, const std::map<std::string, std::string>& values);

/// Throws snewton::ConfigurationError listing every violated precondition.
void validate(const RunConfig& config);

/// `key = value` rendering of every key, loadable by apply_config_text.
std::string render_config(const RunConfig& config);

/// Shortest decimal rendering that round-trips the double.
std::string format_number(double value);
/// 17 significant digits, used for every CSV payload.
std::string format_csv_number(double value);

}  // namespace snsim
