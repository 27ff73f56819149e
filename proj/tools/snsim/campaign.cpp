#include "campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include "snewton/error.hpp"
#include "snewton/version.hpp"

namespace snsim {

namespace fs = std::filesystem;
using snewton::RunRecord;
using snewton::SetupParams;

namespace {

std::string time_label(double t) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", t);
  std::string s = buffer;
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string run_label(const SetupParams& setup) {
  return "m" + format_number(setup.m_tilde) + "_gravity_" + (setup.gravity_on ? "on" : "off");
}

class OutputTree {
 public:
  OutputTree(fs::path root, CampaignSummary& summary) : root_(std::move(root)), summary_(summary) {
    make_dirs(root_);
  }

  void write(const fs::path& relative, const std::string& content) {
    const fs::path path = root_ / relative;
    make_dirs(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw snewton::IoError("failed to write " + path.string());
    summary_.files.push_back(relative);
  }

 private:
  static void make_dirs(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw snewton::IoError("cannot create directory " + dir.string() + ": " + ec.message());
  }

  fs::path root_;
  CampaignSummary& summary_;
};

std::string join_row(std::initializer_list<std::string> fields) {
  std::string line;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) line += ',';
    line += f;
    first = false;
  }
  line += '\n';
  return line;
}

std::string optional_number(const std::optional<double>& value) {
  return value ? format_csv_number(*value) : std::string("nan");
}

std::string snapshot_csv(const snewton::Snapshot& snapshot, const snewton::Lattice& lattice,
                         bool with_potential) {
  const bool potential = with_potential && !snapshot.potential.empty();
  std::string out = potential ? "x,re,im,density,potential\n" : "x,re,im,density\n";
  const auto& amps = snapshot.state.amplitudes;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    out += format_csv_number(lattice.node(i));
    out += ',' + format_csv_number(amps[i].real());
    out += ',' + format_csv_number(amps[i].imag());
    out += ',' + format_csv_number(std::norm(amps[i]));
    if (potential) out += ',' + format_csv_number(snapshot.potential[i]);
    out += '\n';
  }
  return out;
}

const char* metrics_header =
    "run,m_tilde,gravity,t,norm,energy,w,visibility,rms_spread,peak_separation,dominant_peaks\n";

std::string metrics_rows(const RunRecord& record, const snewton::AnalysisOptions& options) {
  std::string out;
  const std::string label = run_label(record.setup);
  for (const auto& snapshot : record.snapshots) {
    const auto rho = snapshot.density();
    const auto metrics = snewton::fringe_metrics(rho, record.lattice, options);
    const std::size_t step = snewton::snapshot_step(snapshot.state.t_tilde, record.lattice);
    out += join_row({label, format_csv_number(record.setup.m_tilde),
                     record.setup.gravity_on ? "on" : "off",
                     format_csv_number(snapshot.state.t_tilde),
                     format_csv_number(record.norms[step]),
                     format_csv_number(record.energies[step]), optional_number(metrics.w),
                     format_csv_number(metrics.visibility), format_csv_number(metrics.rms_spread),
                     format_csv_number(metrics.peak_separation),
                     std::to_string(metrics.dominant_peaks)});
  }
  return out;
}

const char* series_header = "run,m_tilde,gravity,step,t,norm,kinetic,potential,energy\n";

std::string series_rows(const RunRecord& record) {
  std::string out;
  const std::string label = run_label(record.setup);
  const std::string mass = format_csv_number(record.setup.m_tilde);
  const char* gravity = record.setup.gravity_on ? "on" : "off";
  for (std::size_t k = 0; k < record.times.size(); ++k) {
    out += join_row({label, mass, gravity, std::to_string(k), format_csv_number(record.times[k]),
                     format_csv_number(record.norms[k]), format_csv_number(record.kinetic[k]),
                     format_csv_number(record.potential[k]),
                     format_csv_number(record.energies[k])});
  }
  return out;
}

void write_snapshots(OutputTree& tree, const fs::path& dir, const RunRecord& record,
                     bool with_potential) {
  for (const auto& snapshot : record.snapshots) {
    tree.write(dir / ("t" + time_label(snapshot.state.t_tilde) + ".csv"),
               snapshot_csv(snapshot, record.lattice, with_potential));
  }
}

void write_run_tables(OutputTree& tree, const std::vector<RunRecord>& runs,
                      const snewton::AnalysisOptions& options) {
  std::string metrics = metrics_header;
  std::string series = series_header;
  for (const auto& run : runs) {
    metrics += metrics_rows(run, options);
    series += series_rows(run);
  }
  tree.write("metrics.csv", metrics);
  tree.write("series.csv", series);
}

std::string attraction_csv(const snewton::AttractionSeries& series) {
  std::string out = "# merge_time = " +
                    (series.merge_time ? format_csv_number(*series.merge_time) : "none") + "\n";
  out += "t,peak_separation,rms_spread,dominant_peaks\n";
  for (const auto& p : series.points) {
    out += join_row({format_csv_number(p.t_tilde), format_csv_number(p.peak_separation),
                     format_csv_number(p.rms_spread), std::to_string(p.dominant_peaks)});
  }
  return out;
}

std::string scan_csv(const snewton::ScanTable& table) {
  auto fit_line = [](const char* name, const snewton::LineFit& fit) {
    return std::string("# ") + name + " slope = " + format_csv_number(fit.slope) +
           ", intercept = " + format_csv_number(fit.intercept) +
           ", relative_rms = " + format_csv_number(fit.relative_rms) + "\n";
  };
  std::string out = "# t_eval = " + format_csv_number(table.t_eval) + "\n";
  out += "# min_prominence = " + format_csv_number(table.min_prominence) + "\n";
  out += fit_line("free_fit_origin", table.free_fit_origin);
  out += fit_line("free_fit_affine", table.free_fit_affine);
  out += "m_tilde,inv_m_tilde,w_free,w_sn,deviation\n";
  for (const auto& row : table.rows) {
    out += join_row({format_csv_number(row.m_tilde), format_csv_number(row.inverse_m_tilde),
                     optional_number(row.w_free), optional_number(row.w_sn),
                     optional_number(row.deviation)});
  }
  return out;
}

std::string feasibility_csv(const std::vector<snewton::units::FeasibilityReport>& reports) {
  std::string out =
      "mass_u,mass_kg,target_m_tilde,target_t_tilde,sigma_r_m,slit_separation_m,"
      "evolution_time_s,t_r_s,m_r_kg\n";
  for (const auto& r : reports) {
    out += join_row({format_csv_number(snewton::units::u_from_kg(r.mass)),
                     format_csv_number(r.mass), format_csv_number(r.target_m_tilde),
                     format_csv_number(r.target_t_tilde), format_csv_number(r.sigma_r),
                     format_csv_number(r.slit_separation), format_csv_number(r.evolution_time),
                     format_csv_number(r.scale.t_r), format_csv_number(r.scale.m_r)});
  }
  return out;
}

std::string manifest(const RunConfig& config) {
  const auto lattice = config.lattice();
  std::string out = "# snsim manifest; rerun with: snsim --config manifest.txt\n";
  out += "# code_version = " + std::string(snewton::version_string) + "\n";
  out += "# dx = " + format_number(lattice.dx) + ", dt = " + format_number(lattice.dt) + "\n";
  out += render_config(config);
  return out;
}

const char* plot_script = R"PY(#!/usr/bin/env python3
import glob
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

here = os.path.dirname(os.path.abspath(__file__))


def load(path):
    return np.genfromtxt(path, delimiter=",", names=True, comments="#", dtype=None, encoding="utf-8")


snaps = sorted(glob.glob(os.path.join(here, "**", "t*.csv"), recursive=True))
if snaps:
    fig, ax = plt.subplots(figsize=(8, 4))
    for path in snaps:
        data = load(path)
        ax.plot(data["x"], data["density"], label=os.path.relpath(path, here), lw=0.8)
    ax.set_xlabel("x")
    ax.set_ylabel("|psi|^2")
    ax.legend(fontsize=6)
    fig.savefig(os.path.join(here, "density.png"), dpi=150)

scan = os.path.join(here, "scan.csv")
if os.path.exists(scan):
    data = load(scan)
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.plot(data["inv_m_tilde"], data["w_free"], "o-", label="gravity off")
    ax.plot(data["inv_m_tilde"], data["w_sn"], "s-", label="gravity on")
    ax.set_xlabel("1 / m")
    ax.set_ylabel("fringe width")
    ax.legend()
    fig.savefig(os.path.join(here, "scan.png"), dpi=150)

attraction = os.path.join(here, "attraction.csv")
if os.path.exists(attraction):
    data = load(attraction)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(data["t"], data["peak_separation"], label="peak separation")
    ax.plot(data["t"], data["rms_spread"], label="rms spread")
    ax.set_xlabel("t")
    ax.legend()
    fig.savefig(os.path.join(here, "attraction.png"), dpi=150)

series = os.path.join(here, "series.csv")
if os.path.exists(series):
    data = load(series)
    fig, ax = plt.subplots(figsize=(6, 4))
    for run in np.unique(data["run"]):
        rows = data[data["run"] == run]
        ax.plot(rows["t"], rows["energy"] - rows["energy"][0], label=str(run))
    ax.set_xlabel("t")
    ax.set_ylabel("E(t) - E(0)")
    ax.legend(fontsize=6)
    fig.savefig(os.path.join(here, "energy.png"), dpi=150)
)PY";

/// Runs `tasks` on up to `jobs` threads. Results are written by index, and the
/// first failure in task order is rethrown after every worker has joined.
void run_parallel(std::vector<std::function<void()>>& tasks, unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size()));
  std::vector<std::exception_ptr> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        tasks[i]();
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  for (auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
}

std::vector<RunRecord> simulate_all(const RunConfig& config, const std::vector<SetupParams>& setups,
                                    const std::vector<double>& times, std::ostream* log) {
  std::vector<RunRecord> runs(setups.size());
  std::mutex log_mutex;
  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < setups.size(); ++i) {
    tasks.emplace_back([&, i] {
      runs[i] = simulate(config, setups[i], times);
      if (log) {
        std::lock_guard lock(log_mutex);
        *log << "  finished " << run_label(setups[i]) << '\n';
      }
    });
  }
  run_parallel(tasks, config.jobs);
  return runs;
}

std::vector<double> with_time(std::vector<double> times, double t) {
  times.push_back(t);
  return times;
}

/// Sorts requested times and drops those landing on the same step.
std::vector<double> unique_steps(std::vector<double> times, const snewton::Lattice& lattice) {
  std::sort(times.begin(), times.end());
  std::vector<double> out;
  std::size_t last = static_cast<std::size_t>(-1);
  for (double t : times) {
    const std::size_t step = snewton::snapshot_step(t, lattice);
    if (step == last) continue;
    out.push_back(t);
    last = step;
  }
  return out;
}

}  // namespace

RunRecord simulate(const RunConfig& config, const SetupParams& setup,
                   std::vector<double> snapshot_times) {
  const auto lattice = config.lattice();
  const auto initial = snewton::prepare_double_gaussian(lattice, setup);
  snewton::EvolveOptions options;
  options.guard_density = config.guard_density;
  options.potential_method = config.potential_method;
  options.record_potentials = true;
  return snewton::evolve(initial, setup, lattice, config.scheme,
                         unique_steps(std::move(snapshot_times), lattice), options);
}

CampaignSummary run_campaign(const RunConfig& config, std::ostream* log) {
  validate(config);
  CampaignSummary summary;
  summary.mode = config.mode;
  OutputTree tree(config.outdir, summary);
  tree.write("manifest.txt", manifest(config));

  switch (config.mode) {
    case Mode::single: {
      if (log) *log << "single run " << run_label(config.setup) << '\n';
      summary.runs = simulate_all(config, {config.setup}, config.snapshot_times, log);
      const RunRecord& run = summary.runs.front();
      write_snapshots(tree, "snapshots", run, config.emit_potential);
      write_run_tables(tree, summary.runs, config.analysis);
      if (run.snapshots.size() >= 2) {
        tree.write("attraction.csv",
                   attraction_csv(snewton::attraction_series(run, config.analysis)));
      }
      break;
    }
    case Mode::compare: {
      SetupParams on = config.setup;
      on.gravity_on = true;
      SetupParams off = config.setup;
      off.gravity_on = false;
      if (log) *log << "compare runs at m = " << format_number(config.setup.m_tilde) << '\n';
      summary.runs =
          simulate_all(config, {on, off}, with_time(config.snapshot_times, config.t_eval), log);
      write_snapshots(tree, "gravity_on/snapshots", summary.runs[0], config.emit_potential);
      write_snapshots(tree, "gravity_off/snapshots", summary.runs[1], config.emit_potential);
      write_run_tables(tree, summary.runs, config.analysis);
      break;
    }
    case Mode::sweep: {
      std::vector<double> masses = config.masses;
      std::sort(masses.begin(), masses.end());
      std::vector<SetupParams> setups;
      for (double m : masses) {
        for (bool gravity : {false, true}) {
          SetupParams s = config.setup;
          s.m_tilde = m;
          s.gravity_on = gravity;
          setups.push_back(s);
        }
      }
      if (log) *log << "sweep of " << setups.size() << " runs\n";
      summary.runs = simulate_all(config, setups, {config.t_eval}, log);
      for (const auto& run : summary.runs) {
        write_snapshots(tree, fs::path("snapshots") / run_label(run.setup), run,
                        config.emit_potential);
      }
      write_run_tables(tree, summary.runs, config.analysis);
      summary.scan = snewton::fringe_width_scan(summary.runs, config.t_eval,
                                                config.analysis.min_prominence);
      tree.write("scan.csv", scan_csv(*summary.scan));
      break;
    }
    case Mode::feasibility: {
      for (double mass_u : config.feasibility_masses_u) {
        summary.feasibility.push_back(snewton::units::feasibility_report(
            snewton::units::kg_from_u(mass_u), config.target_m_tilde, config.target_t_tilde,
            config.setup.d));
      }
      tree.write("feasibility.csv", feasibility_csv(summary.feasibility));
      break;
    }
  }

  if (config.emit_plot_script) tree.write("plot.py", plot_script);
  return summary;
}

int exit_code_for(const std::exception& error) noexcept {
  const auto* typed = dynamic_cast<const snewton::Error*>(&error);
  if (!typed) return 1;
  switch (typed->category()) {
    case snewton::ErrorCategory::invalid_parameter:
    case snewton::ErrorCategory::configuration: return 2;
    case snewton::ErrorCategory::numerical_failure: return 3;
    case snewton::ErrorCategory::boundary_reached: return 4;
    case snewton::ErrorCategory::io: return 5;
  }
  return 1;
}

}  // namespace snsim
