#pragma once

#include <optional>
#include <span>
#include <vector>

#include "snewton/lattice.hpp"
#include "snewton/propagator.hpp"

namespace snewton {

struct AnalysisOptions {
  /// Peaks whose prominence is below this fraction of the global maximum are
  /// dropped.
  double min_prominence = 0.05;
  /// A peak is dominant when its height is at least this fraction of the
  /// global maximum. Dominant peaks drive separation and merge tracking.
  double dominant_fraction = 0.5;

  void validate() const;
};

/// Local maxima of a density, sub-grid refined. Heights and prominences are
/// relative to the global maximum of the density.
struct PeakSet {
  std::vector<double> positions;    // strictly increasing
  std::vector<double> heights;      // in (0, 1]
  std::vector<double> prominences;  // in (0, 1]

  std::size_t size() const noexcept { return positions.size(); }
  bool empty() const noexcept { return positions.empty(); }
};

struct FringeMetrics {
  std::optional<double> w;
  double visibility = 0.0;
  double rms_spread = 0.0;
  double peak_separation = 0.0;
  std::size_t dominant_peaks = 0;
};

/// Interior nodes that exceed both neighbours, refined with a three-point
/// parabola. Prominence follows the usual topographic definition: the peak
/// height above the higher of the two minima reached before a taller sample
/// (or the domain edge) on either side.
PeakSet find_peaks(std::span<const double> density, const Lattice& lattice,
                   double min_prominence);

/// Distance from the central peak (within one dx of x = 0) to the nearest
/// other accepted peak. Absent without a central peak or a side peak.
std::optional<double> fringe_width(std::span<const double> density,
                                   const Lattice& lattice,
                                   double min_prominence = 0.05);
std::optional<double> fringe_width(const PeakSet& peaks, const Lattice& lattice);

/// Index of the central peak in `peaks`, if one lies within dx of the origin.
std::optional<std::size_t> central_peak(const PeakSet& peaks, const Lattice& lattice);

/// (rho_max - rho_min) / (rho_max + rho_min) over |x| <= w; zero when no
/// fringe was resolved.
double visibility(std::span<const double> density, const Lattice& lattice,
                  std::optional<double> w);

/// sqrt(<x^2>) of the normalized density.
double rms_spread(std::span<const double> density, const Lattice& lattice);

/// Positions of dominant peaks (see AnalysisOptions::dominant_fraction).
std::vector<double> dominant_peaks(const PeakSet& peaks, double dominant_fraction);

FringeMetrics fringe_metrics(std::span<const double> density, const Lattice& lattice,
                             const AnalysisOptions& options = {});

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// sqrt(mean(((w_i - fit_i) / w_i)^2)).
  double relative_rms = 0.0;
};

/// Least squares through the origin: y = slope * x.
LineFit fit_through_origin(std::span<const double> x, std::span<const double> y);
/// Ordinary least squares: y = slope * x + intercept.
LineFit fit_affine(std::span<const double> x, std::span<const double> y);

struct ScanRow {
  double m_tilde = 0.0;
  double inverse_m_tilde = 0.0;
  std::optional<double> w_free;
  std::optional<double> w_sn;
  std::optional<double> deviation;  // w_sn - w_free
};

struct ScanTable {
  double t_eval = 8.9;
  double min_prominence = 0.05;
  std::vector<ScanRow> rows;  // ascending m_tilde
  /// Fits of w_free against 1/m_tilde over rows where w_free is present.
  LineFit free_fit_origin;
  LineFit free_fit_affine;
};

/// Pairs gravity-off and gravity-on records by mass and extracts fringe
/// widths at `t_eval`. Throws InvalidParameter when a record lacks a snapshot
/// at `t_eval` or a mass is missing one of the two runs.
ScanTable fringe_width_scan(std::span<const RunRecord> records, double t_eval,
                            double min_prominence = 0.05);

struct AttractionPoint {
  double t_tilde = 0.0;
  double peak_separation = 0.0;
  double rms_spread = 0.0;
  std::size_t dominant_peaks = 0;
};

struct AttractionSeries {
  std::vector<AttractionPoint> points;
  /// First snapshot after the initial one that shows a single dominant peak.
  std::optional<double> merge_time;
};

/// Requires at least two snapshots.
AttractionSeries attraction_series(const RunRecord& record,
                                   const AnalysisOptions& options = {});

}  // namespace snewton
