#include "snewton/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "snewton/error.hpp"

namespace snewton {

void AnalysisOptions::validate() const {
  if (!(min_prominence > 0.0 && min_prominence < 1.0)) {
    throw InvalidParameter("min_prominence must lie in (0, 1)");
  }
  if (!(dominant_fraction > 0.0 && dominant_fraction <= 1.0)) {
    throw InvalidParameter("dominant_fraction must lie in (0, 1]");
  }
}

PeakSet find_peaks(std::span<const double> density, const Lattice& lattice,
                   double min_prominence) {
  if (density.size() != lattice.n_points) {
    throw InvalidParameter("density length does not match the lattice");
  }
  if (!(min_prominence > 0.0 && min_prominence < 1.0)) {
    throw InvalidParameter("min_prominence must lie in (0, 1)");
  }
  PeakSet peaks;
  const std::size_t n = density.size();
  const double global_max = *std::max_element(density.begin(), density.end());
  if (!(global_max > 0.0)) return peaks;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double centre = density[i];
    const double before = density[i - 1];
    const double after = density[i + 1];
    if (!(centre > before && centre > after)) continue;

    double left_min = centre;
    for (std::size_t j = i; j-- > 0;) {
      if (density[j] > centre) break;
      left_min = std::min(left_min, density[j]);
    }
    double right_min = centre;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (density[j] > centre) break;
      right_min = std::min(right_min, density[j]);
    }
    const double prominence = (centre - std::max(left_min, right_min)) / global_max;
    if (prominence < min_prominence) continue;

    const double curvature = before - 2.0 * centre + after;  // < 0 at a strict maximum
    const double offset = 0.5 * (before - after) / curvature;
    const double height = centre - 0.25 * (before - after) * offset;
    peaks.positions.push_back(lattice.node(i) + offset * lattice.dx);
    peaks.heights.push_back(std::min(1.0, height / global_max));
    peaks.prominences.push_back(std::min(1.0, prominence));
  }
  return peaks;
}

std::optional<std::size_t> central_peak(const PeakSet& peaks, const Lattice& lattice) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < peaks.size(); ++k) {
    const double distance = std::abs(peaks.positions[k]);
    if (distance <= lattice.dx && (!best || distance < std::abs(peaks.positions[*best]))) {
      best = k;
    }
  }
  return best;
}

std::optional<double> fringe_width(const PeakSet& peaks, const Lattice& lattice) {
  const auto centre = central_peak(peaks, lattice);
  if (!centre) return std::nullopt;
  std::optional<double> w;
  for (std::size_t k = 0; k < peaks.size(); ++k) {
    if (k == *centre) continue;
    const double distance = std::abs(peaks.positions[k] - peaks.positions[*centre]);
    if (!w || distance < *w) w = distance;
  }
  return w;
}

std::optional<double> fringe_width(std::span<const double> density, const Lattice& lattice,
                                   double min_prominence) {
  return fringe_width(find_peaks(density, lattice, min_prominence), lattice);
}

double visibility(std::span<const double> density, const Lattice& lattice,
                  std::optional<double> w) {
  if (!w) return 0.0;
  double high = 0.0;
  double low = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < density.size(); ++i) {
    if (std::abs(lattice.node(i)) > *w) continue;
    high = std::max(high, density[i]);
    low = std::min(low, density[i]);
  }
  if (!(high + low > 0.0)) return 0.0;
  return (high - low) / (high + low);
}

double rms_spread(std::span<const double> density, const Lattice& lattice) {
  double mass = 0.0;
  double second = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double x = lattice.node(i);
    mass += density[i];
    second += x * x * density[i];
  }
  return mass > 0.0 ? std::sqrt(second / mass) : 0.0;
}

std::vector<double> dominant_peaks(const PeakSet& peaks, double dominant_fraction) {
  std::vector<double> positions;
  for (std::size_t k = 0; k < peaks.size(); ++k) {
    if (peaks.heights[k] >= dominant_fraction) positions.push_back(peaks.positions[k]);
  }
  return positions;
}

namespace {

double separation(const std::vector<double>& dominant) {
  return dominant.size() >= 2 ? dominant.back() - dominant.front() : 0.0;
}

}  // namespace

FringeMetrics fringe_metrics(std::span<const double> density, const Lattice& lattice,
                             const AnalysisOptions& options) {
  options.validate();
  const PeakSet peaks = find_peaks(density, lattice, options.min_prominence);
  const std::vector<double> dominant = dominant_peaks(peaks, options.dominant_fraction);
  FringeMetrics metrics;
  metrics.w = fringe_width(peaks, lattice);
  metrics.visibility = visibility(density, lattice, metrics.w);
  metrics.rms_spread = rms_spread(density, lattice);
  metrics.peak_separation = separation(dominant);
  metrics.dominant_peaks = dominant.size();
  return metrics;
}

namespace {

double relative_rms(std::span<const double> x, std::span<const double> y, double slope,
                    double intercept) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = (y[i] - (slope * x[i] + intercept)) / y[i];
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(x.size()));
}

void check_fit_input(std::span<const double> x, std::span<const double> y, std::size_t need) {
  if (x.size() != y.size()) throw InvalidParameter("fit: x and y lengths differ");
  if (x.size() < need) {
    throw InvalidParameter("fit needs at least " + std::to_string(need) + " points");
  }
}

}  // namespace

LineFit fit_through_origin(std::span<const double> x, std::span<const double> y) {
  check_fit_input(x, y, 1);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
  }
  if (!(sxx > 0.0)) throw InvalidParameter("fit through origin: all x are zero");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.relative_rms = relative_rms(x, y, fit.slope, 0.0);
  return fit;
}

LineFit fit_affine(std::span<const double> x, std::span<const double> y) {
  check_fit_input(x, y, 2);
  const double count = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) throw InvalidParameter("affine fit: x values are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.relative_rms = relative_rms(x, y, fit.slope, fit.intercept);
  return fit;
}

ScanTable fringe_width_scan(std::span<const RunRecord> records, double t_eval,
                            double min_prominence) {
  struct Pair {
    const RunRecord* free = nullptr;
    const RunRecord* gravity = nullptr;
  };
  std::map<double, Pair> by_mass;
  for (const RunRecord& record : records) {
    if (!record.snapshot_at(t_eval)) {
      throw InvalidParameter("run at m_tilde = " + std::to_string(record.setup.m_tilde) +
                             " has no snapshot at t = " + std::to_string(t_eval));
    }
    Pair& pair = by_mass[record.setup.m_tilde];
    const RunRecord*& slot = record.setup.gravity_on ? pair.gravity : pair.free;
    if (slot) {
      throw InvalidParameter("duplicate run at m_tilde = " +
                             std::to_string(record.setup.m_tilde));
    }
    slot = &record;
  }

  ScanTable table;
  table.t_eval = t_eval;
  table.min_prominence = min_prominence;
  std::vector<double> inverse_mass;
  std::vector<double> widths;
  for (const auto& [m_tilde, pair] : by_mass) {
    if (!pair.free || !pair.gravity) {
      throw InvalidParameter("m_tilde = " + std::to_string(m_tilde) +
                             " lacks a gravity-on or gravity-off run");
    }
    auto width_of = [&](const RunRecord& record) {
      const Snapshot& snapshot = *record.snapshot_at(t_eval);
      return fringe_width(snapshot.density(), record.lattice, min_prominence);
    };
    ScanRow row;
    row.m_tilde = m_tilde;
    row.inverse_m_tilde = 1.0 / m_tilde;
    row.w_free = width_of(*pair.free);
    row.w_sn = width_of(*pair.gravity);
    if (row.w_free && row.w_sn) row.deviation = *row.w_sn - *row.w_free;
    if (row.w_free) {
      inverse_mass.push_back(row.inverse_m_tilde);
      widths.push_back(*row.w_free);
    }
    table.rows.push_back(row);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  table.free_fit_origin = inverse_mass.size() >= 1 ? fit_through_origin(inverse_mass, widths)
                                                   : LineFit{nan, nan, nan};
  table.free_fit_affine = inverse_mass.size() >= 2 ? fit_affine(inverse_mass, widths)
                                                   : LineFit{nan, nan, nan};
  return table;
}

AttractionSeries attraction_series(const RunRecord& record, const AnalysisOptions& options) {
  options.validate();
  if (record.snapshots.size() < 2) {
    throw InvalidParameter("attraction series needs at least two snapshots");
  }
  AttractionSeries series;
  for (std::size_t k = 0; k < record.snapshots.size(); ++k) {
    const Snapshot& snapshot = record.snapshots[k];
    const std::vector<double> rho = snapshot.density();
    const PeakSet peaks = find_peaks(rho, record.lattice, options.min_prominence);
    const std::vector<double> dominant = dominant_peaks(peaks, options.dominant_fraction);
    AttractionPoint point;
    point.t_tilde = snapshot.state.t_tilde;
    point.peak_separation = separation(dominant);
    point.rms_spread = rms_spread(rho, record.lattice);
    point.dominant_peaks = dominant.size();
    if (k > 0 && !series.merge_time && dominant.size() == 1) {
      series.merge_time = point.t_tilde;
    }
    series.points.push_back(point);
  }
  return series;
}

}  // namespace snewton
