#pragma once

// Nondimensionalization of the Schroedinger-Newton equation.
//
// Lengths are measured in units of sigma_r, and the remaining scales follow
// from G and hbar:
//
//   t_r = (sigma_r^5 / (G hbar))^(1/3)
//   m_r = (hbar^2 / (G sigma_r))^(1/3)
//
// so that the dimensionless equation carries the single parameter m/m_r.

namespace snewton::units {

/// CODATA 2018 values, SI.
namespace constants {
inline constexpr double gravitational_constant = 6.67430e-11;    // m^3 kg^-1 s^-2
inline constexpr double reduced_planck = 1.054571817e-34;        // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;    // kg
}  // namespace constants

enum class Dimension { length, time, mass };

const char* to_string(Dimension dimension) noexcept;

/// A physical value in SI base units (m, s, kg) tagged with its dimension.
struct Quantity {
  double value;
  Dimension dimension;
};

struct ScaleSystem {
  double sigma_r;  // m
  double t_r;      // s
  double m_r;      // kg

  double m_r_in_u() const noexcept { return m_r / constants::atomic_mass_unit; }
};

ScaleSystem make_scale_system(double sigma_r);

/// Throws InvalidParameter when `quantity.dimension != expected`.
double to_dimensionless(const Quantity& quantity, Dimension expected,
                        const ScaleSystem& scale);

Quantity to_si(double dimensionless, Dimension dimension, const ScaleSystem& scale);

inline double kg_from_u(double mass_u) noexcept {
  return mass_u * constants::atomic_mass_unit;
}
inline double u_from_kg(double mass_kg) noexcept {
  return mass_kg / constants::atomic_mass_unit;
}

struct FeasibilityReport {
  double mass;             // kg
  double target_m_tilde;
  double target_t_tilde;
  double sigma_r;          // m
  double slit_separation;  // m, equal to 2d with d = half_separation * sigma_r
  double evolution_time;   // s
  ScaleSystem scale;
};

/// Length scale, slit separation and laboratory time needed for a particle of
/// `mass` (kg) to sit at `target_m_tilde` and evolve for `target_t_tilde`.
/// `half_separation` is d in units of sigma_r (6 in the reference setup).
FeasibilityReport feasibility_report(double mass, double target_m_tilde,
                                     double target_t_tilde,
                                     double half_separation = 6.0);

}  // namespace snewton::units
