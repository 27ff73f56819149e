#include "snewton/units.hpp"

#include <cmath>
#include <string>

#include "snewton/error.hpp"

namespace snewton {

const char* to_string(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::invalid_parameter: return "invalid-parameter";
    case ErrorCategory::configuration: return "configuration";
    case ErrorCategory::numerical_failure: return "numerical-failure";
    case ErrorCategory::boundary_reached: return "boundary-reached";
    case ErrorCategory::io: return "io";
  }
  return "unknown";
}

namespace units {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw InvalidParameter(std::string(name) + " must be positive and finite, got " +
                           std::to_string(value));
  }
}

double scale_of(Dimension dimension, const ScaleSystem& scale) noexcept {
  switch (dimension) {
    case Dimension::length: return scale.sigma_r;
    case Dimension::time: return scale.t_r;
    case Dimension::mass: return scale.m_r;
  }
  return 1.0;
}

}  // namespace

const char* to_string(Dimension dimension) noexcept {
  switch (dimension) {
    case Dimension::length: return "length";
    case Dimension::time: return "time";
    case Dimension::mass: return "mass";
  }
  return "unknown";
}

ScaleSystem make_scale_system(double sigma_r) {
  require_positive(sigma_r, "sigma_r");
  using namespace constants;
  const double g_hbar = gravitational_constant * reduced_planck;
  ScaleSystem scale{};
  scale.sigma_r = sigma_r;
  scale.t_r = std::cbrt(std::pow(sigma_r, 5) / g_hbar);
  scale.m_r = std::cbrt(reduced_planck * reduced_planck / (gravitational_constant * sigma_r));
  return scale;
}

double to_dimensionless(const Quantity& quantity, Dimension expected,
                        const ScaleSystem& scale) {
  if (quantity.dimension != expected) {
    throw InvalidParameter(std::string("dimension mismatch: expected ") +
                           to_string(expected) + ", got " +
                           to_string(quantity.dimension));
  }
  return quantity.value / scale_of(expected, scale);
}

Quantity to_si(double dimensionless, Dimension dimension, const ScaleSystem& scale) {
  return {dimensionless * scale_of(dimension, scale), dimension};
}

FeasibilityReport feasibility_report(double mass, double target_m_tilde,
                                     double target_t_tilde, double half_separation) {
  require_positive(mass, "mass");
  require_positive(target_m_tilde, "target_m_tilde");
  require_positive(target_t_tilde, "target_t_tilde");
  require_positive(half_separation, "half_separation");
  using namespace constants;

  // Invert m_r = (hbar^2 / (G sigma_r))^(1/3) for the mass scale m / m_tilde.
  const double m_r = mass / target_m_tilde;
  const double sigma_r =
      reduced_planck * reduced_planck / (gravitational_constant * m_r * m_r * m_r);

  FeasibilityReport report{};
  report.mass = mass;
  report.target_m_tilde = target_m_tilde;
  report.target_t_tilde = target_t_tilde;
  report.scale = make_scale_system(sigma_r);
  report.sigma_r = sigma_r;
  report.slit_separation = 2.0 * half_separation * sigma_r;
  report.evolution_time = target_t_tilde * report.scale.t_r;
  return report;
}

}  // namespace units
}  // namespace snewton
