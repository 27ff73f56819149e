#include "snewton/oracles.hpp"

#include <cmath>
#include <numbers>

#include "snewton/error.hpp"

namespace snewton::oracles {

namespace {

using std::numbers::pi;

// 1 + i t / (m sigma^2)
std::complex<double> spreading(double t_tilde, double sigma, double m_tilde) {
  return {1.0, t_tilde / (m_tilde * sigma * sigma)};
}

std::complex<double> spread_gaussian(double u, double sigma,
                                     std::complex<double> factor) {
  return std::exp(-u * u / (2.0 * sigma * sigma * factor));
}

void check(const FreeGaussianParams& p) {
  if (!(p.d > 0.0 && p.sigma > 0.0 && p.m_tilde > 0.0)) {
    throw InvalidParameter("free Gaussian parameters must be positive");
  }
}

}  // namespace

std::complex<double> free_gaussian(double x, double t_tilde, double center, double sigma,
                                   double m_tilde) {
  const auto factor = spreading(t_tilde, sigma, m_tilde);
  const double amplitude = 1.0 / std::sqrt(sigma * std::sqrt(pi));
  return amplitude / std::sqrt(factor) * spread_gaussian(x - center, sigma, factor);
}

std::complex<double> free_double_gaussian(double x, double t_tilde,
                                          const FreeGaussianParams& params) {
  check(params);
  const double s = params.sigma;
  const double d = params.d;
  // Continuum norm of the initial sum, cross term included; free evolution
  // preserves it.
  const double amplitude =
      1.0 / std::sqrt(2.0 * s * std::sqrt(pi) * (1.0 + std::exp(-d * d / (s * s))));
  const auto factor = spreading(t_tilde, s, params.m_tilde);
  return amplitude / std::sqrt(factor) *
         (spread_gaussian(x - d, s, factor) + spread_gaussian(x + d, s, factor));
}

WaveState sample_free_double_gaussian(const Lattice& lattice, double t_tilde,
                                      const FreeGaussianParams& params) {
  WaveState state;
  state.t_tilde = t_tilde;
  state.amplitudes.resize(lattice.n_points);
  for (std::size_t i = 0; i < lattice.n_points; ++i) {
    state.amplitudes[i] = free_double_gaussian(lattice.node(i), t_tilde, params);
  }
  return state;
}

WaveState sample_free_gaussian(const Lattice& lattice, double t_tilde, double center,
                               double sigma, double m_tilde) {
  WaveState state;
  state.t_tilde = t_tilde;
  state.amplitudes.resize(lattice.n_points);
  for (std::size_t i = 0; i < lattice.n_points; ++i) {
    state.amplitudes[i] = free_gaussian(lattice.node(i), t_tilde, center, sigma, m_tilde);
  }
  return state;
}

double free_fringe_spacing(double t_tilde, const FreeGaussianParams& params) {
  check(params);
  if (!(t_tilde > 0.0)) throw InvalidParameter("fringe spacing needs t > 0");
  const double m = params.m_tilde;
  const double s2 = params.sigma * params.sigma;
  return pi * (m * s2 * s2 + t_tilde * t_tilde / m) / (params.d * t_tilde);
}

double free_width(double t_tilde, double sigma, double m_tilde) {
  const double tau = t_tilde / (m_tilde * sigma * sigma);
  return sigma * std::sqrt(1.0 + tau * tau);
}

double free_first_side_maximum(double t_tilde, const FreeGaussianParams& params) {
  const double spacing = free_fringe_spacing(t_tilde, params);
  auto rho = [&](double x) { return std::norm(free_double_gaussian(x, t_tilde, params)); };

  const double h = spacing / 4000.0;
  const double extent = params.d + 12.0 * free_width(t_tilde, params.sigma, params.m_tilde);
  double previous = rho(0.0);
  double current = rho(h);
  for (double x = h; x < extent; x += h) {
    const double following = rho(x + h);
    if (current > previous && current >= following) {
      // Golden-section refinement on [x - h, x + h].
      const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
      double a = x - h;
      double b = x + h;
      double c = b - ratio * (b - a);
      double e = a + ratio * (b - a);
      for (int iter = 0; iter < 80; ++iter) {
        if (rho(c) > rho(e)) {
          b = e;
        } else {
          a = c;
        }
        c = b - ratio * (b - a);
        e = a + ratio * (b - a);
      }
      return 0.5 * (a + b);
    }
    previous = current;
    current = following;
  }
  throw NumericalFailure("free density has no side maximum within the scanned range");
}

}  // namespace snewton::oracles
