#pragma once

#include <complex>

#include "snewton/lattice.hpp"

// Closed-form free evolution of Gaussian packets (hbar = 1, dimensionless
// units). A Gaussian of width sigma spreads with complex width
// sigma^2 (1 + i t / (m sigma^2)).

namespace snewton::oracles {

struct FreeGaussianParams {
  double d = 6.0;
  double sigma = 2.0;
  double m_tilde = 0.2;
};

/// Continuum-normalized single Gaussian initially centred at `center`.
std::complex<double> free_gaussian(double x, double t_tilde, double center,
                                   double sigma, double m_tilde);

/// Continuum-normalized sum of two Gaussians at +/-d.
std::complex<double> free_double_gaussian(double x, double t_tilde,
                                          const FreeGaussianParams& params);

/// Samples free_double_gaussian on the lattice.
WaveState sample_free_double_gaussian(const Lattice& lattice, double t_tilde,
                                      const FreeGaussianParams& params);
WaveState sample_free_gaussian(const Lattice& lattice, double t_tilde, double center,
                               double sigma, double m_tilde);

/// Period of the interference term: pi (m sigma^4 + t^2 / m) / (d t).
/// Tends to pi t / (m d) for t >> m sigma^2.
double free_fringe_spacing(double t_tilde, const FreeGaussianParams& params);

/// Position of the first side maximum of |free_double_gaussian|^2 (x > 0),
/// located by a fine scan and golden-section refinement. Unlike
/// free_fringe_spacing this includes the pull of the Gaussian envelope.
double free_first_side_maximum(double t_tilde, const FreeGaussianParams& params);

/// Width sigma sqrt(1 + (t / (m sigma^2))^2) of a freely spreading Gaussian.
double free_width(double t_tilde, double sigma, double m_tilde);

}  // namespace snewton::oracles
