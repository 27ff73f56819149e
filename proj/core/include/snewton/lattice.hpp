#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace snewton {

using Complex = std::complex<double>;

/// Uniform 1D grid plus the time-step metadata of a run.
struct Lattice {
  double x_min = -70.0;
  double x_max = 70.0;
  std::size_t n_points = 2001;
  double dx = 0.07;
  double t_final = 10.0;
  std::size_t n_steps = 1000;
  double dt = 0.01;

  /// Nodes in the upper half are measured back from x_max, so a domain with
  /// x_min == -x_max has bit-exact mirror symmetry.
  double node(std::size_t i) const noexcept {
    const std::size_t mirror = n_points - 1 - i;
    return i <= mirror ? x_min + static_cast<double>(i) * dx
                       : x_max - static_cast<double>(mirror) * dx;
  }
  std::vector<double> nodes() const;
};

/// Requires x_min < x_max, n_points >= 16, n_steps >= 1 and t_final > 0.
Lattice make_lattice(double x_min, double x_max, std::size_t n_points,
                     double t_final, std::size_t n_steps);

/// Reference lattice: [-70, 70], 2000 intervals, t in [0, 10] with 1000 steps.
Lattice default_lattice();

struct SetupParams {
  double d = 6.0;        // half slit separation
  double sigma = 2.0;    // width of each Gaussian
  double m_tilde = 0.5;
  double epsilon = 0.01;  // kernel regularization length
  bool gravity_on = true;
  /// Multiplies the m_tilde^2 prefactor of the self-potential. Only used to
  /// switch the coupling off while keeping the gravity code path active.
  double coupling_scale = 1.0;

  double coupling() const noexcept {
    return gravity_on ? coupling_scale * m_tilde * m_tilde : 0.0;
  }
  /// Throws InvalidParameter listing every violated constraint.
  void validate() const;
};

struct WaveState {
  std::vector<Complex> amplitudes;
  double t_tilde = 0.0;

  std::size_t size() const noexcept { return amplitudes.size(); }
};

/// Sum of |psi_i|^2 dx.
double discrete_norm(std::span<const Complex> amplitudes, const Lattice& lattice);
double discrete_norm(const WaveState& state, const Lattice& lattice);

/// |psi_i|^2 for every node.
std::vector<double> density(std::span<const Complex> amplitudes);

/// Two equal Gaussians at +/-d, normalized numerically so the discrete norm
/// is one. Throws ConfigurationError when the packets do not fit the domain.
WaveState prepare_double_gaussian(const Lattice& lattice, const SetupParams& params);

/// Single normalized Gaussian centred at `center`; used by validation runs.
WaveState prepare_gaussian(const Lattice& lattice, double center, double sigma);

}  // namespace snewton
