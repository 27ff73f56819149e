#include "snewton/lattice.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "snewton/error.hpp"

namespace snewton {

std::vector<double> Lattice::nodes() const {
  std::vector<double> x(n_points);
  for (std::size_t i = 0; i < n_points; ++i) x[i] = node(i);
  return x;
}

Lattice make_lattice(double x_min, double x_max, std::size_t n_points, double t_final,
                     std::size_t n_steps) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    throw InvalidParameter("lattice extent must satisfy x_min < x_max");
  }
  if (n_points < 16) {
    throw InvalidParameter("lattice needs at least 16 nodes, got " +
                           std::to_string(n_points));
  }
  if (n_steps < 1) throw InvalidParameter("lattice needs at least one time step");
  if (!std::isfinite(t_final) || t_final <= 0.0) {
    throw InvalidParameter("t_final must be positive");
  }
  Lattice lattice;
  lattice.x_min = x_min;
  lattice.x_max = x_max;
  lattice.n_points = n_points;
  lattice.dx = (x_max - x_min) / static_cast<double>(n_points - 1);
  lattice.t_final = t_final;
  lattice.n_steps = n_steps;
  lattice.dt = t_final / static_cast<double>(n_steps);
  return lattice;
}

Lattice default_lattice() { return make_lattice(-70.0, 70.0, 2001, 10.0, 1000); }

void SetupParams::validate() const {
  std::ostringstream errors;
  auto check = [&](bool ok, const char* message) {
    if (!ok) errors << (errors.tellp() > 0 ? "; " : "") << message;
  };
  check(std::isfinite(d) && d > 0.0, "d must be positive");
  check(std::isfinite(sigma) && sigma > 0.0, "sigma must be positive");
  check(std::isfinite(m_tilde) && m_tilde > 0.0, "m_tilde must be positive");
  check(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be positive");
  check(std::isfinite(coupling_scale) && coupling_scale >= 0.0,
        "coupling_scale must be non-negative");
  if (errors.tellp() > 0) throw InvalidParameter(errors.str());
}

double discrete_norm(std::span<const Complex> amplitudes, const Lattice& lattice) {
  if (amplitudes.size() != lattice.n_points) {
    throw InvalidParameter("state has " + std::to_string(amplitudes.size()) +
                           " amplitudes, lattice has " +
                           std::to_string(lattice.n_points) + " nodes");
  }
  double sum = 0.0;
  for (const Complex& a : amplitudes) sum += std::norm(a);
  return sum * lattice.dx;
}

double discrete_norm(const WaveState& state, const Lattice& lattice) {
  return discrete_norm(state.amplitudes, lattice);
}

std::vector<double> density(std::span<const Complex> amplitudes) {
  std::vector<double> rho(amplitudes.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(amplitudes[i]);
  return rho;
}

namespace {

void normalize(WaveState& state, const Lattice& lattice) {
  const double norm = discrete_norm(state, lattice);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ConfigurationError("initial state has zero norm on this lattice");
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (Complex& a : state.amplitudes) a *= scale;
}

}  // namespace

WaveState prepare_double_gaussian(const Lattice& lattice, const SetupParams& params) {
  params.validate();
  if (!(params.d + 3.0 * params.sigma < lattice.x_max) ||
      !(-params.d - 3.0 * params.sigma > lattice.x_min)) {
    throw ConfigurationError("packets at +/-d with width sigma do not fit in [" +
                             std::to_string(lattice.x_min) + ", " +
                             std::to_string(lattice.x_max) + "]");
  }
  const double two_sigma2 = 2.0 * params.sigma * params.sigma;
  WaveState state;
  state.amplitudes.resize(lattice.n_points);
  for (std::size_t i = 0; i < lattice.n_points; ++i) {
    const double x = lattice.node(i);
    const double left = x + params.d;
    const double right = x - params.d;
    // Summing in |x| order keeps psi(x) and psi(-x) bit-identical.
    const double near = std::exp(-(x >= 0 ? right * right : left * left) / two_sigma2);
    const double far = std::exp(-(x >= 0 ? left * left : right * right) / two_sigma2);
    state.amplitudes[i] = near + far;
  }
  state.amplitudes.front() = 0.0;
  state.amplitudes.back() = 0.0;
  normalize(state, lattice);
  return state;
}

WaveState prepare_gaussian(const Lattice& lattice, double center, double sigma) {
  if (!(sigma > 0.0)) throw InvalidParameter("sigma must be positive");
  if (!(center + 3.0 * sigma < lattice.x_max) || !(center - 3.0 * sigma > lattice.x_min)) {
    throw ConfigurationError("Gaussian does not fit in the domain");
  }
  WaveState state;
  state.amplitudes.resize(lattice.n_points);
  for (std::size_t i = 0; i < lattice.n_points; ++i) {
    const double u = lattice.node(i) - center;
    state.amplitudes[i] = std::exp(-u * u / (2.0 * sigma * sigma));
  }
  state.amplitudes.front() = 0.0;
  state.amplitudes.back() = 0.0;
  normalize(state, lattice);
  return state;
}

}  // namespace snewton
