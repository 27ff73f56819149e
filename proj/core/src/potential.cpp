#include "snewton/potential.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>

#include "snewton/error.hpp"

namespace snewton {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex mutex;
  return mutex;
}

void check_inputs(const WaveState& state, const Lattice& lattice, double m_tilde,
                  double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameter("epsilon must be positive: the unregularized kernel is singular");
  }
  if (!(m_tilde >= 0.0) || !std::isfinite(m_tilde)) {
    throw InvalidParameter("m_tilde must be non-negative");
  }
  if (state.size() != lattice.n_points) {
    throw InvalidParameter("state length does not match the lattice");
  }
}

// 1 / sqrt((k dx)^2 + eps^2) for k = 0 .. n-1.
std::vector<double> inverse_distance_table(const Lattice& lattice, double epsilon) {
  std::vector<double> table(lattice.n_points);
  const double eps2 = epsilon * epsilon;
  for (std::size_t k = 0; k < table.size(); ++k) {
    const double u = static_cast<double>(k) * lattice.dx;
    table[k] = 1.0 / std::sqrt(u * u + eps2);
  }
  return table;
}

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void density_weights(std::span<const Complex> amplitudes, double dx,
                     std::vector<double>& weights) {
  weights.resize(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    weights[i] = std::norm(amplitudes[i]) * dx;
  }
}

void direct_sum(std::span<const double> weights, std::span<const double> table,
                double coupling, std::span<double> out) {
  const std::size_t n = weights.size();
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += weights[j] * table[i > j ? i - j : j - i];
    }
    out[i] = -coupling * sum;
  }
}

}  // namespace

PotentialMethod resolve_method(PotentialMethod method, std::size_t n_points) noexcept {
  if (method != PotentialMethod::automatic) return method;
  return n_points >= fast_potential_threshold ? PotentialMethod::fast
                                              : PotentialMethod::direct;
}

struct SelfPotentialKernel::Impl {
  std::size_t n = 0;
  std::size_t padded = 0;
  double* real_buffer = nullptr;
  fftw_complex* spectrum_buffer = nullptr;
  fftw_complex* kernel_spectrum = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    fftw_free(real_buffer);
    fftw_free(spectrum_buffer);
    fftw_free(kernel_spectrum);
  }
};

SelfPotentialKernel::SelfPotentialKernel(const Lattice& lattice, double epsilon)
    : impl_(std::make_unique<Impl>()) {
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
  Impl& k = *impl_;
  k.n = lattice.n_points;
  // Linear convolution of two length-n sequences needs 2n - 1 samples.
  k.padded = next_power_of_two(2 * k.n - 1);
  const std::size_t n_freq = k.padded / 2 + 1;

  k.real_buffer = fftw_alloc_real(k.padded);
  k.spectrum_buffer = fftw_alloc_complex(n_freq);
  k.kernel_spectrum = fftw_alloc_complex(n_freq);
  if (!k.real_buffer || !k.spectrum_buffer || !k.kernel_spectrum) {
    throw NumericalFailure("FFT buffer allocation failed");
  }
  {
    std::lock_guard lock(planner_mutex());
    const int size = static_cast<int>(k.padded);
    k.forward = fftw_plan_dft_r2c_1d(size, k.real_buffer, k.spectrum_buffer, FFTW_ESTIMATE);
    k.backward = fftw_plan_dft_c2r_1d(size, k.spectrum_buffer, k.real_buffer, FFTW_ESTIMATE);
  }
  if (!k.forward || !k.backward) throw NumericalFailure("FFT planning failed");

  // Wrap-around embedding of the even kernel, with the 1/M inverse-transform
  // normalization folded in.
  const std::vector<double> table = inverse_distance_table(lattice, epsilon);
  const double inv_m = 1.0 / static_cast<double>(k.padded);
  std::fill(k.real_buffer, k.real_buffer + k.padded, 0.0);
  k.real_buffer[0] = -table[0] * inv_m;
  for (std::size_t j = 1; j < k.n; ++j) {
    k.real_buffer[j] = -table[j] * inv_m;
    k.real_buffer[k.padded - j] = -table[j] * inv_m;
  }
  fftw_execute(k.forward);
  for (std::size_t f = 0; f < n_freq; ++f) {
    k.kernel_spectrum[f][0] = k.spectrum_buffer[f][0];
    k.kernel_spectrum[f][1] = k.spectrum_buffer[f][1];
  }
}

SelfPotentialKernel::~SelfPotentialKernel() = default;
SelfPotentialKernel::SelfPotentialKernel(SelfPotentialKernel&&) noexcept = default;
SelfPotentialKernel& SelfPotentialKernel::operator=(SelfPotentialKernel&&) noexcept = default;

std::size_t SelfPotentialKernel::padded_size() const noexcept { return impl_->padded; }

void SelfPotentialKernel::convolve(std::span<const double> weights, double coupling,
                                   std::span<double> out) {
  Impl& k = *impl_;
  if (weights.size() != k.n || out.size() != k.n) {
    throw InvalidParameter("convolution input does not match the kernel lattice");
  }
  std::copy(weights.begin(), weights.end(), k.real_buffer);
  std::fill(k.real_buffer + k.n, k.real_buffer + k.padded, 0.0);
  fftw_execute(k.forward);
  const std::size_t n_freq = k.padded / 2 + 1;
  for (std::size_t f = 0; f < n_freq; ++f) {
    const double a = k.spectrum_buffer[f][0];
    const double b = k.spectrum_buffer[f][1];
    const double c = k.kernel_spectrum[f][0];
    const double d = k.kernel_spectrum[f][1];
    k.spectrum_buffer[f][0] = a * c - b * d;
    k.spectrum_buffer[f][1] = a * d + b * c;
  }
  fftw_execute(k.backward);
  for (std::size_t i = 0; i < k.n; ++i) out[i] = coupling * k.real_buffer[i];
}

PotentialField self_potential_direct(const WaveState& state, const Lattice& lattice,
                                     double m_tilde, double epsilon) {
  check_inputs(state, lattice, m_tilde, epsilon);
  std::vector<double> weights;
  density_weights(state.amplitudes, lattice.dx, weights);
  const std::vector<double> table = inverse_distance_table(lattice, epsilon);
  PotentialField field{std::vector<double>(lattice.n_points), state.t_tilde};
  direct_sum(weights, table, m_tilde * m_tilde, field.values);
  return field;
}

PotentialField self_potential_fast(const WaveState& state, const Lattice& lattice,
                                   double m_tilde, double epsilon) {
  check_inputs(state, lattice, m_tilde, epsilon);
  std::vector<double> weights;
  density_weights(state.amplitudes, lattice.dx, weights);
  SelfPotentialKernel kernel(lattice, epsilon);
  PotentialField field{std::vector<double>(lattice.n_points), state.t_tilde};
  kernel.convolve(weights, m_tilde * m_tilde, field.values);
  return field;
}

SelfPotentialEvaluator::SelfPotentialEvaluator(const Lattice& lattice, double epsilon,
                                               PotentialMethod method)
    : lattice_(lattice),
      epsilon_(epsilon),
      method_(resolve_method(method, lattice.n_points)) {
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
  if (method_ == PotentialMethod::fast) {
    kernel_ = std::make_unique<SelfPotentialKernel>(lattice, epsilon);
  } else {
    table_ = inverse_distance_table(lattice, epsilon);
  }
}

void SelfPotentialEvaluator::evaluate(std::span<const Complex> amplitudes,
                                      double coupling, std::span<double> out) {
  density_weights(amplitudes, lattice_.dx, weights_);
  if (kernel_) {
    kernel_->convolve(weights_, coupling, out);
  } else {
    direct_sum(weights_, table_, coupling, out);
  }
}

PotentialField SelfPotentialEvaluator::operator()(const WaveState& state, double coupling) {
  PotentialField field{std::vector<double>(state.size()), state.t_tilde};
  evaluate(state.amplitudes, coupling, field.values);
  return field;
}

double potential_energy(std::span<const Complex> amplitudes,
                        std::span<const double> potential, const Lattice& lattice) {
  if (amplitudes.size() != potential.size()) {
    throw InvalidParameter("potential and state lengths differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    sum += potential[i] * std::norm(amplitudes[i]);
  }
  return 0.5 * sum * lattice.dx;
}

double potential_energy(const WaveState& state, const PotentialField& potential,
                        const Lattice& lattice) {
  return potential_energy(state.amplitudes, potential.values, lattice);
}

}  // namespace snewton
