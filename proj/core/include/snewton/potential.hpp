#pragma once

#include <memory>
#include <span>
#include <vector>

#include "snewton/lattice.hpp"

namespace snewton {

/// Self-gravity potential sampled on the lattice.
struct PotentialField {
  std::vector<double> values;
  double built_from_time = 0.0;
};

enum class PotentialMethod { automatic, direct, fast };

/// Node count from which `PotentialMethod::automatic` switches to the FFT path.
inline constexpr std::size_t fast_potential_threshold = 512;

PotentialMethod resolve_method(PotentialMethod method, std::size_t n_points) noexcept;

/// Regularized 1D self-potential
///
///   V_i = -m^2 sum_j |psi_j|^2 dx / sqrt((x_i - x_j)^2 + eps^2)
///
/// by direct O(N^2) summation. The j == i term is included. Every V_i is
/// accumulated in ascending j order.
PotentialField self_potential_direct(const WaveState& state, const Lattice& lattice,
                                     double m_tilde, double epsilon);

/// Same contract as self_potential_direct, evaluated as a zero-padded FFT
/// convolution. Builds a throwaway SelfPotentialKernel; evolution loops keep
/// a kernel alive instead.
PotentialField self_potential_fast(const WaveState& state, const Lattice& lattice,
                                   double m_tilde, double epsilon);

/// Cached spectrum of the kernel -1/sqrt(u^2 + eps^2) for one lattice.
///
/// Not shareable between threads: the transform buffers are members. FFTW
/// planning is serialized internally, so independent kernels may be built and
/// used concurrently.
class SelfPotentialKernel {
 public:
  SelfPotentialKernel(const Lattice& lattice, double epsilon);
  ~SelfPotentialKernel();
  SelfPotentialKernel(SelfPotentialKernel&&) noexcept;
  SelfPotentialKernel& operator=(SelfPotentialKernel&&) noexcept;
  SelfPotentialKernel(const SelfPotentialKernel&) = delete;
  SelfPotentialKernel& operator=(const SelfPotentialKernel&) = delete;

  /// out_i = coupling * sum_j weights_j * k(x_i - x_j); `weights` is |psi|^2 dx.
  void convolve(std::span<const double> weights, double coupling,
                std::span<double> out);

  std::size_t padded_size() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Evaluates the potential with a fixed method, reusing one FFT kernel.
class SelfPotentialEvaluator {
 public:
  SelfPotentialEvaluator(const Lattice& lattice, double epsilon,
                         PotentialMethod method = PotentialMethod::automatic);

  /// `coupling` is the full prefactor, m_tilde^2 for the physical equation.
  PotentialField operator()(const WaveState& state, double coupling);
  void evaluate(std::span<const Complex> amplitudes, double coupling,
                std::span<double> out);

  PotentialMethod method() const noexcept { return method_; }

 private:
  Lattice lattice_;
  double epsilon_;
  PotentialMethod method_;
  std::unique_ptr<SelfPotentialKernel> kernel_;
  std::vector<double> table_;  // direct path only
  std::vector<double> weights_;
};

/// (1/2) sum_i V_i |psi_i|^2 dx; the half avoids counting each pair twice.
double potential_energy(const WaveState& state, const PotentialField& potential,
                        const Lattice& lattice);
double potential_energy(std::span<const Complex> amplitudes,
                        std::span<const double> potential, const Lattice& lattice);

}  // namespace snewton
