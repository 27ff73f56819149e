#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "snewton/lattice.hpp"
#include "snewton/potential.hpp"

namespace snewton {

enum class CouplingMode {
  /// V built from psi^n and held fixed for the whole step.
  frozen_potential,
  /// Frozen predictor, then Picard passes with V = (V(psi^n) + V(psi*)) / 2.
  predictor_corrector,
};

struct StepScheme {
  CouplingMode mode = CouplingMode::frozen_potential;
  int picard_iterations = 2;  // corrector passes, in [1, 8]

  void validate() const;
};

struct EvolveOptions {
  /// Largest |psi|^2 allowed on the outermost interior nodes.
  double guard_density = 1e-6;
  PotentialMethod potential_method = PotentialMethod::automatic;
  bool record_potentials = true;
};

struct Snapshot {
  WaveState state;
  std::vector<double> potential;  // empty when gravity is off or not recorded

  std::vector<double> density() const { return snewton::density(state.amplitudes); }
};

struct RunRecord {
  SetupParams setup;
  Lattice lattice;
  StepScheme scheme;
  std::vector<Snapshot> snapshots;  // strictly increasing in time

  // One entry per time level, steps 0..n_steps.
  std::vector<double> times;
  std::vector<double> norms;
  std::vector<double> kinetic;
  std::vector<double> potential;
  std::vector<double> energies;

  /// Snapshot whose time is within dt/2 of `t_tilde`, if any.
  const Snapshot* snapshot_at(double t_tilde) const noexcept;
};

/// One Crank-Nicolson step (1 + i dt H / 2) psi' = (1 - i dt H / 2) psi with
/// H = -D2 / (2 m) + diag(V) and psi = 0 on both end nodes.
WaveState cn_step(const WaveState& state, const PotentialField& potential,
                  const Lattice& lattice, double m_tilde);

/// Reusable stepper; avoids per-step allocation in evolution loops.
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(const Lattice& lattice, double m_tilde);

  /// Writes the advanced interior into `out`; end nodes of `out` are zeroed.
  /// `out` may not alias `in`.
  void step(std::span<const Complex> in, std::span<const double> potential,
            std::span<Complex> out);

 private:
  std::size_t n_;
  double dt_;
  double hopping_;  // 1 / (2 m dx^2)
  std::vector<Complex> lower_, diag_, upper_, rhs_, solution_, scratch_;
};

/// (1/2m) sum_i |psi_{i+1} - psi_i|^2 / dx over every link of the lattice.
double kinetic_energy(const WaveState& state, const Lattice& lattice, double m_tilde);
double kinetic_energy(std::span<const Complex> amplitudes, const Lattice& lattice,
                      double m_tilde);

/// Step index nearest to `t_tilde`; throws InvalidParameter outside [0, t_final].
std::size_t snapshot_step(double t_tilde, const Lattice& lattice);

/// Integrates the equation from `initial` over the whole lattice time span.
///
/// Snapshot requests snap to the nearest step. Throws BoundaryReached when an
/// outermost interior node exceeds the guard density and NumericalFailure on
/// non-finite amplitudes.
RunRecord evolve(const WaveState& initial, const SetupParams& params,
                 const Lattice& lattice, const StepScheme& scheme,
                 std::vector<double> snapshot_times, const EvolveOptions& options = {});

}  // namespace snewton
