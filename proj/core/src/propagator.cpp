#include "snewton/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "snewton/error.hpp"
#include "snewton/tridiagonal.hpp"

namespace snewton {

void StepScheme::validate() const {
  if (picard_iterations < 1 || picard_iterations > 8) {
    throw InvalidParameter("picard_iterations must lie in [1, 8], got " +
                           std::to_string(picard_iterations));
  }
}

const Snapshot* RunRecord::snapshot_at(double t_tilde) const noexcept {
  const double tolerance = 0.5 * lattice.dt * (1.0 + 1e-9);
  for (const Snapshot& snapshot : snapshots) {
    if (std::abs(snapshot.state.t_tilde - t_tilde) <= tolerance) return &snapshot;
  }
  return nullptr;
}

CrankNicolsonStepper::CrankNicolsonStepper(const Lattice& lattice, double m_tilde)
    : n_(lattice.n_points >= 2 ? lattice.n_points - 2 : 0), dt_(lattice.dt) {
  if (!(m_tilde > 0.0) || !std::isfinite(m_tilde)) {
    throw InvalidParameter("m_tilde must be positive for the kinetic operator");
  }
  hopping_ = 1.0 / (2.0 * m_tilde * lattice.dx * lattice.dx);
  const Complex off(0.0, -0.5 * dt_ * hopping_);
  lower_.assign(n_, off);
  upper_.assign(n_, off);
  diag_.resize(n_);
  rhs_.resize(n_);
  solution_.resize(n_);
  scratch_.resize(n_);
}

void CrankNicolsonStepper::step(std::span<const Complex> in,
                                std::span<const double> potential,
                                std::span<Complex> out) {
  if (in.size() != n_ + 2 || potential.size() != n_ + 2 || out.size() != n_ + 2) {
    throw InvalidParameter("stepper: state or potential length does not match the lattice");
  }
  const double half_dt = 0.5 * dt_;
  const Complex hop(0.0, half_dt * hopping_);  // i dt/2 * h
  for (std::size_t k = 0; k < n_; ++k) {
    const std::size_t i = k + 1;
    const Complex onsite(0.0, half_dt * (2.0 * hopping_ + potential[i]));
    diag_[k] = 1.0 + onsite;
    const Complex left = k > 0 ? in[i - 1] : Complex{};
    const Complex right = k + 1 < n_ ? in[i + 1] : Complex{};
    rhs_[k] = (1.0 - onsite) * in[i] + hop * (left + right);
  }
  solve_tridiagonal(lower_, diag_, upper_, rhs_, solution_, scratch_);
  out.front() = 0.0;
  out.back() = 0.0;
  std::copy(solution_.begin(), solution_.end(), out.begin() + 1);
}

WaveState cn_step(const WaveState& state, const PotentialField& potential,
                  const Lattice& lattice, double m_tilde) {
  if (potential.values.size() != lattice.n_points || state.size() != lattice.n_points) {
    throw InvalidParameter("cn_step: state and potential must be sampled on the lattice");
  }
  CrankNicolsonStepper stepper(lattice, m_tilde);
  WaveState next;
  next.amplitudes.resize(state.size());
  next.t_tilde = state.t_tilde + lattice.dt;
  stepper.step(state.amplitudes, potential.values, next.amplitudes);
  return next;
}

double kinetic_energy(std::span<const Complex> amplitudes, const Lattice& lattice,
                      double m_tilde) {
  if (!(m_tilde > 0.0)) throw InvalidParameter("m_tilde must be positive");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < amplitudes.size(); ++i) {
    sum += std::norm(amplitudes[i + 1] - amplitudes[i]);
  }
  return sum / (2.0 * m_tilde * lattice.dx);
}

double kinetic_energy(const WaveState& state, const Lattice& lattice, double m_tilde) {
  return kinetic_energy(state.amplitudes, lattice, m_tilde);
}

std::size_t snapshot_step(double t_tilde, const Lattice& lattice) {
  const double half = 0.5 * lattice.dt;
  if (!std::isfinite(t_tilde) || t_tilde < -half || t_tilde > lattice.t_final + half) {
    throw InvalidParameter("snapshot time " + std::to_string(t_tilde) +
                           " lies outside [0, " + std::to_string(lattice.t_final) + "]");
  }
  const auto step = static_cast<long long>(std::llround(t_tilde / lattice.dt));
  return std::min(static_cast<std::size_t>(std::max(step, 0LL)), lattice.n_steps);
}

namespace {

void check_guard(std::span<const Complex> psi, double guard, double t) {
  const std::size_t n = psi.size();
  const double left = std::norm(psi[1]);
  const double right = std::norm(psi[n - 2]);
  if (left > guard || right > guard) {
    char message[160];
    std::snprintf(message, sizeof message,
                  "wave packet reached the domain boundary at t = %.6g (edge density %.3e > %.3e)",
                  t, std::max(left, right), guard);
    throw BoundaryReached(message, t);
  }
}

}  // namespace

RunRecord evolve(const WaveState& initial, const SetupParams& params,
                 const Lattice& lattice, const StepScheme& scheme,
                 std::vector<double> snapshot_times, const EvolveOptions& options) {
  params.validate();
  scheme.validate();
  if (initial.size() != lattice.n_points) {
    throw InvalidParameter("initial state does not match the lattice");
  }
  if (!(options.guard_density > 0.0)) {
    throw InvalidParameter("guard density must be positive");
  }

  std::vector<std::size_t> wanted;
  wanted.reserve(snapshot_times.size());
  for (double t : snapshot_times) wanted.push_back(snapshot_step(t, lattice));
  std::sort(wanted.begin(), wanted.end());
  if (std::adjacent_find(wanted.begin(), wanted.end()) != wanted.end()) {
    throw InvalidParameter("two snapshot requests snap to the same time step");
  }

  RunRecord record;
  record.setup = params;
  record.lattice = lattice;
  record.scheme = scheme;
  const std::size_t levels = lattice.n_steps + 1;
  record.times.reserve(levels);
  record.norms.reserve(levels);
  record.kinetic.reserve(levels);
  record.potential.reserve(levels);
  record.energies.reserve(levels);

  const std::size_t n = lattice.n_points;
  const double coupling = params.coupling();
  std::unique_ptr<SelfPotentialEvaluator> evaluator;
  if (params.gravity_on) {
    evaluator = std::make_unique<SelfPotentialEvaluator>(lattice, params.epsilon,
                                                         options.potential_method);
  }
  // With gravity off the potential stays identically zero.
  auto build_potential = [&](std::span<const Complex> psi, std::span<double> out) {
    if (evaluator) evaluator->evaluate(psi, coupling, out);
  };

  std::vector<Complex> psi = initial.amplitudes;
  std::vector<Complex> next(n);
  std::vector<double> v_start(n, 0.0);
  std::vector<double> v_trial(n, 0.0);
  std::vector<double> v_mid(n, 0.0);
  CrankNicolsonStepper stepper(lattice, params.m_tilde);

  auto next_wanted = wanted.begin();
  auto record_level = [&](std::size_t step) {
    const double t = static_cast<double>(step) * lattice.dt;
    const double norm = discrete_norm(psi, lattice);
    if (!std::isfinite(norm)) {
      throw NumericalFailure("non-finite amplitude at t = " + std::to_string(t));
    }
    const double kinetic = kinetic_energy(psi, lattice, params.m_tilde);
    const double potential = potential_energy(psi, v_start, lattice);
    record.times.push_back(t);
    record.norms.push_back(norm);
    record.kinetic.push_back(kinetic);
    record.potential.push_back(potential);
    record.energies.push_back(kinetic + potential);
    check_guard(psi, options.guard_density, t);
    if (next_wanted != wanted.end() && *next_wanted == step) {
      Snapshot snapshot;
      snapshot.state.amplitudes = psi;
      snapshot.state.t_tilde = t;
      if (params.gravity_on && options.record_potentials) snapshot.potential = v_start;
      record.snapshots.push_back(std::move(snapshot));
      ++next_wanted;
    }
  };

  build_potential(psi, v_start);
  record_level(0);
  for (std::size_t step = 1; step <= lattice.n_steps; ++step) {
    stepper.step(psi, v_start, next);
    if (scheme.mode == CouplingMode::predictor_corrector && evaluator) {
      for (int pass = 0; pass < scheme.picard_iterations; ++pass) {
        build_potential(next, v_trial);
        for (std::size_t i = 0; i < n; ++i) v_mid[i] = 0.5 * (v_start[i] + v_trial[i]);
        stepper.step(psi, v_mid, next);
      }
    }
    psi.swap(next);
    build_potential(psi, v_start);
    record_level(step);
  }
  return record;
}

}  // namespace snewton
