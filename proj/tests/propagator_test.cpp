#include "snewton/propagator.hpp"

#include <cmath>

#include "doctest.h"
#include "snewton/error.hpp"
#include "snewton/oracles.hpp"

using namespace snewton;

namespace {

double l2_distance(const WaveState& a, const WaveState& b, const Lattice& lat) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a.amplitudes[i] - b.amplitudes[i]);
  return std::sqrt(sum * lat.dx);
}

PotentialField zero_potential(const Lattice& lat) {
  return PotentialField{std::vector<double>(lat.n_points, 0.0), 0.0};
}

double max_parity_defect(const WaveState& s) {
  double worst = 0.0;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(s.amplitudes[i] - s.amplitudes[n - 1 - i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("free single Gaussian follows the analytic spreading") {
  const Lattice lat = default_lattice();
  WaveState psi = prepare_gaussian(lat, 0.0, 2.0);
  const auto v = zero_potential(lat);
  CrankNicolsonStepper stepper(lat, 0.2);
  WaveState next = psi;
  for (int k = 0; k < 890; ++k) {
    stepper.step(psi.amplitudes, v.values, next.amplitudes);
    std::swap(psi, next);
  }
  const WaveState exact = oracles::sample_free_gaussian(lat, 8.9, 0.0, 2.0, 0.2);
  CHECK(l2_distance(psi, exact, lat) < 1e-2);
}

TEST_CASE("cn_step is unitary and continuous in dt") {
  const Lattice lat = default_lattice();
  SetupParams p;
  const WaveState psi = prepare_double_gaussian(lat, p);
  const PotentialField v = self_potential_fast(psi, lat, 0.6, p.epsilon);

  const WaveState next = cn_step(psi, v, lat, 0.6);
  CHECK(std::abs(discrete_norm(next, lat) - discrete_norm(psi, lat)) < 1e-12);
  CHECK(next.t_tilde == doctest::Approx(lat.dt));

  Lattice tiny = make_lattice(lat.x_min, lat.x_max, lat.n_points, 1e-8, 1);
  const WaveState nudged = cn_step(psi, v, tiny, 0.6);
  double change = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    change = std::max(change, std::abs(nudged.amplitudes[i] - psi.amplitudes[i]));
  }
  CHECK(change < 1e-6);

  CHECK_THROWS_AS(cn_step(psi, v, lat, 0.0), InvalidParameter);
  CHECK_THROWS_AS(cn_step(psi, v, lat, -1.0), InvalidParameter);
  PotentialField short_v{std::vector<double>(10, 0.0), 0.0};
  CHECK_THROWS_AS(cn_step(psi, short_v, lat, 0.5), InvalidParameter);
}

TEST_CASE("kinetic energy") {
  const Lattice lat = default_lattice();
  const WaveState g = prepare_gaussian(lat, 0.0, 2.0);
  // 1 / (4 m sigma^2)
  CHECK(kinetic_energy(g, lat, 0.5) == doctest::Approx(0.125).epsilon(0.01));
  CHECK(kinetic_energy(g, lat, 1.0) == 0.5 * kinetic_energy(g, lat, 0.5));
  WaveState zero;
  zero.amplitudes.assign(lat.n_points, Complex{});
  CHECK(kinetic_energy(zero, lat, 0.5) == 0.0);
}

TEST_CASE("snapshot alignment") {
  const Lattice lat = default_lattice();
  CHECK(snapshot_step(8.9, lat) == 890);
  CHECK(snapshot_step(8.904, lat) == 890);
  CHECK(snapshot_step(0.0, lat) == 0);
  CHECK(snapshot_step(10.0, lat) == 1000);
  CHECK_THROWS_AS(snapshot_step(10.5, lat), InvalidParameter);
  CHECK_THROWS_AS(snapshot_step(-0.5, lat), InvalidParameter);
}

TEST_CASE("gravity-off evolution") {
  const Lattice lat = default_lattice();
  SetupParams p;
  p.m_tilde = 0.5;
  p.gravity_on = false;
  const WaveState psi = prepare_double_gaussian(lat, p);
  const RunRecord r = evolve(psi, p, lat, StepScheme{}, {0.0, 8.9, 4.0});
  REQUIRE(r.snapshots.size() == 3);
  CHECK(r.snapshots[0].state.t_tilde == 0.0);
  CHECK(r.snapshots[1].state.t_tilde == doctest::Approx(4.0));
  CHECK(r.snapshots[2].state.t_tilde == doctest::Approx(8.9));
  CHECK(r.snapshots[2].potential.empty());
  CHECK(r.norms.size() == lat.n_steps + 1);
  for (double n : r.norms) CHECK(std::abs(n - 1.0) < 1e-8);
  CHECK(r.snapshot_at(8.9) == &r.snapshots[2]);
  CHECK(r.snapshot_at(7.0) == nullptr);
  // No potential: the energy is the conserved discrete kinetic energy.
  for (double e : r.energies) CHECK(e == doctest::Approx(r.energies.front()).epsilon(1e-10));
}

TEST_CASE("duplicate snapshot requests") {
  const Lattice lat = make_lattice(-40.0, 40.0, 801, 1.0, 100);
  SetupParams p;
  const WaveState psi = prepare_double_gaussian(lat, p);
  CHECK_THROWS_AS(evolve(psi, p, lat, StepScheme{}, {0.5, 0.501}), InvalidParameter);
  StepScheme bad;
  bad.picard_iterations = 9;
  CHECK_THROWS_AS(evolve(psi, p, lat, bad, {}), InvalidParameter);
}

TEST_CASE("boundary guard trips on an undersized domain") {
  const Lattice lat = make_lattice(-20.0, 20.0, 401, 10.0, 1000);
  SetupParams p;
  p.m_tilde = 0.2;
  p.gravity_on = false;
  const WaveState psi = prepare_double_gaussian(lat, p);
  try {
    evolve(psi, p, lat, StepScheme{}, {});
    FAIL("expected BoundaryReached");
  } catch (const BoundaryReached& e) {
    CHECK(e.t_tilde() > 0.0);
    CHECK(e.t_tilde() < 10.0);
    CHECK(e.category() == ErrorCategory::boundary_reached);
  }
}

TEST_CASE("zero coupling reproduces the free run bit for bit") {
  const Lattice lat = default_lattice();
  SetupParams off;
  off.m_tilde = 0.5;
  off.gravity_on = false;
  SetupParams zeroed = off;
  zeroed.gravity_on = true;
  zeroed.coupling_scale = 0.0;
  const WaveState psi = prepare_double_gaussian(lat, off);
  for (CouplingMode mode : {CouplingMode::frozen_potential, CouplingMode::predictor_corrector}) {
    StepScheme scheme{mode, 2};
    const RunRecord a = evolve(psi, off, lat, scheme, {10.0});
    const RunRecord b = evolve(psi, zeroed, lat, scheme, {10.0});
    CHECK(a.snapshots[0].state.amplitudes == b.snapshots[0].state.amplitudes);
    CHECK(a.norms == b.norms);
  }
}

TEST_CASE("self-gravitating run keeps norm and parity") {
  const Lattice lat = default_lattice();
  SetupParams p;
  p.m_tilde = 0.5;
  const WaveState psi = prepare_double_gaussian(lat, p);
  const RunRecord r = evolve(psi, p, lat, StepScheme{}, {2.0, 5.0, 10.0});
  for (double n : r.norms) CHECK(std::abs(n - 1.0) < 1e-8);
  for (const Snapshot& s : r.snapshots) {
    CHECK(max_parity_defect(s.state) < 1e-10);
    CHECK(s.potential.size() == lat.n_points);
  }
}

TEST_CASE("energy conservation by coupling mode") {
  const auto drift = [](std::size_t steps, CouplingMode mode) {
    const Lattice lat = make_lattice(-70.0, 70.0, 2001, 10.0, steps);
    SetupParams p;
    p.m_tilde = 0.5;
    const WaveState psi = prepare_double_gaussian(lat, p);
    const RunRecord r = evolve(psi, p, lat, StepScheme{mode, 2}, {});
    double worst = 0.0;
    for (double e : r.energies) worst = std::max(worst, std::abs(e - r.energies.front()));
    return worst / std::abs(r.energies.front());
  };

  CHECK(drift(1000, CouplingMode::predictor_corrector) < 1e-3);

  const double d1 = drift(1000, CouplingMode::frozen_potential);
  const double d2 = drift(2000, CouplingMode::frozen_potential);
  const double d4 = drift(4000, CouplingMode::frozen_potential);
  MESSAGE("frozen-potential drift: " << d1 << ", " << d2 << ", " << d4);
  CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.15));
  CHECK(d2 / d4 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("predictor-corrector equals frozen without gravity") {
  const Lattice lat = make_lattice(-40.0, 40.0, 801, 2.0, 200);
  SetupParams p;
  p.m_tilde = 0.5;
  p.gravity_on = false;
  const WaveState psi = prepare_double_gaussian(lat, p);
  const RunRecord a = evolve(psi, p, lat, StepScheme{CouplingMode::frozen_potential, 1}, {2.0});
  const RunRecord b = evolve(psi, p, lat, StepScheme{CouplingMode::predictor_corrector, 3}, {2.0});
  CHECK(a.snapshots[0].state.amplitudes == b.snapshots[0].state.amplitudes);
}

TEST_CASE("direct and fast potentials give the same trajectory") {
  const Lattice lat = make_lattice(-40.0, 40.0, 801, 2.0, 200);
  SetupParams p;
  p.m_tilde = 0.6;
  const WaveState psi = prepare_double_gaussian(lat, p);
  EvolveOptions direct;
  direct.potential_method = PotentialMethod::direct;
  EvolveOptions fast;
  fast.potential_method = PotentialMethod::fast;
  const RunRecord a = evolve(psi, p, lat, StepScheme{}, {2.0}, direct);
  const RunRecord b = evolve(psi, p, lat, StepScheme{}, {2.0}, fast);
  CHECK(l2_distance(a.snapshots[0].state, b.snapshots[0].state, lat) < 1e-10);
}
