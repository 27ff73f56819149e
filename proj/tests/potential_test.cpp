#include "snewton/potential.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "snewton/error.hpp"

using namespace snewton;

namespace {

WaveState random_state(const Lattice& lat, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  WaveState s;
  s.amplitudes.resize(lat.n_points);
  for (auto& a : s.amplitudes) a = Complex(g(rng), g(rng));
  const double norm = discrete_norm(s, lat);
  for (auto& a : s.amplitudes) a /= std::sqrt(norm);
  return s;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("zero state has zero potential") {
  const Lattice lat = make_lattice(-10.0, 10.0, 101, 1.0, 1);
  WaveState zero;
  zero.amplitudes.assign(lat.n_points, Complex{});
  for (double v : self_potential_direct(zero, lat, 0.7, 0.01).values) CHECK(v == 0.0);
  for (double v : self_potential_fast(zero, lat, 0.7, 0.01).values) CHECK(v == 0.0);
  CHECK(potential_energy(zero, self_potential_direct(zero, lat, 0.7, 0.01), lat) == 0.0);
}

TEST_CASE("point mass potential") {
  // dx = 1 with a node at exactly x = 0.
  const Lattice lat = make_lattice(-8.0, 8.0, 17, 1.0, 1);
  WaveState s;
  s.amplitudes.assign(lat.n_points, Complex{});
  s.amplitudes[8] = 1.0;  // |psi|^2 dx = 1 at x = 0
  const auto direct = self_potential_direct(s, lat, 1.0, 0.01);
  CHECK(direct.values[9] == doctest::Approx(-0.999950003749688).epsilon(1e-14));
  CHECK(direct.values[8] == doctest::Approx(-100.0).epsilon(1e-14));
  for (std::size_t i = 0; i < lat.n_points; ++i) {
    const double x = lat.node(i);
    CHECK(direct.values[i] == doctest::Approx(-1.0 / std::sqrt(x * x + 1e-4)).epsilon(1e-14));
  }
  const auto fast = self_potential_fast(s, lat, 1.0, 0.01);
  CHECK(max_abs_diff(fast.values, direct.values) < 1e-10 * max_abs(direct.values));
}

TEST_CASE("potential scales with m^2") {
  const Lattice lat = make_lattice(-20.0, 20.0, 201, 1.0, 1);
  SetupParams p;
  const WaveState s = prepare_double_gaussian(lat, p);
  const auto v1 = self_potential_direct(s, lat, 0.3, 0.01);
  const auto v2 = self_potential_direct(s, lat, 0.6, 0.01);
  for (std::size_t i = 0; i < lat.n_points; ++i) CHECK(v2.values[i] == 4.0 * v1.values[i]);
  CHECK(potential_energy(s, v2, lat) == doctest::Approx(4.0 * potential_energy(s, v1, lat)).epsilon(1e-14));
}

TEST_CASE("attractive everywhere") {
  const Lattice lat = make_lattice(-20.0, 20.0, 401, 1.0, 1);
  std::mt19937_64 rng(7);
  const WaveState s = random_state(lat, rng);
  for (double v : self_potential_direct(s, lat, 0.5, 0.01).values) CHECK(v <= 0.0);
}

TEST_CASE("fast convolution agrees with direct summation") {
  std::mt19937_64 rng(2024);
  const Lattice lat = make_lattice(-9.0, 9.0, 256, 1.0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const WaveState s = random_state(lat, rng);
    const auto direct = self_potential_direct(s, lat, 0.6, 0.01);
    const auto fast = self_potential_fast(s, lat, 0.6, 0.01);
    CHECK(max_abs_diff(fast.values, direct.values) < 1e-10 * max_abs(direct.values));
  }

  SUBCASE("reference state on the default lattice") {
    const Lattice def = default_lattice();
    const WaveState s = prepare_double_gaussian(def, SetupParams{});
    const auto direct = self_potential_direct(s, def, 0.5, 0.01);
    const auto fast = self_potential_fast(s, def, 0.5, 0.01);
    CHECK(max_abs_diff(fast.values, direct.values) < 1e-10 * max_abs(direct.values));
  }
}

TEST_CASE("symmetric density gives a symmetric potential") {
  const Lattice lat = default_lattice();
  const WaveState s = prepare_double_gaussian(lat, SetupParams{});
  for (auto v : {self_potential_direct(s, lat, 0.6, 0.01), self_potential_fast(s, lat, 0.6, 0.01)}) {
    for (std::size_t i = 0; i < lat.n_points; ++i) {
      CHECK(std::abs(v.values[i] - v.values[lat.n_points - 1 - i]) < 1e-12);
    }
  }
}

TEST_CASE("single Gaussian potential is deepest at its centre") {
  const Lattice lat = make_lattice(-30.0, 30.0, 601, 1.0, 1);
  const WaveState s = prepare_gaussian(lat, 3.3, 2.0);
  const auto v = self_potential_fast(s, lat, 0.5, 0.01);
  const auto it = std::min_element(v.values.begin(), v.values.end());
  const double x_min = lat.node(static_cast<std::size_t>(it - v.values.begin()));
  CHECK(std::abs(x_min - 3.3) <= lat.dx);
}

TEST_CASE("regularization only acts at short range") {
  // On a lattice with dx >> eps, changing eps alters the j == i term alone;
  // nodes where the density is negligible keep their potential.
  const Lattice lat = default_lattice();
  const WaveState s = prepare_double_gaussian(lat, SetupParams{});
  const auto coarse = self_potential_direct(s, lat, 0.5, 1e-2);
  const auto fine = self_potential_direct(s, lat, 0.5, 1e-3);
  const auto rho = density(s.amplitudes);
  const double rho_max = *std::max_element(rho.begin(), rho.end());
  const double scale = max_abs(coarse.values);
  double worst = 0.0;
  for (std::size_t i = 0; i < lat.n_points; ++i) {
    if (rho[i] < 1e-4 * rho_max) worst = std::max(worst, std::abs(fine.values[i] - coarse.values[i]));
  }
  CHECK(worst < 0.01 * scale);
}

TEST_CASE("invalid regularization") {
  const Lattice lat = make_lattice(-10.0, 10.0, 101, 1.0, 1);
  WaveState s;
  s.amplitudes.assign(lat.n_points, Complex{});
  CHECK_THROWS_AS(self_potential_direct(s, lat, 0.5, 0.0), InvalidParameter);
  CHECK_THROWS_AS(self_potential_fast(s, lat, 0.5, -1.0), InvalidParameter);
  CHECK_THROWS_AS(self_potential_direct(s, lat, -0.5, 0.01), InvalidParameter);
}

TEST_CASE("pair energy of two point masses") {
  // Nodes at x = 0 and x = 3 carry probability 1/2 each.
  const Lattice lat = make_lattice(-8.0, 8.0, 17, 1.0, 1);
  WaveState s;
  s.amplitudes.assign(lat.n_points, Complex{});
  s.amplitudes[8] = std::sqrt(0.5);
  s.amplitudes[11] = std::sqrt(0.5);
  const double eps = 0.01;

  // Brute-force pair enumeration, self pairs included.
  const double xs[2] = {0.0, 3.0};
  double pair_sum = 0.0;
  for (double xi : xs) {
    for (double xj : xs) pair_sum += -0.25 / std::sqrt((xi - xj) * (xi - xj) + eps * eps);
  }
  const double expected = 0.5 * pair_sum;
  CHECK(expected == doctest::Approx(-25.0833328703742).epsilon(1e-13));

  for (auto v : {self_potential_direct(s, lat, 1.0, eps), self_potential_fast(s, lat, 1.0, eps)}) {
    CHECK(potential_energy(s, v, lat) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("evaluator picks the method by size") {
  CHECK(resolve_method(PotentialMethod::automatic, 511) == PotentialMethod::direct);
  CHECK(resolve_method(PotentialMethod::automatic, 512) == PotentialMethod::fast);
  CHECK(resolve_method(PotentialMethod::direct, 4000) == PotentialMethod::direct);

  const Lattice lat = make_lattice(-20.0, 20.0, 300, 1.0, 1);
  const WaveState s = prepare_double_gaussian(lat, SetupParams{});
  SelfPotentialEvaluator direct(lat, 0.01, PotentialMethod::direct);
  SelfPotentialEvaluator fast(lat, 0.01, PotentialMethod::fast);
  const auto a = direct(s, 0.25);
  const auto b = fast(s, 0.25);
  CHECK(max_abs_diff(a.values, b.values) < 1e-10 * max_abs(a.values));
  CHECK(a.values == self_potential_direct(s, lat, 0.5, 0.01).values);
}
