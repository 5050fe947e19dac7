#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dwbec/meanfield.hpp"

using namespace dwbec;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("classical energy: hand-substituted values") {
  MeanFieldParams p{{1.0, 0.0, 0.0, 0.0}, 2.0, 2.0};
  CHECK(classical_energy(p, {0.0, 0.0, 0.0, 0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-15));

  MeanFieldParams q{{0.0, 20.0, 20.0, 20.0}, 3.0, 3.0};
  CHECK(classical_energy(q, {1.0, -1.0, 0.3, -0.2, 0.0}) == doctest::Approx(180.0).epsilon(1e-15));

  // Full imbalance for A: its tunneling term vanishes.
  MeanFieldParams r{{1.0, 0.0, 0.0, 0.0}, 2.0, 2.0};
  CHECK(classical_energy(r, {1.0, 0.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(classical_energy(r, {1.1, 0.0, 0.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("equations of motion: direct readouts") {
  MeanFieldParams p{{1.0, 20.0, 15.0, 25.0}, 3.0, 5.0};
  const MeanFieldState s{0.4, -0.7, 0.0, 0.0, 0.0};
  const auto d = equations_of_motion(p, s);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 0.0);
  CHECK(d[2] == doctest::Approx(-2.0 * 0.4 / std::sqrt(9.0 - 4 * 0.16) + 2 * 15.0 * 0.4 +
                                2 * 20.0 * -0.7));
  CHECK(d[3] == doctest::Approx(-2.0 * -0.7 / std::sqrt(25.0 - 4 * 0.49) + 2 * 25.0 * -0.7 +
                                2 * 20.0 * 0.4));

  MeanFieldParams q{{1.0, 20.0, 20.0, 20.0}, 3.0, 5.0};
  const auto e = equations_of_motion(q, {0.0, 0.0, kPi / 2, kPi / 2, 0.0});
  CHECK(e[0] == doctest::Approx(1.5));
  CHECK(e[1] == doctest::Approx(2.5));
  CHECK(std::abs(e[2]) < 1e-15);
  CHECK(std::abs(e[3]) < 1e-15);

  MeanFieldParams frozen{{0.0, 20.0, 20.0, 20.0}, 3.0, 3.0};
  const auto f = equations_of_motion(frozen, {0.9, -0.2, 1.0, 2.0, 0.0});
  CHECK(f[0] == 0.0);
  CHECK(f[1] == 0.0);
}

TEST_CASE("equations of motion reject the full-imbalance boundary") {
  MeanFieldParams p{{1.0, 20.0, 20.0, 20.0}, 3.0, 3.0};
  try {
    equations_of_motion(p, {1.5, 0.0, 0.0, 0.0, 4.25});
    FAIL("expected SingularityError");
  } catch (const SingularityError& e) {
    CHECK(e.time() == 4.25);
  }
  CHECK_THROWS_AS(equations_of_motion(p, {0.0, -1.5 * (1 - 1e-12), 0.0, 0.0, 0.0}),
                  SingularityError);
  CHECK_NOTHROW(equations_of_motion(p, {1.5 * (1 - 1e-6), 0.0, 0.0, 0.0, 0.0}));
}

TEST_CASE("omega = 0 freezes the population differences") {
  MeanFieldParams p{{0.0, 20.0, 20.0, 20.0}, 3.0, 3.0};
  const auto traj = integrate(p, {0.8, -0.3, 0.1, 0.2, 0.0}, 2.0, 1e-3, {50});
  for (const auto& s : traj.samples) {
    CHECK(s.n_a == 0.8);
    CHECK(s.n_b == -0.3);
  }
  // phases advance linearly at 2 kappa_a n_a + 2 kappa n_b
  CHECK(traj.samples.back().theta_a ==
        doctest::Approx(0.1 + 2.0 * (2 * 20 * 0.8 + 2 * 20 * -0.3)).epsilon(1e-12));
}

TEST_CASE("symmetric start keeps n_B = -n_A") {
  MeanFieldParams p{{1.0, 20.0, 20.0, 20.0}, 5.0, 5.0};
  const auto traj = integrate(p, {1.3, -1.3, 0.0, 0.0, 0.0}, 5.0, 1e-4, {100});
  for (const auto& s : traj.samples) CHECK(std::abs(s.n_b + s.n_a) < 1e-8);
}

TEST_CASE("trajectory bookkeeping") {
  MeanFieldParams p{{1.0, 2.0, 1.0, 1.0}, 4.0, 4.0};
  const MeanFieldState s0{0.5, 0.2, 0.1, -0.1, 0.0};
  const auto traj = integrate(p, s0, 1.0, 0.01, {10});
  CHECK(traj.energy0 == classical_energy(p, s0));
  REQUIRE(traj.samples.size() == 11);
  CHECK(traj.samples.back().t == 1.0);
  for (std::size_t i = 1; i < traj.samples.size(); ++i)
    CHECK(traj.samples[i].t > traj.samples[i - 1].t);

  CHECK_THROWS_AS(integrate(p, s0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate(p, {2.0, 0.0, 0.0, 0.0, 0.0}, 1.0, 0.01), SingularityError);
}

TEST_CASE("large steps record a stability warning") {
  MeanFieldParams p{{1.0, 20.0, 20.0, 20.0}, 9.0, 9.0};
  const auto traj = integrate(p, {2.0, 1.0, 0.0, 0.0, 0.0}, 0.1, 0.01);
  REQUIRE_FALSE(traj.warnings.empty());
  CHECK(traj.warnings.front().t == 0.0);
  CHECK(integrate(p, {2.0, 1.0, 0.0, 0.0, 0.0}, 0.1, 1e-5).warnings.empty());
}

TEST_CASE("energy conservation and time reversal on random interior starts") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> frac(-0.7, 0.7), phase(-kPi, kPi);
  MeanFieldParams p{{1.0, 20.0, 20.0, 20.0}, 3.0, 3.0};
  for (int trial = 0; trial < 5; ++trial) {
    const MeanFieldState s0{frac(rng) * 1.5, frac(rng) * 1.5, phase(rng), phase(rng), 0.0};
    const auto fwd = integrate(p, s0, 2.0, 1e-4, {1000});
    for (const auto& s : fwd.samples)
      CHECK(std::abs(classical_energy(p, s) - fwd.energy0) <= 1e-8 * std::abs(fwd.energy0));

    auto back = fwd.samples.back();
    back.theta_a = -back.theta_a;
    back.theta_b = -back.theta_b;
    back.t = 0.0;
    const auto rev = integrate(p, back, 2.0, 1e-4, {20000});
    CHECK(std::abs(rev.samples.back().n_a - s0.n_a) < 1e-6);
    CHECK(std::abs(rev.samples.back().n_b - s0.n_b) < 1e-6);
  }
}

TEST_CASE("pure Rabi limit: doubling omega halves the time scale") {
  const MeanFieldState s0{1.0, -0.5, 0.3, 0.0, 0.0};
  MeanFieldParams slow{{1.0, 0.0, 0.0, 0.0}, 3.0, 3.0};
  MeanFieldParams fast{{2.0, 0.0, 0.0, 0.0}, 3.0, 3.0};
  const auto a = integrate(slow, s0, 4.0, 1e-3, {10});
  const auto b = integrate(fast, s0, 2.0, 5e-4, {10});
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(std::abs(a.samples[i].n_a - b.samples[i].n_a) < 1e-9);
    CHECK(std::abs(a.samples[i].n_b - b.samples[i].n_b) < 1e-9);
  }
}

TEST_CASE("default initial state and oscillation period") {
  MeanFieldParams p{{1.0, 20.0, 20.0, 20.0}, 5.0, 5.0};
  const auto s0 = default_initial_state(p);
  CHECK(s0.n_a == doctest::Approx(2.5 * 0.999));
  CHECK(s0.n_b == doctest::Approx(-2.5 * 0.999));
  CHECK_THROWS_AS(default_initial_state(p, 0.0), std::invalid_argument);

  // With kappa = kappa_a = kappa_b and n_B = -n_A the interaction terms cancel:
  // the POD oscillates at the bare Rabi period 2 pi / omega.
  const auto traj = integrate(p, s0, 15.0, 1e-3, {1});
  CHECK(oscillation_period(traj, Component::A) == doctest::Approx(2 * kPi).epsilon(1e-4));
}
