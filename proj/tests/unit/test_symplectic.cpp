#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hambvp/symmetry.hpp"
#include "hambvp/symplectic.hpp"
#include "hambvp/systems.hpp"

using namespace hambvp;

namespace {
const ParameterVector kNoMu{};
}

TEST_CASE("phase point validation") {
  CHECK_THROWS_AS(PhasePoint(Vector(1), Vector(2)), Error);
  CHECK_THROWS_AS(PhasePoint(Vector(0), Vector(0)), Error);
  CHECK_THROWS_AS(PhasePoint(NAN, 0.0), Error);
  const PhasePoint z(1.5, -2.0);
  CHECK(z.dim() == 1);
  CHECK(z.stacked()[0] == 1.5);
  CHECK(z.stacked()[1] == -2.0);
  const PhasePoint w = PhasePoint::from_stacked(z.stacked());
  CHECK(w.x()[0] == 1.5);
  CHECK(w.y()[0] == -2.0);
}

TEST_CASE("leapfrog step matches the kick-drift-kick formula") {
  // H = (x^2 + y^2) / 2
  const double h = 0.1;
  const double y_half = 0.0 - 0.5 * h * 1.0;
  const double x1 = 1.0 + h * y_half;
  const double y1 = y_half - 0.5 * h * x1;
  const PhasePoint z = leapfrog_step(harmonic_oscillator(), kNoMu, PhasePoint(1.0, 0.0), h);
  CHECK(z.x()[0] == doctest::Approx(x1).epsilon(1e-15));
  CHECK(z.y()[0] == doctest::Approx(y1).epsilon(1e-15));
}

TEST_CASE("harmonic flow is a quarter rotation") {
  const double t = std::numbers::pi / 2;
  const PhasePoint z = flow(harmonic_oscillator(), kNoMu, PhasePoint(1.0, 0.0), t, 1e-3);
  CHECK(std::abs(z.x()[0] - 0.0) < 1e-5);
  CHECK(std::abs(z.y()[0] + 1.0) < 1e-5);

  const PhasePoint c = flow(harmonic_oscillator(), kNoMu, PhasePoint(1.0, 0.0), t, 0.1);
  CHECK(std::abs(c.x()[0]) < 0.01);
  CHECK(std::abs(c.y()[0] + 1.0) < 0.01);
}

TEST_CASE("second order convergence of the flow") {
  const double t = 1.0;
  auto err = [&](double dt) {
    const PhasePoint z = flow(harmonic_oscillator(), kNoMu, PhasePoint(1.0, 0.0), t, dt);
    return std::hypot(z.x()[0] - std::cos(t), z.y()[0] + std::sin(t));
  };
  const double ratio = err(0.02) / err(0.01);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("tau = 0 returns the start and fractional steps are rescaled") {
  const PhasePoint z0(0.3, -0.7);
  const PhasePoint a = flow(harmonic_oscillator(), kNoMu, z0, 0.0, 0.1);
  CHECK(a.x()[0] == 0.3);
  CHECK(a.y()[0] == -0.7);
  // 0.25 / 0.1 rounds to 3 steps of 0.08333...
  const auto traj = trajectory(harmonic_oscillator(), kNoMu, z0, 0.25, 0.1);
  CHECK(traj.size() == 4);
  const PhasePoint b = flow(harmonic_oscillator(), kNoMu, z0, 0.25, 0.25 / 3.0);
  CHECK(traj.back().x()[0] == doctest::Approx(b.x()[0]).epsilon(1e-15));
}

TEST_CASE("energy drift stays bounded") {
  const double drift = max_energy_drift(harmonic_oscillator(), kNoMu, PhasePoint(1.0, 0.0), 100.0, 0.05);
  CHECK(drift < 1e-3);
}

TEST_CASE("non-finite states and domain exits are reported") {
  CHECK_THROWS_AS(flow(harmonic_oscillator(), kNoMu, PhasePoint(1.0, 0.0), 1.0, 0.0), Error);
  const auto fam = periodic_pitchfork_hamiltonian(true);
  CHECK_THROWS_AS(flow(fam, ParameterVector{-53.306}, PhasePoint(1.0, 29.0), 1.0, 1e-3), DomainError);

  HamiltonianFamily blow = harmonic_oscillator();
  blow.grad_V = [](const ParameterVector&, const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> out) {
    out = x.array().exp().exp().exp();
  };
  try {
    flow(blow, kNoMu, PhasePoint(5.0, 0.0), 1.0, 0.1);
    FAIL("expected IntegrationError");
  } catch (const IntegrationError& e) {
    CHECK(!e.stage.empty());
  }
}

TEST_CASE("map wrapper and its jacobian") {
  const auto map = as_map(harmonic_oscillator(), std::numbers::pi / 2, 1e-3);
  const PhasePoint z = map(kNoMu, PhasePoint(0.0, 1.0));
  CHECK(std::abs(z.x()[0] - 1.0) < 1e-5);
  const Matrix J = fd_jacobian(map, kNoMu, PhasePoint(0.2, 0.1));
  Matrix R(2, 2);
  R << 0.0, 1.0, -1.0, 0.0;
  CHECK((J - R).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("symplecticity check") {
  const auto map = as_map(cusp_hamiltonian(), 4.0, 0.1);
  const auto c = check_symplectic(map, ParameterVector{-0.5, 1.0}, PhasePoint(0.2, 0.3), 1e-6);
  CHECK(c.ok);
  CHECK(c.defect < 1e-6);
  CHECK(check_symplectic(identity_map(2), kNoMu, PhasePoint(Vector::Ones(2), Vector::Zero(2)), 1e-12).ok);

  SymplecticMapFamily squash;
  squash.name = "squash";
  squash.n = 1;
  squash.apply = [](const ParameterVector&, const PhasePoint& z) {
    return PhasePoint(0.5 * z.x()[0], z.y()[0]);
  };
  const auto bad = check_symplectic(squash, kNoMu, PhasePoint(0.1, 0.1), 1e-6);
  CHECK_FALSE(bad.ok);
  CHECK(bad.defect == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("standard omega") {
  const Matrix O = standard_omega(2);
  CHECK(O(0, 2) == 1.0);
  CHECK(O(2, 0) == -1.0);
  CHECK((O.transpose() + O).norm() == 0.0);
}
