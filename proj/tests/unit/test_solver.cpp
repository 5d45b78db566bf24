#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hambvp/solver.hpp"
#include "hambvp/symplectic.hpp"
#include "hambvp/systems.hpp"

using namespace hambvp;

namespace {

Vector v1(double a) { return Vector::Constant(1, a); }

RootProblem cubic_problem() {
  // u^3 - u + mu: three roots for |mu| < 2 / (3 sqrt 3).
  RootProblem p;
  p.name = "cubic";
  p.dim = 1;
  p.residual = [](const ParameterVector& mu, const Vector& u) {
    return v1(u[0] * u[0] * u[0] - u[0] + mu[0]);
  };
  return p;
}

std::vector<double> firsts(const std::vector<Sample>& s) {
  std::vector<double> out;
  for (const auto& x : s) out.push_back(x.unknowns[0]);
  return out;
}

}  // namespace

TEST_CASE("solver config validation") {
  SolverConfig c;
  c.validate();
  c.newton_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SolverConfig{};
  c.max_iters = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("seed helpers") {
  const auto s = seed_line(-1.0, 1.0, 5);
  REQUIRE(s.size() == 5);
  CHECK(s[2][0] == 0.0);
  const auto b = seed_box(Vector::Constant(2, 0.0), Vector::Constant(2, 1.0), 3);
  CHECK(b.size() == 9);
  const auto g = linspace_grid(0.0, 1.0, 3, 10.0, 20.0, 2);
  REQUIRE(g.size() == 2);
  REQUIRE(g[0].size() == 3);
  CHECK(g[1][2][0] == 1.0);
  CHECK(g[1][2][1] == 20.0);
}

TEST_CASE("Dirichlet harmonic oscillator gives y0 = X*") {
  const auto map = as_map(harmonic_oscillator(), std::numbers::pi / 2, 1e-3);
  SolverConfig cfg;
  const Solution s = solve(map, BoundaryCondition::dirichlet(v1(1.0), v1(2.0)), ParameterVector{}, v1(0.0), cfg);
  CHECK(s.unknowns[0] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(s.residual_norm <= cfg.newton_tol);
}

TEST_CASE("single branch along the harmonic family") {
  const auto map = as_map(harmonic_oscillator(), std::numbers::pi / 2, 1e-3);
  SolverConfig cfg;
  cfg.seed_grid = seed_line(-2.0, 2.0, 5);
  for (double c : {-1.0, -0.25, 0.5, 1.0}) {
    const auto roots = solve_multistart(shooting_problem(map, BoundaryCondition::dirichlet(v1(1.0), v1(c))),
                                        ParameterVector{}, cfg.seed_grid, cfg);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].unknowns[0] == doctest::Approx(c).epsilon(1e-5));
  }
}

TEST_CASE("full Newton for periodic conditions") {
  // Every point is periodic for the identity map.
  const RootProblem p = shooting_problem(identity_map(1), BoundaryCondition::periodic(1));
  CHECK(p.dim == 2);
  Vector g(2);
  g << 0.3, -0.4;
  SolverConfig cfg;
  const Solution s = solve(p, ParameterVector{}, g, cfg);
  CHECK(s.iterations == 0);
  CHECK(s.residual_norm == 0.0);
}

TEST_CASE("cusp system has three roots in its three-solution region") {
  // Reference roots from a dense sign-change scan with an independent leapfrog.
  const double ref[] = {-0.621480059860767, -0.150186172035151, 0.361385041927105};
  const auto map = as_map(cusp_hamiltonian(), 4.0, 0.1);
  const RootProblem p = shooting_problem(map, BoundaryCondition::dirichlet(v1(0.2), v1(0.2)));
  SolverConfig cfg;
  const auto roots = solve_multistart(p, ParameterVector{-0.5, 0.95}, seed_line(-1.1, 0.85, 21), cfg);
  std::vector<double> u;
  for (double r : firsts(roots))
    if (std::abs(r) <= 1.0) u.push_back(r);
  REQUIRE(u.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(u[i] - ref[i]) < 1e-8);
}

TEST_CASE("nonconvergence and singular jacobians") {
  RootProblem flat;
  flat.dim = 1;
  flat.residual = [](const ParameterVector&, const Vector&) { return v1(1.0); };
  SolverConfig cfg;
  CHECK_THROWS_AS(solve(flat, ParameterVector{}, v1(0.0), cfg), SingularJacobian);
  RootProblem p;
  p.dim = 1;
  p.residual = [](const ParameterVector&, const Vector& u) { return v1(u[0] * u[0] + 1.0); };
  try {
    solve(p, ParameterVector{}, v1(3.0), cfg);
    FAIL("expected failure");
  } catch (const NoConvergence& e) {
    CHECK(e.last_norm >= 1.0);
  } catch (const SingularJacobian&) {
  }
}

TEST_CASE("multistart deduplicates and flags near-singular roots") {
  SolverConfig cfg;
  const auto roots = solve_multistart(cubic_problem(), ParameterVector{0.0}, seed_line(-2.0, 2.0, 41), cfg);
  const auto u = firsts(roots);
  REQUIRE(u.size() == 3);
  CHECK(u[0] == doctest::Approx(-1.0));
  CHECK(u[1] == doctest::Approx(0.0));
  CHECK(u[2] == doctest::Approx(1.0));
  for (const auto& s : roots) CHECK((s.flags & kNearSingular) == 0);

  // Double root of u^2 + mu at mu = 0.
  RootProblem sq;
  sq.dim = 1;
  sq.residual = [](const ParameterVector& mu, const Vector& u) { return v1(u[0] * u[0] + mu[0]); };
  cfg.newton_tol = 1e-14;
  const auto fold = solve_multistart(sq, ParameterVector{0.0}, seed_line(-2.0, 2.0, 41), cfg);
  REQUIRE(fold.size() == 1);
  bool flagged = false;
  for (const auto& s : fold) flagged = flagged || (s.flags & kNearSingular);
  CHECK(flagged);
}

TEST_CASE("multistart result does not depend on seed order") {
  SolverConfig cfg;
  auto seeds = seed_line(-2.0, 2.0, 17);
  const auto a = firsts(solve_multistart(cubic_problem(), ParameterVector{0.1}, seeds, cfg));
  std::reverse(seeds.begin(), seeds.end());
  const auto b = firsts(solve_multistart(cubic_problem(), ParameterVector{0.1}, seeds, cfg));
  CHECK(a == b);
}

TEST_CASE("1-D sweep counts and branches") {
  SolverConfig cfg;
  cfg.seed_grid = seed_line(-2.0, 2.0, 21);
  const auto set = sweep_1d(cubic_problem(), linspace_axis(-1.0, 1.0, 21), cfg);
  CHECK(set.k == 1);
  CHECK(set.grid_shape == std::vector<std::size_t>{21});
  const auto c = set.counts();
  CHECK(c.front() == 1);
  CHECK(c[10] == 3);
  CHECK(c.back() == 1);
  CHECK(count_solutions(set, ParameterVector{0.0}) == 3);
  CHECK_THROWS_AS(count_solutions(set, ParameterVector{0.05}), OffGrid);
  // Samples ordered by grid index.
  for (std::size_t i = 1; i < set.samples.size(); ++i)
    CHECK(set.samples[i - 1].grid_index <= set.samples[i].grid_index);
  // The lower branch continues from mu = -1 to the fold.
  const int first = set.at(0)[0]->branch_id;
  int run = 0;
  for (const auto& s : set.samples)
    if (s.branch_id == first) ++run;
  CHECK(run >= 10);
}

TEST_CASE("periodic pitchfork counts at the printed parameters") {
  // Reference starts from a dense scan with an independent leapfrog, restricted to
  // trajectories inside x >= -1.5, |y| <= 30.
  const double ref53[] = {-8.63331047029663, -1.46221154579152, 7.94281813178767};
  const double ref20 = 1.55054306279544;
  const auto map = as_map(periodic_pitchfork_hamiltonian(true), 1.0, 1e-3);
  const RootProblem p = shooting_problem(map, vertical_line_condition(1.0));
  SolverConfig cfg;
  const auto a = firsts(solve_multistart(p, ParameterVector{-53.306}, seed_line(-30.0, 30.0, 41), cfg));
  REQUIRE(a.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(a[i] - ref53[i]) < 1e-7);
  const auto b = firsts(solve_multistart(p, ParameterVector{-20.0}, seed_line(-30.0, 30.0, 41), cfg));
  REQUIRE(b.size() == 1);
  CHECK(std::abs(b[0] - ref20) < 1e-7);
}

TEST_CASE("2-D sweep shape") {
  RootProblem p;
  p.dim = 1;
  p.residual = [](const ParameterVector& mu, const Vector& u) {
    return v1(u[0] * u[0] * u[0] + mu[1] * u[0] + mu[0]);
  };
  SolverConfig cfg;
  cfg.seed_grid = seed_line(-2.0, 2.0, 21);
  const auto set = sweep_2d(p, linspace_grid(-0.5, 0.5, 5, -1.0, 0.0, 3), cfg);
  CHECK(set.grid_shape == std::vector<std::size_t>{3, 5});
  CHECK(set.grid.size() == 15);
  CHECK(set.grid[5][1] == -0.5);
  CHECK(count_solutions(set, ParameterVector{0.0, -1.0}) == 3);
  CHECK(count_solutions(set, ParameterVector{0.5, 0.0}) == 1);
}

TEST_CASE("sweep tolerates domain failures") {
  const auto map = as_map(periodic_pitchfork_hamiltonian(true), 1.0, 1e-3);
  const RootProblem p = shooting_problem(map, vertical_line_condition(1.0));
  SolverConfig cfg;
  cfg.seed_grid = seed_line(-30.0, 30.0, 13);
  CHECK_NOTHROW(sweep_1d(p, linspace_axis(-60.0, -50.0, 3), cfg));
}
