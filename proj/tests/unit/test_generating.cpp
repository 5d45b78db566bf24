#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "hambvp/generating.hpp"
#include "hambvp/symplectic.hpp"

using namespace hambvp;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("d4plus map at the origin") {
  const PhasePoint z = d4plus_map(ParameterVector{0.0, 0.0, 0.0}, PhasePoint(0.0, 0.0));
  CHECK(std::abs(z.x()[0]) < 1e-15);
  CHECK(std::abs(z.y()[0]) < 1e-15);
}

TEST_CASE("d4plus map domain") {
  CHECK_THROWS_AS(d4plus_map(ParameterVector{0.0, 0.0, 0.0}, PhasePoint(0.0, -1.0)), DomainError);
  CHECK_THROWS_AS(d4plus_map(ParameterVector{0.0, 0.0}, PhasePoint(0.0, 0.0)), Error);
}

TEST_CASE("implicit solve agrees with the closed form") {
  const auto gf = d4plus_generating_function();
  const ParameterVector mu{0.02, -0.01, 0.1};
  for (double x : {-0.2, 0.0, 0.15})
    for (double y : {-0.1, 0.05, 0.2}) {
      const PhasePoint z(x, y);
      const PhasePoint a = d4plus_map(mu, z);
      const PhasePoint b = map_from_generating(gf, mu, z, z.y());
      CHECK((a.stacked() - b.stacked()).norm() < 1e-10);
    }
}

TEST_CASE("generated maps are symplectic") {
  const ParameterVector mu{0.02, -0.01, 0.1};
  const auto closed = d4plus_family();
  const auto implicit = generating_map(d4plus_generating_function());
  for (double x : {-0.2, 0.1})
    for (double y : {-0.1, 0.2}) {
      CHECK(check_symplectic(closed, mu, PhasePoint(x, y), 1e-7).ok);
      CHECK(check_symplectic(implicit, mu, PhasePoint(x, y), 1e-7).ok);
    }
}

TEST_CASE("singular mixed hessian") {
  // Y^2 + Y has zero Y-derivative at Y = -1/2.
  GeneratingFunction gf;
  gf.n = 1;
  gf.grad_x = [](const ParameterVector&, const Vector& x, const Vector& Y) {
    return Vector::Constant(1, x[0] + Y[0] * Y[0] + Y[0]);
  };
  gf.grad_Y = [](const ParameterVector&, const Vector& x, const Vector& Y) {
    return Vector::Constant(1, x[0] * (2.0 * Y[0] + 1.0));
  };
  gf.mixed_hessian = [](const ParameterVector&, const Vector&, const Vector& Y) {
    return Matrix::Constant(1, 1, 2.0 * Y[0] + 1.0);
  };
  CHECK_THROWS_AS(map_from_generating(gf, ParameterVector{}, PhasePoint(0.0, -0.25), Vector::Constant(1, -0.5)),
                  SingularMixedHessian);
}

TEST_CASE("fixed points of the d4plus map are critical points of h") {
  const auto map = d4plus_family();
  const Vector lo = v2(-0.3, -0.3), hi = v2(0.3, 0.3);

  SUBCASE("two roots") {
    const ParameterVector mu{-0.01, 0.01, 0.1};
    const auto rep = verify_fixed_point_correspondence(map, d4plus_grad_h, mu, lo, hi, 15);
    REQUIRE(rep.fixed_points.size() == 2);
    CHECK(rep.same_cardinality);
    CHECK(rep.hausdorff < 1e-8);
    const std::vector<Vector> ref = {v2(-0.0983927044976066, 0.0252025396430861),
                                     v2(0.02208876309138, 0.0641755951823017)};
    CHECK(hausdorff_distance(rep.fixed_points, ref) < 1e-10);
  }
  SUBCASE("no roots") {
    const auto rep =
        verify_fixed_point_correspondence(map, d4plus_grad_h, ParameterVector{0.01, 0.01, 0.1}, lo, hi, 15);
    CHECK(rep.fixed_points.empty());
    CHECK(rep.gradient_roots.empty());
    CHECK(rep.same_cardinality);
    CHECK(rep.hausdorff == 0.0);
  }
  SUBCASE("four roots") {
    const ParameterVector mu{-0.01, 0.0, 0.0};
    const auto rep = verify_fixed_point_correspondence(map, d4plus_grad_h, mu, lo, hi, 15);
    const double a = 0.0577350269189626;
    const std::vector<Vector> ref = {v2(-a, 0.0), v2(a, 0.0), v2(0.0, -0.1), v2(0.0, 0.1)};
    CHECK(rep.fixed_points.size() == 4);
    CHECK(hausdorff_distance(rep.gradient_roots, ref) < 1e-10);
    CHECK(rep.hausdorff < 1e-8);
  }
}

TEST_CASE("Dirichlet realization of a critical-point problem") {
  // h = y^3 + mu y: critical points at +-sqrt(-mu / 3).
  const ParamGrad grad_h = [](const ParameterVector& mu, const Vector& y) {
    return Vector::Constant(1, 3.0 * y[0] * y[0] + mu[0]);
  };
  const Vector xs = Vector::Constant(1, 0.3), Xs = Vector::Constant(1, -0.2);
  const auto map = dirichlet_realization(1, grad_h, dirichlet_coupling(xs, Xs), 1.0, 1);
  CHECK(check_symplectic(map, ParameterVector{-0.03}, PhasePoint(0.1, 0.2), 1e-7).ok);

  const RootProblem p = shooting_problem(map, BoundaryCondition::dirichlet(xs, Xs));
  SolverConfig cfg;
  const auto roots = solve_multistart(p, ParameterVector{-0.03}, seed_line(-1.0, 1.0, 21), cfg);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].unknowns[0] == doctest::Approx(-0.1).epsilon(1e-9));
  CHECK(roots[1].unknowns[0] == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(solve_multistart(p, ParameterVector{0.03}, seed_line(-1.0, 1.0, 21), cfg).empty());

  CHECK_THROWS_AS(dirichlet_realization(1, grad_h, dirichlet_coupling(xs, Xs), 0.0, 1), Error);
}

TEST_CASE("hausdorff distance") {
  CHECK(hausdorff_distance({}, {}) == 0.0);
  CHECK(std::isinf(hausdorff_distance({v2(0, 0)}, {})));
  CHECK(hausdorff_distance({v2(0, 0), v2(1, 0)}, {v2(0, 0)}) == doctest::Approx(1.0));
}
