#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hambvp/boundary.hpp"
#include "hambvp/symplectic.hpp"
#include "hambvp/systems.hpp"

using namespace hambvp;

namespace {
Matrix mat(int r, int c, std::initializer_list<double> v) {
  Matrix m(r, c);
  auto it = v.begin();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = *it++;
  return m;
}
Vector v1(double a) { return Vector::Constant(1, a); }
}  // namespace

TEST_CASE("the two introductory matrices") {
  const auto yes = is_lagrangian_linear(mat(2, 4, {1, 1, 0, 0, 0, 0, 1, 1}));
  CHECK(yes.is_lagrangian);
  CHECK(yes.kernel_dim == 2);
  CHECK(yes.defect < 1e-14);
  // x + X = 0, y + Y = 0: the kernel is the graph of -I, a symplectic map, so the
  // condition is Lagrangian for omega (+) (-omega), same as the periodic one.
  const auto minus = is_lagrangian_linear(mat(2, 4, {1, -1, 1, -1, 1, 1, 1, 1}));
  CHECK(minus.is_lagrangian);
  CHECK(minus.defect < 1e-14);
  // x - y + X - Y = 0, x + y - X - Y = 0 is not.
  const auto no = is_lagrangian_linear(mat(2, 4, {1, -1, 1, -1, 1, 1, -1, -1}));
  CHECK_FALSE(no.is_lagrangian);
  CHECK(no.defect > 0.1);
}

TEST_CASE("standard conditions are Lagrangian, the swap is not") {
  CHECK(is_lagrangian_linear(mat(2, 4, {1, 0, 0, 0, 0, 0, 1, 0})).is_lagrangian);
  for (int n : {1, 2, 3}) {
    const Vector a = Vector::LinSpaced(n, 0.1, 0.9), b = Vector::LinSpaced(n, -1.0, 1.0);
    CHECK(is_lagrangian_linear(linearize(BoundaryCondition::dirichlet(a, b)).A).is_lagrangian);
    CHECK(is_lagrangian_linear(linearize(BoundaryCondition::neumann(a, b)).A).is_lagrangian);
    CHECK(is_lagrangian_linear(linearize(BoundaryCondition::periodic(n)).A).is_lagrangian);
    CHECK_FALSE(is_lagrangian_linear(swap_condition(n).A).is_lagrangian);
  }
}

TEST_CASE("Lagrangian test rejects malformed matrices") {
  CHECK_THROWS_AS(is_lagrangian_linear(Matrix::Zero(2, 3)), InvalidBoundaryCondition);
  CHECK_THROWS_AS(is_lagrangian_linear(mat(2, 4, {1, 0, 0, 0, 2, 0, 0, 0})), InvalidBoundaryCondition);
  CHECK_THROWS_AS(BoundaryCondition::linear_affine(mat(2, 4, {1, 0, 0, 0, 1, 0, 0, 0}), Vector::Zero(2)),
                  InvalidBoundaryCondition);
}

TEST_CASE("kernel basis is orthonormal and annihilated by A") {
  const Matrix A = mat(2, 4, {1, -1, 1, -1, 1, 1, 1, 1});
  const Matrix V = kernel_basis(A);
  CHECK(V.cols() == 2);
  CHECK((A * V).norm() < 1e-14);
  CHECK((V.transpose() * V - Matrix::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("product form J") {
  const Matrix J = product_form_J(1);
  CHECK(J.rows() == 4);
  CHECK(J(0, 1) == -1.0);
  CHECK(J(2, 3) == 1.0);
  CHECK((J + J.transpose()).norm() == 0.0);
  CHECK(std::abs(J.determinant() - 1.0) < 1e-14);
}

TEST_CASE("Dirichlet residual on the harmonic oscillator") {
  const auto bc = BoundaryCondition::dirichlet(v1(1.0), v1(1.0));
  const auto map = as_map(harmonic_oscillator(), std::numbers::pi / 2, 1e-3);
  for (double y0 : {-0.5, 1.0, 2.0}) {
    const PhasePoint z0(1.0, y0);
    const Vector r = bc.residual(z0, map(ParameterVector{}, z0));
    CHECK(r.size() == 2);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == doctest::Approx(y0 - 1.0).epsilon(1e-5));
  }
}

TEST_CASE("residual ordering and kinds") {
  const auto n = BoundaryCondition::neumann(v1(0.5), v1(-0.5));
  const Vector r = n.residual(PhasePoint(3.0, 1.0), PhasePoint(4.0, 2.0));
  CHECK(r[0] == 0.5);
  CHECK(r[1] == 2.5);
  CHECK(n.kind_name() == "neumann");
  CHECK(n.is_separated());
  const auto p = BoundaryCondition::periodic(1);
  CHECK_FALSE(p.is_separated());
  const Vector rp = p.residual(PhasePoint(1.0, 2.0), PhasePoint(1.5, 1.0));
  CHECK(rp.size() == 2);
  CHECK(rp.norm() == doctest::Approx(std::sqrt(1.25)));
  CHECK_THROWS_AS(BoundaryCondition::dirichlet(Vector::Zero(2), v1(0.0)), InvalidBoundaryCondition);
}

TEST_CASE("reduced unknowns") {
  const auto line = vertical_line_condition(1.0);
  const ReducedProblem rl = reduced_unknowns(line);
  CHECK(rl.k == 1);
  const PhasePoint e = rl.embed(v1(2.5));
  CHECK(e.x()[0] == 1.0);
  CHECK(e.y()[0] == 2.5);
  CHECK(rl.project(PhasePoint(1.25, 7.0))[0] == doctest::Approx(0.25));
  CHECK(rl.unknowns_of(e)[0] == 2.5);

  const ReducedProblem rd = reduced_unknowns(BoundaryCondition::dirichlet(v1(0.2), v1(0.3)));
  CHECK(rd.embed(v1(-1.0)).x()[0] == 0.2);
  CHECK(rd.project(PhasePoint(0.5, 0.0))[0] == doctest::Approx(0.2));

  const ReducedProblem rn = reduced_unknowns(BoundaryCondition::neumann(v1(0.7), v1(0.0)));
  CHECK(rn.embed(v1(3.0)).y()[0] == 0.7);

  const ReducedProblem rc = reduced_unknowns(cubic_graph_condition());
  const PhasePoint g = rc.embed(v1(0.5));
  CHECK(g.y()[0] == doctest::Approx(0.75));
  CHECK(rc.project(PhasePoint(1.0, 3.0))[0] == doctest::Approx(0.0));

  CHECK_THROWS_AS(reduced_unknowns(BoundaryCondition::periodic(1)), NotReducible);
}

TEST_CASE("chart bounds") {
  SymmetricallySeparated g;
  g.chart = GraphChart::Positions;
  g.gradb = [](const Vector& x) { return Vector(x); };
  g.chart_lo = v1(-1.0);
  g.chart_hi = v1(1.0);
  const auto bc = BoundaryCondition::symmetrically_separated(1, g);
  CHECK_THROWS_AS(bc.residual(PhasePoint(2.0, 2.0), PhasePoint(0.0, 0.0)), ChartViolation);
  CHECK(bc.residual(PhasePoint(0.5, 0.5), PhasePoint(0.25, 0.25)).norm() == 0.0);
  CHECK_THROWS_AS(linearize(bc), InvalidBoundaryCondition);
}

TEST_CASE("linear affine residual") {
  const LinearAffine s = swap_condition(1);
  const auto bc = BoundaryCondition::linear_affine(s.A, s.rhs);
  // phi(x, y) = (y, x) satisfies the condition.
  CHECK(bc.residual(PhasePoint(0.3, 0.8), PhasePoint(0.8, 0.3)).norm() < 1e-15);
  CHECK(bc.residual(PhasePoint(0.3, 0.8), PhasePoint(0.3, 0.8)).norm() > 0.1);
}
