#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "hambvp/phase_space.hpp"

namespace hambvp {

struct Dirichlet {
  Vector xstar;
  Vector Xstar;
};

struct Neumann {
  Vector ystar;
  Vector Ystar;
};

struct Periodic {};

// A (z0, z1) = rhs with A of shape 2n x 4n, columns ordered (x, y, X, Y).
struct LinearAffine {
  Matrix A;
  Vector rhs;
};

// Which coordinate block parametrizes G.
enum class GraphChart {
  Positions,  // G = {(x, gradb(x))}
  Momenta,    // G = {(gradb(y), y)}
};

// Start and end point both on G.
struct SymmetricallySeparated {
  std::function<Vector(const Vector&)> gradb;
  GraphChart chart = GraphChart::Positions;
  // Optional bounds on the chart coordinate; points outside raise ChartViolation.
  std::optional<Vector> chart_lo;
  std::optional<Vector> chart_hi;
};

class BoundaryCondition {
 public:
  using Kind = std::variant<Dirichlet, Neumann, Periodic, LinearAffine, SymmetricallySeparated>;

  static BoundaryCondition dirichlet(Vector xstar, Vector Xstar);
  static BoundaryCondition neumann(Vector ystar, Vector Ystar);
  static BoundaryCondition periodic(int n);
  static BoundaryCondition linear_affine(Matrix A, Vector rhs);
  static BoundaryCondition symmetrically_separated(int n, SymmetricallySeparated g);

  int n() const { return n_; }
  const Kind& kind() const { return kind_; }
  std::string kind_name() const;
  bool is_separated() const;

  // Start conditions first, end conditions second.
  Vector residual(const PhasePoint& z0, const PhasePoint& z1) const;

 private:
  BoundaryCondition(Kind kind, int n) : kind_(std::move(kind)), n_(n) {}
  Kind kind_;
  int n_;
};

inline Vector residual(const BoundaryCondition& bc, const PhasePoint& z0, const PhasePoint& z1) {
  return bc.residual(z0, z1);
}

struct LagrangianVerdict {
  bool is_lagrangian = false;
  double defect = 0.0;
  int kernel_dim = 0;
};

// The 4n x 4n matrix of omega (+) (-omega) on R^2n x R^2n.
Matrix product_form_J(int n);

// tol < 0 selects the default 1e-10 * ||A||.
LagrangianVerdict is_lagrangian_linear(const Matrix& A, double tol = -1.0);

// Orthonormal basis of ker A, from a column-pivoted QR of A^T.
Matrix kernel_basis(const Matrix& A);

// Dirichlet, Neumann and Periodic written as linear conditions.
LinearAffine linearize(const BoundaryCondition& bc);

// phi(x, y) = (y, x).
LinearAffine swap_condition(int n);

struct ReducedProblem {
  int k = 0;
  std::function<PhasePoint(const Vector&)> embed;
  // End point -> end-condition residual (length k).
  std::function<Vector(const PhasePoint&)> project;
  // Start point -> shooting unknowns; inverse of embed on the start manifold.
  std::function<Vector(const PhasePoint&)> unknowns_of;
};

ReducedProblem reduced_unknowns(const BoundaryCondition& bc);

}  // namespace hambvp
