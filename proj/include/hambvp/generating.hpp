#pragma once

#include <vector>

#include "hambvp/solver.hpp"

namespace hambvp {

using GenScalar = std::function<double(const ParameterVector&, const Vector& x, const Vector& Y)>;
using GenGrad = std::function<Vector(const ParameterVector&, const Vector& x, const Vector& Y)>;
using GenHessian = std::function<Matrix(const ParameterVector&, const Vector& x, const Vector& Y)>;

// g(x, Y) with y = grad_x g, X = grad_Y g.
struct GeneratingFunction {
  int n = 1;
  GenScalar g;
  GenGrad grad_x;
  GenGrad grad_Y;
  GenHessian mixed_hessian;  // d^2 g / dx dY; empty: differences of grad_x
};

// Newton solve of y = grad_x g(x, Y) for Y; returns (grad_Y g(x, Y), Y).
PhasePoint map_from_generating(const GeneratingFunction& gf, const ParameterVector& mu,
                               const PhasePoint& z, const Vector& Y_guess,
                               const SolverConfig& cfg = {});

// Map family with Y_guess = y.
SymplecticMapFamily generating_map(const GeneratingFunction& gf, const SolverConfig& cfg = {});

// mu = (mu1, mu2, mu3).
PhasePoint d4plus_map(const ParameterVector& mu, const PhasePoint& z);
SymplecticMapFamily d4plus_family();
GeneratingFunction d4plus_generating_function();
// grad of h(t1, t2) = t1^3 + t1 t2^2 + mu3 (t1^2 - t2^2) + mu2 t2 + mu1 t1.
Vector d4plus_grad_h(const ParameterVector& mu, const Vector& t);

using ParamGrad = std::function<Vector(const ParameterVector&, const Vector&)>;

// B(y, Y) and its derivatives; empty members mean B = 0.
struct Coupling {
  std::function<Vector(const ParameterVector&, const Vector& y, const Vector& Y)> grad_y;
  std::function<Vector(const ParameterVector&, const Vector& y, const Vector& Y)> grad_Y;
  std::function<Matrix(const ParameterVector&, const Vector& y, const Vector& Y)> mixed;
};

// Coupling whose Dirichlet problem is x = xstar, X = Xstar.
Coupling dirichlet_coupling(const Vector& xstar, const Vector& Xstar);

// Map generated by g(y, Y) = h(y) + c |Y + y|^2 + B(y, Y), given grad h.
// Checks invertibility of d^2B/dydY + 2cI at the origin for a p-dimensional mu.
SymplecticMapFamily dirichlet_realization(int n, const ParamGrad& grad_h, const Coupling& B,
                                          double c, int p);

struct FixedPointReport {
  std::vector<Vector> fixed_points;
  std::vector<Vector> gradient_roots;
  double hausdorff = 0.0;
  bool same_cardinality = false;
  bool degenerate = false;  // a continuum of roots (every seed converged in place)
};

// Box given as lo/hi corners in R^2; grid_n seeds per axis.
FixedPointReport verify_fixed_point_correspondence(const SymplecticMapFamily& map,
                                                   const ParamGrad& grad_h,
                                                   const ParameterVector& mu, const Vector& lo,
                                                   const Vector& hi, int grid_n);

double hausdorff_distance(const std::vector<Vector>& a, const std::vector<Vector>& b);

}  // namespace hambvp
