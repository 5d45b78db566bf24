#include "hambvp/generating.hpp"

#include <cmath>
#include <limits>

namespace hambvp {

namespace {

using Fn = std::function<Vector(const Vector&)>;
using JacFn = std::function<Matrix(const Vector&)>;

Matrix fd_jac(const Fn& f, const Vector& u) {
  Matrix jac(u.size(), u.size());
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    const double h = 1e-6 * (1.0 + std::abs(u[j]));
    Vector up = u, um = u;
    up[j] += h;
    um[j] -= h;
    jac.col(j) = (f(up) - f(um)) / (up[j] - um[j]);
  }
  return jac;
}

// Undamped Newton for the implicit equation, polished two steps past tolerance
// so that finite-difference Jacobians of the resulting map stay clean.
Vector implicit_solve(const Fn& f, const JacFn& jac, Vector u, const SolverConfig& cfg) {
  int polish = 0;
  for (int it = 0; it <= cfg.max_iters; ++it) {
    const Vector r = f(u);
    if (!all_finite(r)) throw NoConvergence("implicit solve: non-finite residual", u, INFINITY);
    if (r.norm() <= cfg.newton_tol && ++polish > 2) return u;
    const Matrix J = jac(u);
    Eigen::FullPivLU<Matrix> lu(J);
    if (!J.allFinite() || !lu.isInvertible())
      throw SingularMixedHessian("mixed Hessian is singular along the implicit solve");
    const Vector step = lu.solve(r);
    u -= step;
    if (polish > 0 && step.norm() == 0.0) return u;
  }
  const Vector r = f(u);
  if (r.norm() <= cfg.newton_tol) return u;
  throw NoConvergence("implicit solve: iteration limit", u, r.norm());
}

}  // namespace

PhasePoint map_from_generating(const GeneratingFunction& gf, const ParameterVector& mu,
                               const PhasePoint& z, const Vector& Y_guess,
                               const SolverConfig& cfg) {
  const Vector& x = z.x();
  const Vector& y = z.y();
  Fn f = [&](const Vector& Y) { return Vector(gf.grad_x(mu, x, Y) - y); };
  JacFn jac = [&](const Vector& Y) {
    if (gf.mixed_hessian) return gf.mixed_hessian(mu, x, Y);
    return fd_jac(f, Y);
  };
  const Vector Y = implicit_solve(f, jac, Y_guess, cfg);
  return PhasePoint(gf.grad_Y(mu, x, Y), Y);
}

SymplecticMapFamily generating_map(const GeneratingFunction& gf, const SolverConfig& cfg) {
  SymplecticMapFamily map;
  map.name = "generating";
  map.n = gf.n;
  map.apply = [gf, cfg](const ParameterVector& mu, const PhasePoint& z) {
    return map_from_generating(gf, mu, z, z.y(), cfg);
  };
  return map;
}

PhasePoint d4plus_map(const ParameterVector& mu, const PhasePoint& z) {
  if (mu.size() != 3 || z.dim() != 1) throw Error("d4plus_map: needs mu in R^3 and n = 1");
  const double x = z.x()[0], y = z.y()[0];
  const double m1 = mu[0], m2 = mu[1], m3 = mu[2];
  const double rad = -3.0 * x * x - 2.0 * x * m3 + y - m1 + 0.25;
  if (!(rad > 0.0))
    throw DomainError("d4plus_map: negative radicand", z.stacked(), mu.values(), rad);
  const double s = std::sqrt(rad);
  const double X = (x - m3) * (-1.0 + 2.0 * s) + m2 + x;
  const double Y = -0.5 + s;
  return PhasePoint(X, Y);
}

SymplecticMapFamily d4plus_family() {
  SymplecticMapFamily map;
  map.name = "d4plus";
  map.n = 1;
  map.apply = d4plus_map;
  return map;
}

GeneratingFunction d4plus_generating_function() {
  GeneratingFunction gf;
  gf.n = 1;
  gf.g = [](const ParameterVector& mu, const Vector& xv, const Vector& Yv) {
    const double x = xv[0], Y = Yv[0];
    return x * x * x + x * Y * Y + mu[2] * (x * x - Y * Y) + mu[1] * Y + mu[0] * x + x * Y;
  };
  gf.grad_x = [](const ParameterVector& mu, const Vector& xv, const Vector& Yv) {
    const double x = xv[0], Y = Yv[0];
    return Vector::Constant(1, 3.0 * x * x + Y * Y + 2.0 * mu[2] * x + mu[0] + Y);
  };
  gf.grad_Y = [](const ParameterVector& mu, const Vector& xv, const Vector& Yv) {
    const double x = xv[0], Y = Yv[0];
    return Vector::Constant(1, 2.0 * x * Y - 2.0 * mu[2] * Y + mu[1] + x);
  };
  gf.mixed_hessian = [](const ParameterVector&, const Vector&, const Vector& Yv) {
    return Matrix::Constant(1, 1, 2.0 * Yv[0] + 1.0);
  };
  return gf;
}

Vector d4plus_grad_h(const ParameterVector& mu, const Vector& t) {
  Vector g(2);
  g << 3.0 * t[0] * t[0] + t[1] * t[1] + 2.0 * mu[2] * t[0] + mu[0],
      2.0 * t[0] * t[1] - 2.0 * mu[2] * t[1] + mu[1];
  return g;
}

Coupling dirichlet_coupling(const Vector& xstar, const Vector& Xstar) {
  Coupling b;
  b.grad_y = [xstar](const ParameterVector&, const Vector&, const Vector&) { return xstar; };
  b.grad_Y = [Xstar](const ParameterVector&, const Vector&, const Vector&) {
    return Vector(-Xstar);
  };
  const auto n = xstar.size();
  b.mixed = [n](const ParameterVector&, const Vector&, const Vector&) {
    return Matrix(Matrix::Zero(n, n));
  };
  return b;
}

SymplecticMapFamily dirichlet_realization(int n, const ParamGrad& grad_h, const Coupling& B,
                                          double c, int p) {
  auto mixed = [B, n](const ParameterVector& mu, const Vector& y, const Vector& Y) -> Matrix {
    if (B.mixed) return B.mixed(mu, y, Y);
    if (!B.grad_y) return Matrix::Zero(n, n);
    Fn f = [&](const Vector& Yv) { return B.grad_y(mu, y, Yv); };
    return fd_jac(f, Y);
  };
  const ParameterVector mu0(Vector::Zero(p));
  const Vector zero = Vector::Zero(n);
  const Matrix m0 = mixed(mu0, zero, zero) + 2.0 * c * Matrix::Identity(n, n);
  Eigen::FullPivLU<Matrix> lu0(m0);
  if (!lu0.isInvertible() || lu0.rcond() < 1e-10)
    throw Error("dirichlet_realization: d2B/dydY + 2cI is singular at the origin; adjust c");

  SymplecticMapFamily map;
  map.name = "dirichlet-realization";
  map.n = n;
  map.apply = [n, grad_h, B, c, mixed](const ParameterVector& mu, const PhasePoint& z) {
    const Vector& x = z.x();
    const Vector& y = z.y();
    const Vector gh = grad_h(mu, y);
    auto by = [&](const Vector& Y) -> Vector {
      return B.grad_y ? B.grad_y(mu, y, Y) : Vector(Vector::Zero(n));
    };
    Fn f = [&](const Vector& Y) { return Vector(gh + 2.0 * c * (Y + y) + by(Y) - x); };
    JacFn jac = [&](const Vector& Y) {
      return Matrix(2.0 * c * Matrix::Identity(n, n) + mixed(mu, y, Y));
    };
    const Vector guess = (x - gh) / (2.0 * c) - y;
    SolverConfig cfg;
    const Vector Y = implicit_solve(f, jac, guess, cfg);
    const Vector bY = B.grad_Y ? B.grad_Y(mu, y, Y) : Vector(Vector::Zero(n));
    return PhasePoint(Vector(-(2.0 * c * (Y + y) + bY)), Y);
  };
  return map;
}

double hausdorff_distance(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](const std::vector<Vector>& p, const std::vector<Vector>& q) {
    double worst = 0.0;
    for (const auto& u : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& v : q) best = std::min(best, (u - v).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

FixedPointReport verify_fixed_point_correspondence(const SymplecticMapFamily& map,
                                                   const ParamGrad& grad_h,
                                                   const ParameterVector& mu, const Vector& lo,
                                                   const Vector& hi, int grid_n) {
  const int n = map.n;
  SolverConfig cfg;
  cfg.newton_tol = 1e-24;
  cfg.stall_tol = 1e-12;
  cfg.max_iters = 200;
  cfg.dedup_tol = 1e-6;
  const auto seeds = seed_box(lo, hi, grid_n);

  RootProblem fixed{"fixed-points", 2 * n, [map](const ParameterVector& m, const Vector& u) {
                      const PhasePoint z = PhasePoint::from_stacked(u);
                      return Vector(map(m, z).stacked() - u);
                    }};
  RootProblem crit{"gradient-roots", 2 * n,
                   [grad_h](const ParameterVector& m, const Vector& u) { return grad_h(m, u); }};

  FixedPointReport rep;
  for (const auto& s : solve_multistart(fixed, mu, seeds, cfg)) rep.fixed_points.push_back(s.unknowns);
  for (const auto& s : solve_multistart(crit, mu, seeds, cfg)) rep.gradient_roots.push_back(s.unknowns);
  const auto continuum = static_cast<std::size_t>(grid_n);
  rep.degenerate = rep.fixed_points.size() >= continuum || rep.gradient_roots.size() >= continuum;
  rep.same_cardinality = rep.fixed_points.size() == rep.gradient_roots.size();
  rep.hausdorff = hausdorff_distance(rep.fixed_points, rep.gradient_roots);
  return rep;
}

}  // namespace hambvp
