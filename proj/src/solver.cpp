#include "hambvp/solver.hpp"

#include <cmath>
#include <optional>

namespace hambvp {

namespace {

std::optional<Vector> try_eval(const RootProblem& p, const ParameterVector& mu, const Vector& u) {
  try {
    Vector f = p.residual(mu, u);
    if (!all_finite(f)) return std::nullopt;
    return f;
  } catch (const DomainError&) {
  } catch (const IntegrationError&) {
  } catch (const ChartViolation&) {
  }
  return std::nullopt;
}

Matrix forward_jacobian(const RootProblem& p, const ParameterVector& mu, const Vector& u,
                        const Vector& f, double step) {
  const Eigen::Index m = u.size();
  Matrix jac(f.size(), m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double h = step * (1.0 + std::abs(u[j]));
    Vector up = u;
    up[j] += h;
    if (auto fp = try_eval(p, mu, up)) {
      jac.col(j) = (*fp - f) / (up[j] - u[j]);
      continue;
    }
    Vector um = u;
    um[j] -= h;
    auto fm = try_eval(p, mu, um);
    if (!fm) throw SingularJacobian("residual undefined on both sides of the difference stencil", u);
    jac.col(j) = (f - *fm) / (u[j] - um[j]);
  }
  return jac;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(newton_tol > 0.0)) throw ConfigError("newton_tol must be positive");
  if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
  if (!(fd_step > 0.0)) throw ConfigError("fd_step must be positive");
  if (!(dedup_tol > 0.0)) throw ConfigError("dedup_tol must be positive");
}

std::vector<Vector> seed_line(double lo, double hi, int count) {
  std::vector<Vector> seeds;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.5 : static_cast<double>(i) / (count - 1);
    seeds.push_back(Vector::Constant(1, lo + t * (hi - lo)));
  }
  return seeds;
}

std::vector<Vector> seed_box(const Vector& lo, const Vector& hi, int count) {
  const Eigen::Index d = lo.size();
  std::vector<Vector> seeds;
  std::vector<int> idx(d, 0);
  for (;;) {
    Vector s(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double t = count == 1 ? 0.5 : static_cast<double>(idx[i]) / (count - 1);
      s[i] = lo[i] + t * (hi[i] - lo[i]);
    }
    seeds.push_back(s);
    Eigen::Index i = 0;
    while (i < d && ++idx[i] == count) idx[i++] = 0;
    if (i == d) break;
  }
  return seeds;
}

RootProblem shooting_problem(const SymplecticMapFamily& map, const BoundaryCondition& bc) {
  RootProblem p;
  p.name = map.name + "/" + bc.kind_name();
  try {
    const ReducedProblem rp = reduced_unknowns(bc);
    p.dim = rp.k;
    p.residual = [map, rp](const ParameterVector& mu, const Vector& u) {
      return rp.project(map(mu, rp.embed(u)));
    };
  } catch (const NotReducible&) {
    p.dim = 2 * bc.n();
    p.residual = [map, bc](const ParameterVector& mu, const Vector& u) {
      const PhasePoint z0 = PhasePoint::from_stacked(u);
      return bc.residual(z0, map(mu, z0));
    };
  }
  return p;
}

Solution solve(const RootProblem& problem, const ParameterVector& mu, const Vector& guess,
               const SolverConfig& cfg) {
  if (guess.size() != problem.dim) throw Error("solve: guess has wrong dimension");
  Vector u = guess;
  auto f0 = try_eval(problem, mu, u);
  if (!f0) throw NoConvergence("residual undefined at the initial guess", u, INFINITY);
  Vector f = *f0;
  double norm = f.norm();
  for (int it = 0;; ++it) {
    if (norm <= cfg.newton_tol) return {u, norm, it};
    if (it == cfg.max_iters) throw NoConvergence("iteration limit reached", u, norm);
    const Matrix jac = forward_jacobian(problem, mu, u, f, cfg.fd_step);
    if (!jac.allFinite() || jac.cwiseAbs().maxCoeff() == 0.0)
      throw SingularJacobian("zero or non-finite Jacobian", u);
    Eigen::ColPivHouseholderQR<Matrix> qr(jac);
    if (qr.rank() < problem.dim) throw SingularJacobian("rank-deficient Jacobian", u);
    const Vector delta = -qr.solve(f);
    if (!all_finite(delta)) throw SingularJacobian("non-finite Newton step", u);

    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 20; ++halving, lambda *= 0.5) {
      const Vector trial = u + lambda * delta;
      auto ft = try_eval(problem, mu, trial);
      if (!ft) continue;
      const double tn = ft->norm();
      if (!cfg.damping || tn < norm) {
        u = trial;
        f = *ft;
        norm = tn;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (norm <= cfg.stall_tol) return {u, norm, it};
      throw NoConvergence("line search failed", u, norm);
    }
  }
}

Solution solve(const SymplecticMapFamily& map, const BoundaryCondition& bc,
               const ParameterVector& mu, const Vector& guess, const SolverConfig& cfg) {
  return solve(shooting_problem(map, bc), mu, guess, cfg);
}

}  // namespace hambvp
