#include "hambvp/symplectic.hpp"

#include <cmath>

namespace hambvp {

namespace {

int step_count(double tau, double dt) {
  if (!(dt > 0.0)) throw Error("flow: dt must be positive");
  const double steps = std::round(std::abs(tau) / dt);
  if (tau != 0.0 && steps < 1.0) return 1;
  return static_cast<int>(steps);
}

// In-place leapfrog stepping shared by flow and trajectory.
class Stepper {
 public:
  Stepper(const HamiltonianFamily& family, const ParameterVector& mu, const PhasePoint& z0)
      : family_(family), mu_(mu), x_(z0.x()), y_(z0.y()), g_(z0.dim()) {}

  void step(double dt) {
    family_.grad_V(mu_, x_, g_);
    check(g_, "kick1");
    y_ -= 0.5 * dt * g_;
    family_.grad_T(y_, g_);
    check(g_, "drift");
    x_ += dt * g_;
    family_.grad_V(mu_, x_, g_);
    check(g_, "kick2");
    y_ -= 0.5 * dt * g_;
    if (!all_finite(x_) || !all_finite(y_)) throw IntegrationError("kick2", "non-finite state");
    if (family_.domain && !family_.domain->contains(x_, y_)) {
      Vector z(2 * x_.size());
      z << x_, y_;
      throw DomainError("trajectory left the phase-space domain of " + family_.name, z,
                        mu_.values(), 0.0);
    }
  }

  PhasePoint point() const { return PhasePoint(x_, y_); }

 private:
  void check(const Vector& g, const char* stage) const {
    if (!all_finite(g)) throw IntegrationError(stage, "non-finite gradient");
  }

  const HamiltonianFamily& family_;
  const ParameterVector& mu_;
  Vector x_, y_, g_;
};

}  // namespace

PhasePoint leapfrog_step(const HamiltonianFamily& family, const ParameterVector& mu,
                         const PhasePoint& z, double dt) {
  Stepper s(family, mu, z);
  s.step(dt);
  return s.point();
}

PhasePoint flow(const HamiltonianFamily& family, const ParameterVector& mu,
                const PhasePoint& z0, double tau, double dt) {
  const int steps = step_count(tau, dt);
  if (steps == 0) return z0;
  const double h = tau / steps;
  Stepper s(family, mu, z0);
  for (int i = 0; i < steps; ++i) s.step(h);
  return s.point();
}

std::vector<PhasePoint> trajectory(const HamiltonianFamily& family,
                                   const ParameterVector& mu, const PhasePoint& z0,
                                   double tau, double dt) {
  const int steps = step_count(tau, dt);
  std::vector<PhasePoint> out{z0};
  if (steps == 0) return out;
  const double h = tau / steps;
  Stepper s(family, mu, z0);
  for (int i = 0; i < steps; ++i) {
    s.step(h);
    out.push_back(s.point());
  }
  return out;
}

double max_energy_drift(const HamiltonianFamily& family, const ParameterVector& mu,
                        const PhasePoint& z0, double tau, double dt) {
  if (!family.energy) throw Error("max_energy_drift: family has no energy function");
  const double e0 = family.energy(mu, z0);
  double drift = 0.0;
  for (const auto& z : trajectory(family, mu, z0, tau, dt))
    drift = std::max(drift, std::abs(family.energy(mu, z) - e0));
  return drift;
}

SymplecticMapFamily as_map(const HamiltonianFamily& family, double tau, double dt) {
  if (!(dt > 0.0)) throw Error("as_map: dt must be positive");
  SymplecticMapFamily map;
  map.name = family.name;
  map.n = family.n;
  map.apply = [family, tau, dt](const ParameterVector& mu, const PhasePoint& z) {
    return flow(family, mu, z, tau, dt);
  };
  return map;
}

Matrix standard_omega(int n) {
  Matrix omega = Matrix::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n) = Matrix::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return omega;
}

Matrix fd_jacobian(const SymplecticMapFamily& map, const ParameterVector& mu,
                   const PhasePoint& z) {
  const Vector z0 = z.stacked();
  const Eigen::Index m = z0.size();
  Matrix jac(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double h = 1e-6 * (1.0 + std::abs(z0[j]));
    Vector zp = z0, zm = z0;
    zp[j] += h;
    zm[j] -= h;
    const Vector fp = map(mu, PhasePoint::from_stacked(zp)).stacked();
    const Vector fm = map(mu, PhasePoint::from_stacked(zm)).stacked();
    jac.col(j) = (fp - fm) / (zp[j] - zm[j]);
  }
  return jac;
}

SymplecticCheck check_symplectic(const SymplecticMapFamily& map, const ParameterVector& mu,
                                 const PhasePoint& z, double tol) {
  const Matrix m = map.jacobian_at(mu, z);
  const Matrix omega = standard_omega(z.dim());
  const double defect = (m.transpose() * omega * m - omega).cwiseAbs().maxCoeff();
  return {defect <= tol, defect};
}

SymplecticMapFamily identity_map(int n) {
  SymplecticMapFamily map;
  map.name = "identity";
  map.n = n;
  map.apply = [](const ParameterVector&, const PhasePoint& z) { return z; };
  map.jacobian = [n](const ParameterVector&, const PhasePoint&) {
    return Matrix(Matrix::Identity(2 * n, 2 * n));
  };
  return map;
}

}  // namespace hambvp
