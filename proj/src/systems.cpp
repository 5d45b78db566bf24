#include "hambvp/systems.hpp"

#include <cmath>

namespace hambvp {

HamiltonianFamily harmonic_oscillator() {
  HamiltonianFamily h;
  h.name = "harmonic";
  h.grad_T = [](const Eigen::Ref<const Vector>& y, Eigen::Ref<Vector> out) { out = y; };
  h.grad_V = [](const ParameterVector&, const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> out) {
    out = x;
  };
  h.energy = [](const ParameterVector&, const PhasePoint& z) {
    return 0.5 * (z.x().squaredNorm() + z.y().squaredNorm());
  };
  return h;
}

HamiltonianFamily free_particle() {
  HamiltonianFamily h;
  h.name = "free";
  h.grad_T = [](const Eigen::Ref<const Vector>& y, Eigen::Ref<Vector> out) { out = 2.0 * y; };
  h.grad_V = [](const ParameterVector&, const Eigen::Ref<const Vector>&, Eigen::Ref<Vector> out) {
    out.setZero();
  };
  h.energy = [](const ParameterVector&, const PhasePoint& z) { return z.y().squaredNorm(); };
  return h;
}

HamiltonianFamily cusp_hamiltonian() {
  HamiltonianFamily h;
  h.name = "cusp";
  h.grad_T = [](const Eigen::Ref<const Vector>& y, Eigen::Ref<Vector> out) { out = 2.0 * y; };
  h.grad_V = [](const ParameterVector& mu, const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> out) {
    const double v = x[0];
    out[0] = mu[0] + 2.0 * mu[1] * v + 4.0 * v * v * v;
  };
  h.energy = [](const ParameterVector& mu, const PhasePoint& z) {
    const double x = z.x()[0], y = z.y()[0];
    return y * y + mu[0] * x + mu[1] * x * x + x * x * x * x;
  };
  return h;
}

double periodic_pitchfork_dHdy(double y) { return 2.0 * y + 0.03 * y * y; }

HamiltonianFamily periodic_pitchfork_hamiltonian(bool with_domain) {
  HamiltonianFamily h;
  h.name = "periodic-pitchfork";
  h.grad_T = [](const Eigen::Ref<const Vector>& y, Eigen::Ref<Vector> out) {
    out[0] = periodic_pitchfork_dHdy(y[0]);
  };
  h.grad_V = [](const ParameterVector& mu, const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> out) {
    out[0] = 3.0 * x[0] * x[0] + mu[0];
  };
  h.energy = [](const ParameterVector& mu, const PhasePoint& z) {
    const double x = z.x()[0], y = z.y()[0];
    return y * y + 0.01 * y * y * y + x * x * x + mu[0] * x;
  };
  if (with_domain) {
    PhaseBox box;
    box.lo = Vector(2);
    box.hi = Vector(2);
    box.lo << -1.5, -30.0;
    box.hi << 1e6, 30.0;
    h.domain = box;
  }
  return h;
}

double timereversal_dHdy(double y) { return -2.0 * y * std::sin(y * y); }

HamiltonianFamily timereversal_hamiltonian() {
  HamiltonianFamily h;
  h.name = "timereversal";
  h.grad_T = [](const Eigen::Ref<const Vector>& y, Eigen::Ref<Vector> out) {
    out[0] = timereversal_dHdy(y[0]);
  };
  h.grad_V = [](const ParameterVector& mu, const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> out) {
    out[0] = 2.0 * mu[0] * x[0] + 3.0 * x[0] * x[0];
  };
  h.energy = [](const ParameterVector& mu, const PhasePoint& z) {
    const double x = z.x()[0], y = z.y()[0];
    return std::cos(y * y) + mu[0] * x * x + x * x * x;
  };
  return h;
}

HamiltonianFamily bratu_hamiltonian() {
  HamiltonianFamily h;
  h.name = "bratu";
  h.grad_T = [](const Eigen::Ref<const Vector>& y, Eigen::Ref<Vector> out) { out = y; };
  h.grad_V = [](const ParameterVector& mu, const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> out) {
    out[0] = mu[0] * std::exp(x[0]);
  };
  h.energy = [](const ParameterVector& mu, const PhasePoint& z) {
    return 0.5 * z.y()[0] * z.y()[0] + mu[0] * std::exp(z.x()[0]);
  };
  return h;
}

SymplecticMapFamily action_angle_map() {
  SymplecticMapFamily map;
  map.name = "action-angle";
  map.n = 1;
  map.apply = [](const ParameterVector& mu, const PhasePoint& z) {
    const double th = z.x()[0], I = z.y()[0];
    return PhasePoint(th + mu[0] + I, I);
  };
  map.jacobian = [](const ParameterVector&, const PhasePoint&) {
    Matrix m(2, 2);
    m << 1.0, 1.0, 0.0, 1.0;
    return m;
  };
  return map;
}

BoundaryCondition vertical_line_condition(double xstar) {
  SymmetricallySeparated g;
  g.chart = GraphChart::Momenta;
  g.gradb = [xstar](const Vector& y) { return Vector(Vector::Constant(y.size(), xstar)); };
  return BoundaryCondition::symmetrically_separated(1, g);
}

BoundaryCondition cubic_graph_condition() {
  SymmetricallySeparated g;
  g.chart = GraphChart::Positions;
  g.gradb = [](const Vector& th) { return Vector(3.0 * th.array().square()); };
  return BoundaryCondition::symmetrically_separated(1, g);
}

std::vector<std::string> builtin_hamiltonians() {
  return {"harmonic", "free", "cusp", "periodic-pitchfork", "timereversal", "bratu"};
}

HamiltonianFamily hamiltonian_by_name(const std::string& name) {
  if (name == "harmonic") return harmonic_oscillator();
  if (name == "free") return free_particle();
  if (name == "cusp") return cusp_hamiltonian();
  if (name == "periodic-pitchfork") return periodic_pitchfork_hamiltonian();
  if (name == "timereversal") return timereversal_hamiltonian();
  if (name == "bratu") return bratu_hamiltonian();
  throw ConfigError("unknown system '" + name + "'");
}

int parameter_count(const std::string& name) {
  if (name == "harmonic" || name == "free") return 0;
  if (name == "cusp") return 2;
  if (name == "periodic-pitchfork" || name == "timereversal" || name == "bratu") return 1;
  throw ConfigError("unknown system '" + name + "'");
}

}  // namespace hambvp
