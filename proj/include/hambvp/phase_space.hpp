#pragma once

#include <functional>
#include <initializer_list>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "hambvp/errors.hpp"

namespace hambvp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class PhasePoint {
 public:
  PhasePoint() = default;
  PhasePoint(Vector x, Vector y);
  PhasePoint(double x, double y);

  // z = (x, y) stacked into one vector of length 2n.
  static PhasePoint from_stacked(const Vector& z);

  const Vector& x() const { return x_; }
  const Vector& y() const { return y_; }
  int dim() const { return static_cast<int>(x_.size()); }
  Vector stacked() const;

 private:
  Vector x_;
  Vector y_;
};

class ParameterVector {
 public:
  ParameterVector() = default;
  explicit ParameterVector(Vector mu);
  ParameterVector(std::initializer_list<double> mu);

  int size() const { return static_cast<int>(mu_.size()); }
  double operator[](int i) const { return mu_[i]; }
  const Vector& values() const { return mu_; }

 private:
  Vector mu_;
};

// Axis-aligned box in R^{2n}, ordered (x, y).
struct PhaseBox {
  Vector lo;
  Vector hi;

  bool contains(const Eigen::Ref<const Vector>& x,
                const Eigen::Ref<const Vector>& y) const;
};

using GradKinetic =
    std::function<void(const Eigen::Ref<const Vector>& y, Eigen::Ref<Vector> out)>;
using GradPotential = std::function<void(
    const ParameterVector& mu, const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> out)>;
using EnergyFn = std::function<double(const ParameterVector& mu, const PhasePoint& z)>;

// Separable H_mu(x, y) = T(y) + V_mu(x).
struct HamiltonianFamily {
  std::string name;
  int n = 1;
  GradKinetic grad_T;
  GradPotential grad_V;
  EnergyFn energy;
  // Trajectories leaving this box raise DomainError.
  std::optional<PhaseBox> domain;
};

using MapApply = std::function<PhasePoint(const ParameterVector& mu, const PhasePoint& z)>;
using MapJacobian = std::function<Matrix(const ParameterVector& mu, const PhasePoint& z)>;

struct SymplecticMapFamily {
  std::string name;
  int n = 1;
  MapApply apply;
  MapJacobian jacobian;  // empty: central differences of apply

  PhasePoint operator()(const ParameterVector& mu, const PhasePoint& z) const {
    return apply(mu, z);
  }
  Matrix jacobian_at(const ParameterVector& mu, const PhasePoint& z) const;
};

bool all_finite(const Eigen::Ref<const Vector>& v);

}  // namespace hambvp
