#include "hambvp/phase_space.hpp"

#include <cmath>

#include "hambvp/symplectic.hpp"

namespace hambvp {

bool all_finite(const Eigen::Ref<const Vector>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i])) return false;
  return true;
}

PhasePoint::PhasePoint(Vector x, Vector y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.size() < 1)
    throw Error("PhasePoint: x and y must have equal length n >= 1");
  if (!all_finite(x_) || !all_finite(y_)) throw Error("PhasePoint: non-finite entry");
}

PhasePoint::PhasePoint(double x, double y)
    : PhasePoint(Vector::Constant(1, x), Vector::Constant(1, y)) {}

PhasePoint PhasePoint::from_stacked(const Vector& z) {
  if (z.size() < 2 || z.size() % 2 != 0)
    throw Error("PhasePoint: stacked vector must have even length >= 2");
  const Eigen::Index n = z.size() / 2;
  return PhasePoint(z.head(n), z.tail(n));
}

Vector PhasePoint::stacked() const {
  Vector z(2 * x_.size());
  z << x_, y_;
  return z;
}

ParameterVector::ParameterVector(Vector mu) : mu_(std::move(mu)) {
  if (!all_finite(mu_)) throw Error("ParameterVector: non-finite entry");
}

ParameterVector::ParameterVector(std::initializer_list<double> mu) : mu_(mu.size()) {
  Eigen::Index i = 0;
  for (double v : mu) mu_[i++] = v;
  if (!all_finite(mu_)) throw Error("ParameterVector: non-finite entry");
}

bool PhaseBox::contains(const Eigen::Ref<const Vector>& x,
                        const Eigen::Ref<const Vector>& y) const {
  const Eigen::Index n = x.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
    if (!(y[i] >= lo[n + i] && y[i] <= hi[n + i])) return false;
  }
  return true;
}

Matrix SymplecticMapFamily::jacobian_at(const ParameterVector& mu,
                                        const PhasePoint& z) const {
  if (jacobian) return jacobian(mu, z);
  return fd_jacobian(*this, mu, z);
}

}  // namespace hambvp
