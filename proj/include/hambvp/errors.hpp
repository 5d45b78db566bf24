#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hambvp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& stage, const std::string& what)
      : Error("integration failed at " + stage + ": " + what), stage(stage) {}
  std::string stage;
};

// Evaluation outside a declared domain. `value` is the quantity that left its
// admissible range (a radicand, a coordinate, ...).
class DomainError : public Error {
 public:
  DomainError(const std::string& what, Eigen::VectorXd point, Eigen::VectorXd mu,
              double value)
      : Error(what), point(std::move(point)), mu(std::move(mu)), value(value) {}
  Eigen::VectorXd point;
  Eigen::VectorXd mu;
  double value;
};

class InvalidBoundaryCondition : public Error {
 public:
  using Error::Error;
};

class NotReducible : public Error {
 public:
  using Error::Error;
};

class ChartViolation : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, Eigen::VectorXd last_iterate,
                double last_norm)
      : Error(what), last_iterate(std::move(last_iterate)), last_norm(last_norm) {}
  Eigen::VectorXd last_iterate;
  double last_norm;
};

class SingularJacobian : public Error {
 public:
  SingularJacobian(const std::string& what, Eigen::VectorXd at)
      : Error(what), at(std::move(at)) {}
  Eigen::VectorXd at;
};

class SingularMixedHessian : public Error {
 public:
  using Error::Error;
};

class ClassificationError : public Error {
 public:
  using Error::Error;
};

class OffGrid : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hambvp
