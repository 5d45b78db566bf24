#include "hambvp/boundary.hpp"

#include <cmath>

namespace hambvp {

namespace {

void require_len(const Vector& v, int n, const char* what) {
  if (v.size() != n) throw InvalidBoundaryCondition(std::string(what) + " has wrong length");
}

void check_chart(const SymmetricallySeparated& g, const Vector& c) {
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const bool below = g.chart_lo && c[i] < (*g.chart_lo)[i];
    const bool above = g.chart_hi && c[i] > (*g.chart_hi)[i];
    if (below || above || !std::isfinite(c[i]))
      throw ChartViolation("point outside the graphical chart of G");
  }
}

// Chart coordinate and the complementary block of a phase point.
std::pair<Vector, Vector> split(GraphChart chart, const PhasePoint& z) {
  if (chart == GraphChart::Positions) return {z.x(), z.y()};
  return {z.y(), z.x()};
}

Vector graph_defect(const SymmetricallySeparated& g, const PhasePoint& z) {
  auto [c, other] = split(g.chart, z);
  check_chart(g, c);
  return other - g.gradb(c);
}

PhasePoint graph_point(const SymmetricallySeparated& g, const Vector& c) {
  check_chart(g, c);
  if (g.chart == GraphChart::Positions) return PhasePoint(c, g.gradb(c));
  return PhasePoint(g.gradb(c), c);
}

}  // namespace

BoundaryCondition BoundaryCondition::dirichlet(Vector xstar, Vector Xstar) {
  const int n = static_cast<int>(xstar.size());
  if (n < 1) throw InvalidBoundaryCondition("Dirichlet: empty x*");
  require_len(Xstar, n, "Dirichlet X*");
  return BoundaryCondition(Dirichlet{std::move(xstar), std::move(Xstar)}, n);
}

BoundaryCondition BoundaryCondition::neumann(Vector ystar, Vector Ystar) {
  const int n = static_cast<int>(ystar.size());
  if (n < 1) throw InvalidBoundaryCondition("Neumann: empty y*");
  require_len(Ystar, n, "Neumann Y*");
  return BoundaryCondition(Neumann{std::move(ystar), std::move(Ystar)}, n);
}

BoundaryCondition BoundaryCondition::periodic(int n) {
  if (n < 1) throw InvalidBoundaryCondition("Periodic: n must be >= 1");
  return BoundaryCondition(Periodic{}, n);
}

BoundaryCondition BoundaryCondition::linear_affine(Matrix A, Vector rhs) {
  if (A.rows() < 2 || A.rows() % 2 != 0 || A.cols() != 2 * A.rows())
    throw InvalidBoundaryCondition("LinearAffine: A must be 2n x 4n");
  const int n = static_cast<int>(A.rows() / 2);
  require_len(rhs, 2 * n, "LinearAffine rhs");
  Eigen::ColPivHouseholderQR<Matrix> qr(A);
  qr.setThreshold(1e-12);
  if (qr.rank() != 2 * n) throw InvalidBoundaryCondition("LinearAffine: A is not of full row rank");
  return BoundaryCondition(LinearAffine{std::move(A), std::move(rhs)}, n);
}

BoundaryCondition BoundaryCondition::symmetrically_separated(int n, SymmetricallySeparated g) {
  if (n < 1) throw InvalidBoundaryCondition("SymmetricallySeparated: n must be >= 1");
  if (!g.gradb) throw InvalidBoundaryCondition("SymmetricallySeparated: gradb missing");
  return BoundaryCondition(std::move(g), n);
}

std::string BoundaryCondition::kind_name() const {
  static const char* names[] = {"dirichlet", "neumann", "periodic", "linear-affine",
                                "symmetrically-separated"};
  return names[kind_.index()];
}

bool BoundaryCondition::is_separated() const {
  return std::holds_alternative<Dirichlet>(kind_) || std::holds_alternative<Neumann>(kind_) ||
         std::holds_alternative<SymmetricallySeparated>(kind_);
}

Vector BoundaryCondition::residual(const PhasePoint& z0, const PhasePoint& z1) const {
  if (z0.dim() != n_ || z1.dim() != n_) throw Error("residual: dimension mismatch");
  Vector r(2 * n_);
  if (auto* d = std::get_if<Dirichlet>(&kind_)) {
    r << z0.x() - d->xstar, z1.x() - d->Xstar;
  } else if (auto* nm = std::get_if<Neumann>(&kind_)) {
    r << z0.y() - nm->ystar, z1.y() - nm->Ystar;
  } else if (std::holds_alternative<Periodic>(kind_)) {
    r = z1.stacked() - z0.stacked();
  } else if (auto* la = std::get_if<LinearAffine>(&kind_)) {
    Vector w(4 * n_);
    w << z0.stacked(), z1.stacked();
    r = la->A * w - la->rhs;
  } else {
    const auto& g = std::get<SymmetricallySeparated>(kind_);
    r << graph_defect(g, z0), graph_defect(g, z1);
  }
  return r;
}

Matrix product_form_J(int n) {
  const Matrix I = Matrix::Identity(n, n);
  Matrix J = Matrix::Zero(4 * n, 4 * n);
  J.block(0, n, n, n) = -I;
  J.block(n, 0, n, n) = I;
  J.block(2 * n, 3 * n, n, n) = I;
  J.block(3 * n, 2 * n, n, n) = -I;
  return J;
}

Matrix kernel_basis(const Matrix& A) {
  Eigen::ColPivHouseholderQR<Matrix> qr(A.transpose());
  qr.setThreshold(1e-12);
  const Eigen::Index r = qr.rank();
  const Matrix Q = qr.householderQ();
  return Q.rightCols(A.cols() - r);
}

LagrangianVerdict is_lagrangian_linear(const Matrix& A, double tol) {
  if (A.rows() < 2 || A.rows() % 2 != 0 || A.cols() != 2 * A.rows())
    throw InvalidBoundaryCondition("is_lagrangian_linear: A must be 2n x 4n");
  const int n = static_cast<int>(A.rows() / 2);
  const Matrix V = kernel_basis(A);
  if (V.cols() != 2 * n)
    throw InvalidBoundaryCondition("is_lagrangian_linear: A is not of full row rank");
  if (tol < 0.0) tol = 1e-10 * A.norm();
  LagrangianVerdict v;
  v.kernel_dim = static_cast<int>(V.cols());
  v.defect = (V.transpose() * product_form_J(n) * V).cwiseAbs().maxCoeff();
  v.is_lagrangian = v.defect <= tol && v.kernel_dim == 2 * n;
  return v;
}

LinearAffine linearize(const BoundaryCondition& bc) {
  const int n = bc.n();
  const Matrix I = Matrix::Identity(n, n);
  LinearAffine la{Matrix::Zero(2 * n, 4 * n), Vector::Zero(2 * n)};
  if (auto* d = std::get_if<Dirichlet>(&bc.kind())) {
    la.A.block(0, 0, n, n) = I;
    la.A.block(n, 2 * n, n, n) = I;
    la.rhs << d->xstar, d->Xstar;
  } else if (auto* nm = std::get_if<Neumann>(&bc.kind())) {
    la.A.block(0, n, n, n) = I;
    la.A.block(n, 3 * n, n, n) = I;
    la.rhs << nm->ystar, nm->Ystar;
  } else if (std::holds_alternative<Periodic>(bc.kind())) {
    la.A.leftCols(2 * n) = -Matrix::Identity(2 * n, 2 * n);
    la.A.rightCols(2 * n) = Matrix::Identity(2 * n, 2 * n);
  } else if (auto* a = std::get_if<LinearAffine>(&bc.kind())) {
    la = *a;
  } else {
    throw InvalidBoundaryCondition("linearize: symmetrically separated conditions are not linear");
  }
  return la;
}

LinearAffine swap_condition(int n) {
  const Matrix I = Matrix::Identity(n, n);
  LinearAffine la{Matrix::Zero(2 * n, 4 * n), Vector::Zero(2 * n)};
  // X - y = 0, Y - x = 0
  la.A.block(0, 2 * n, n, n) = I;
  la.A.block(0, n, n, n) = -I;
  la.A.block(n, 3 * n, n, n) = I;
  la.A.block(n, 0, n, n) = -I;
  return la;
}

ReducedProblem reduced_unknowns(const BoundaryCondition& bc) {
  ReducedProblem rp;
  rp.k = bc.n();
  if (auto* d = std::get_if<Dirichlet>(&bc.kind())) {
    const Dirichlet c = *d;
    rp.embed = [c](const Vector& u) { return PhasePoint(c.xstar, u); };
    rp.project = [c](const PhasePoint& z1) { return Vector(z1.x() - c.Xstar); };
    rp.unknowns_of = [](const PhasePoint& z0) { return z0.y(); };
  } else if (auto* nm = std::get_if<Neumann>(&bc.kind())) {
    const Neumann c = *nm;
    rp.embed = [c](const Vector& u) { return PhasePoint(u, c.ystar); };
    rp.project = [c](const PhasePoint& z1) { return Vector(z1.y() - c.Ystar); };
    rp.unknowns_of = [](const PhasePoint& z0) { return z0.x(); };
  } else if (auto* g = std::get_if<SymmetricallySeparated>(&bc.kind())) {
    const SymmetricallySeparated c = *g;
    rp.embed = [c](const Vector& u) { return graph_point(c, u); };
    rp.project = [c](const PhasePoint& z1) { return graph_defect(c, z1); };
    rp.unknowns_of = [c](const PhasePoint& z0) { return split(c.chart, z0).first; };
  } else {
    throw NotReducible("boundary condition of kind " + bc.kind_name() +
                       " couples start and end points");
  }
  return rp;
}

}  // namespace hambvp
