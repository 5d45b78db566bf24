#include <cmath>

#include "doctest.h"
#include "hambvp/classifier.hpp"

using namespace hambvp;

namespace {

RootProblem scalar_problem(std::function<double(const ParameterVector&, double)> f) {
  RootProblem p;
  p.dim = 1;
  p.residual = [f](const ParameterVector& mu, const Vector& u) {
    return Vector::Constant(1, f(mu, u[0]));
  };
  return p;
}

double fold_form(const ParameterVector& mu, double u) { return u * u + mu[0]; }
double cusp_form(const ParameterVector& mu, double u) { return u * u * u + mu[1] * u + mu[0]; }
double pitchfork_form(const ParameterVector& mu, double u) { return u * u * u + mu[0] * u; }

}  // namespace

TEST_CASE("labels of the normal forms at the origin") {
  CHECK(classify_point(fold_form, ParameterVector{0.0}, 0.0).kind == SingularityKind::Fold);
  CHECK(classify_point(cusp_form, ParameterVector{0.0, 0.0}, 0.0).kind == SingularityKind::Cusp);
  CHECK(classify_point(pitchfork_form, ParameterVector{0.0}, 0.0).kind ==
        SingularityKind::Pitchfork);
  CHECK(classify_point(fold_form, ParameterVector{-1.0}, 1.0).kind == SingularityKind::Regular);
}

TEST_CASE("degenerate and unclassifiable points") {
  // u^4: the first three u-derivatives vanish.
  const ScalarResidual quartic = [](const ParameterVector& mu, double u) {
    return u * u * u * u + mu[0];
  };
  CHECK(classify_point(quartic, ParameterVector{0.0}, 0.0).kind ==
        SingularityKind::UnclassifiedDegenerate);
  const ScalarResidual throws_ = [](const ParameterVector&, double u) -> double {
    if (u > 0.0) throw DomainError("outside", Vector(), Vector(), u);
    return u;
  };
  CHECK_THROWS_AS(classify_point(throws_, ParameterVector{0.0}, 0.0), ClassificationError);
}

TEST_CASE("to_string") {
  CHECK(to_string(SingularityKind::Fold) == "fold");
  CHECK(to_string(SingularityKind::Cusp) == "cusp");
  CHECK(to_string(SingularityKind::Pitchfork) == "pitchfork");
  CHECK(to_string(SingularityKind::Regular) == "regular");
}

TEST_CASE("fold detection on a 1-D sweep") {
  const RootProblem p = scalar_problem(fold_form);
  SolverConfig cfg;
  cfg.seed_grid = seed_line(-2.0, 2.0, 21);
  const auto set = sweep_1d(p, linspace_axis(-1.0, 1.0, 21), cfg);
  const auto cands = detect_candidates(set, p, cfg);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].multiplicity == 2);
  const auto label = refine_and_classify(p, cands[0]);
  CHECK(label.kind == SingularityKind::Fold);
  CHECK(std::abs(label.mu[0]) < 1e-8);
  CHECK(std::abs(label.u) < 1e-4);
}

TEST_CASE("pitchfork detection on a 1-D sweep") {
  const RootProblem p = scalar_problem(pitchfork_form);
  SolverConfig cfg;
  cfg.seed_grid = seed_line(-2.0, 2.0, 21);
  const auto set = sweep_1d(p, linspace_axis(-1.0, 1.0, 20), cfg);
  const auto cands = detect_candidates(set, p, cfg);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].multiplicity == 3);
  const auto label = refine_and_classify(p, cands[0]);
  CHECK(label.kind == SingularityKind::Pitchfork);
  CHECK(std::abs(label.mu[0]) < 1e-6);
}

TEST_CASE("cusp refinement") {
  const RootProblem p = scalar_problem(cusp_form);
  const auto label = refine_cusp(p, ParameterVector{0.01, -0.02}, 0.05);
  REQUIRE(label.has_value());
  CHECK(label->kind == SingularityKind::Cusp);
  CHECK(std::abs(label->mu[0]) < 1e-7);
  CHECK(std::abs(label->mu[1]) < 1e-7);
  CHECK(std::abs(label->u) < 1e-6);
}

TEST_CASE("fold curves of the cusp normal form follow the semicubical parabola") {
  const RootProblem p = scalar_problem(cusp_form);
  SolverConfig cfg;
  cfg.seed_grid = seed_line(-2.0, 2.0, 21);
  const int n = 41;
  const double lo1 = -0.5, hi1 = 0.5, lo2 = -1.0, hi2 = 0.2;
  const auto set = sweep_2d(p, linspace_grid(lo1, hi1, n, lo2, hi2, n), cfg);
  const auto curves = fold_curves(set);
  REQUIRE(curves.size() == 2);
  const double cell = std::max((hi1 - lo1), (hi2 - lo2)) / (n - 1);
  for (const auto& c : curves) {
    REQUIRE(c.points.size() >= 5);
    for (const auto& q : c.points) {
      // Distance to the curve mu1 = +-2 (-mu2/3)^{3/2} measured along mu1.
      const double m2 = std::min(q[1], 0.0);
      const double edge = 2.0 * std::pow(-m2 / 3.0, 1.5);
      CHECK(std::abs(std::abs(q[0]) - edge) <= cell);
    }
  }
  // One curve on each side of the mu2 axis.
  CHECK(curves[0].points.front()[0] * curves[1].points.front()[0] < 0.0);
}
