#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hambvp/solver.hpp"

namespace hambvp {

enum class SingularityKind { Regular, Fold, Cusp, Pitchfork, UnclassifiedDegenerate };

std::string to_string(SingularityKind kind);

struct SingularityLabel {
  SingularityKind kind = SingularityKind::UnclassifiedDegenerate;
  ParameterVector mu;
  double u = 0.0;
  std::map<std::string, double> diagnostics;
};

struct ClassifierThresholds {
  double relative = 1e-3;  // theta = relative * largest derivative magnitude
  double absolute = -1.0;  // >= 0 replaces theta
  double step = 1e-3;      // stencil step factor, h = step * (1 + |coordinate|)
};

using ScalarResidual = std::function<double(const ParameterVector& mu, double u)>;

// View of a one-unknown root problem as a scalar residual.
ScalarResidual scalar_view(const RootProblem& problem);

// Throws ClassificationError if the residual fails on a stencil point.
SingularityLabel classify_point(const ScalarResidual& r, const ParameterVector& mu0, double u0,
                                const ClassifierThresholds& th = {});

struct Candidate {
  ParameterVector mu;
  Vector unknowns;       // centre of the merging roots
  int multiplicity = 0;  // number of roots merging at the event
  std::size_t grid_index = 0;
  int axis = 0;          // parameter varied by the bisection
  double bracket = 0.0;  // final bracket width in that parameter
};

// Count changes between neighbouring grid points, refined by bisection in mu,
// plus near-singular samples away from any count change.
std::vector<Candidate> detect_candidates(const CatastropheSet& set, const RootProblem& problem,
                                         const SolverConfig& cfg);

// Polishes a candidate on the extended system matching its multiplicity, then classifies.
SingularityLabel refine_and_classify(const RootProblem& problem, const Candidate& c,
                                     const ClassifierThresholds& th = {});

// Newton on (r, r_u, r_uu) = 0 in (mu1, mu2, u).
std::optional<SingularityLabel> refine_cusp(const RootProblem& problem, const ParameterVector& mu,
                                            double u, const ClassifierThresholds& th = {});

struct Polyline {
  std::vector<Eigen::Vector2d> points;  // in the (mu1, mu2) plane
  std::vector<double> u;                // merging-pair midpoint per vertex
  int pair = 0;                         // rank of the merging pair on the larger side
};

// Boundaries between solution-count regions of a 2-D sweep, one polyline per
// fold: edges are grouped by which adjacent pair of roots merges across them.
std::vector<Polyline> fold_curves(const CatastropheSet& set);

}  // namespace hambvp
