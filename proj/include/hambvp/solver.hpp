#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hambvp/boundary.hpp"
#include "hambvp/phase_space.hpp"

namespace hambvp {

struct SolverConfig {
  double newton_tol = 1e-10;
  int max_iters = 50;
  double fd_step = 1e-6;
  double dedup_tol = 1e-6;
  std::vector<Vector> seed_grid;
  bool damping = true;
  // Largest unknown-space jump still matched to the same branch.
  double branch_jump = 0.5;
  // A stalled line search is accepted as converged when the residual is below this.
  double stall_tol = 0.0;
  int workers = 0;

  void validate() const;
};

// Evenly spaced scalar seeds.
std::vector<Vector> seed_line(double lo, double hi, int count);
// Tensor grid of seeds, `count` per axis.
std::vector<Vector> seed_box(const Vector& lo, const Vector& hi, int count);

// F(mu, u) = 0 with dim unknowns and dim equations.
struct RootProblem {
  std::string name;
  int dim = 1;
  std::function<Vector(const ParameterVector& mu, const Vector& u)> residual;
};

// Reduced shooting residual for separated conditions, full 2n residual otherwise.
RootProblem shooting_problem(const SymplecticMapFamily& map, const BoundaryCondition& bc);

struct Solution {
  Vector unknowns;
  double residual_norm = 0.0;
  int iterations = 0;
};

Solution solve(const RootProblem& problem, const ParameterVector& mu, const Vector& guess,
               const SolverConfig& cfg);
Solution solve(const SymplecticMapFamily& map, const BoundaryCondition& bc,
               const ParameterVector& mu, const Vector& guess, const SolverConfig& cfg);

enum SampleFlag : unsigned {
  kMerged = 1u,        // dedup merged roots that were not numerically identical
  kNearSingular = 2u,  // Jacobian at the root is close to singular
};

struct Sample {
  ParameterVector mu;
  Vector unknowns;
  double residual_norm = 0.0;
  int branch_id = -1;
  std::size_t grid_index = 0;
  unsigned flags = 0;
};

struct CatastropheSet {
  int k = 0;
  // {N} for 1-D sweeps, {rows, cols} for 2-D sweeps (row-major grid).
  std::vector<std::size_t> grid_shape;
  std::vector<ParameterVector> grid;
  // Sorted by grid_index, then by unknowns.
  std::vector<Sample> samples;

  std::vector<int> counts() const;
  std::vector<const Sample*> at(std::size_t grid_index) const;
  std::size_t index_of(const ParameterVector& mu) const;  // OffGrid if absent
};

// Deduplicated roots at one mu from the given seeds; non-convergent seeds are dropped.
std::vector<Sample> solve_multistart(const RootProblem& problem, const ParameterVector& mu,
                                     const std::vector<Vector>& seeds, const SolverConfig& cfg);

CatastropheSet sweep_1d(const RootProblem& problem, const std::vector<ParameterVector>& mu_axis,
                        const SolverConfig& cfg);
CatastropheSet sweep_2d(const RootProblem& problem,
                        const std::vector<std::vector<ParameterVector>>& mu_grid,
                        const SolverConfig& cfg);

CatastropheSet sweep_1d(const SymplecticMapFamily& map, const BoundaryCondition& bc,
                        const std::vector<ParameterVector>& mu_axis, const SolverConfig& cfg);
CatastropheSet sweep_2d(const SymplecticMapFamily& map, const BoundaryCondition& bc,
                        const std::vector<std::vector<ParameterVector>>& mu_grid,
                        const SolverConfig& cfg);

int count_solutions(const CatastropheSet& set, const ParameterVector& mu);

// mu_axis helper: values lo..hi (inclusive) in `count` points along one parameter.
std::vector<ParameterVector> linspace_axis(double lo, double hi, int count);
std::vector<std::vector<ParameterVector>> linspace_grid(double lo1, double hi1, int n1,
                                                        double lo2, double hi2, int n2);

}  // namespace hambvp
