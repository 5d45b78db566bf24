#pragma once

#include <map>
#include <string>
#include <vector>

#include "hambvp/classifier.hpp"
#include "hambvp/generating.hpp"
#include "hambvp/symmetry.hpp"

namespace hambvp {

struct ExperimentSpec {
  std::string name;
  std::string system;
  std::string bc;
  double tau = 0.0;
  double dt = 0.0;
  std::string sweep;
  std::vector<std::string> expected;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentResult {
  ExperimentSpec spec;
  CatastropheSet set;
  std::vector<SingularityLabel> labels;
  std::vector<Check> checks;
  std::map<std::string, std::string> metadata;
  double seconds = 0.0;

  bool passed() const;
};

// Rejects unknowns outside [lo, hi] with DomainError.
RootProblem restrict_window(RootProblem problem, const Vector& lo, const Vector& hi);

struct CuspOptions {
  double dt = 0.1;
  int grid_n = 41;
  double mu_half_width = 0.25;
  double u_half_width = 1.0;
  bool check_halving = true;
};

// Well-conditioned cusp points of the shooting residual, nearest to mu = 0 first.
std::vector<SingularityLabel> cusp_prescan(const RootProblem& problem);

ExperimentResult run_cusp(const CuspOptions& opt = {});
ExperimentResult run_periodic_pitchfork(double dt = 1e-3);
ExperimentResult run_aa_pitchfork();
ExperimentResult run_timereversal_pitchfork(double dt = 5e-4);
ExperimentResult run_bratu(double dt = 1e-3);
ExperimentResult run_nonlagrangian_perturbation(double epsilon);

// Root problem of the perturbed D4+ gradient along mu = (-t, t / 10, 0), parameter t.
// Along mu2 = 0 the system keeps the x -> -x symmetry and the second event is a pitchfork.
RootProblem nonlagrangian_problem(double epsilon);

// Turning point of theta = sqrt(2 mu) cosh(theta / 4).
double bratu_analytic_fold();

struct D4Summary {
  double worst_hausdorff = 0.0;
  int mismatched_cardinality = 0;
  int points = 0;
};

// Fixed points of the closed-form D4+ map against roots of grad h on an m^3 grid in
// [-w, w]^3.
D4Summary d4plus_correspondence_grid(int m, double w);

std::vector<std::string> experiment_names();
ExperimentResult run_experiment(const std::string& name);

}  // namespace hambvp
