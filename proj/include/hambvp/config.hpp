#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hambvp/boundary.hpp"
#include "hambvp/solver.hpp"

namespace hambvp {

struct AxisSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

struct BcSpec {
  std::string kind = "dirichlet";  // dirichlet | neumann | periodic
  std::vector<double> start;       // x* or y*
  std::vector<double> end;         // X* or Y*
};

// Plain run description. Sections and keys:
//   [system]      name, mu
//   [bc]          kind, start, end
//   [integration] tau, dt
//   [sweep]       mu1 = lo, hi, count; mu2 = lo, hi, count
//   [solver]      newton_tol, max_iters, fd_step, dedup_tol, damping, branch_jump,
//                 seeds = lo, hi, count; window = lo, hi
//   [output]      path
struct RunConfig {
  std::string system = "bratu";
  std::vector<double> mu;
  BcSpec bc;
  double tau = 1.0;
  double dt = 1e-3;
  std::optional<AxisSpec> mu1;
  std::optional<AxisSpec> mu2;
  SolverConfig solver;
  AxisSpec seeds{-5.0, 5.0, 21};
  std::optional<std::pair<double, double>> window;
  std::string output;

  // Throws ConfigError listing every violation.
  void validate() const;
};

// Throws ConfigError with the line number on malformed or unknown entries.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

BoundaryCondition make_bc(const BcSpec& spec, int n);
std::string to_config(const BcSpec& spec);

// n x m matrix from whitespace or comma separated rows; '#' starts a comment.
Matrix parse_matrix(const std::string& text);

}  // namespace hambvp
