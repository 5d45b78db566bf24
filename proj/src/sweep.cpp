#include "hambvp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "hambvp/parallel.hpp"

namespace hambvp {

namespace {

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// Order-independent dedup: candidates are sorted before greedy clustering.
std::vector<Sample> dedup(std::vector<Sample> cands, double tol) {
  std::sort(cands.begin(), cands.end(), [](const Sample& a, const Sample& b) {
    if (lex_less(a.unknowns, b.unknowns)) return true;
    if (lex_less(b.unknowns, a.unknowns)) return false;
    return a.residual_norm < b.residual_norm;
  });
  std::vector<Sample> reps;
  for (auto& c : cands) {
    Sample* hit = nullptr;
    for (auto& r : reps) {
      if ((r.unknowns - c.unknowns).norm() < tol) {
        hit = &r;
        break;
      }
    }
    if (!hit) {
      reps.push_back(std::move(c));
      continue;
    }
    const double d = (hit->unknowns - c.unknowns).norm();
    hit->flags |= c.flags;
    if (d > 1e-8 * (1.0 + hit->unknowns.norm())) hit->flags |= kMerged;
    if (c.residual_norm < hit->residual_norm) {
      hit->unknowns = c.unknowns;
      hit->residual_norm = c.residual_norm;
    }
  }
  std::sort(reps.begin(), reps.end(),
            [](const Sample& a, const Sample& b) { return lex_less(a.unknowns, b.unknowns); });
  return reps;
}

unsigned singular_flag(const RootProblem& p, const ParameterVector& mu, const Vector& u,
                       const SolverConfig& cfg) {
  try {
    const Vector f = p.residual(mu, u);
    Matrix jac(p.dim, p.dim);
    for (int j = 0; j < p.dim; ++j) {
      Vector up = u;
      const double h = cfg.fd_step * (1.0 + std::abs(u[j]));
      up[j] += h;
      jac.col(j) = (p.residual(mu, up) - f) / (up[j] - u[j]);
    }
    Eigen::JacobiSVD<Matrix> svd(jac);
    const auto& s = svd.singularValues();
    return s[s.size() - 1] < 1e-6 * (1.0 + s[0]) ? kNearSingular : 0u;
  } catch (const Error&) {
    return kNearSingular;
  }
}

// Greedy nearest-neighbour matching; unmatched current samples open new branches.
void assign_branches(const std::vector<Sample>* prev, std::vector<Sample>& cur, int& next_id,
                     double jump) {
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  if (prev) {
    for (std::size_t a = 0; a < prev->size(); ++a)
      for (std::size_t b = 0; b < cur.size(); ++b) {
        const double d = ((*prev)[a].unknowns - cur[b].unknowns).norm();
        if (d <= jump) pairs.emplace_back(d, a, b);
      }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> used_prev(prev ? prev->size() : 0, false), used_cur(cur.size(), false);
  for (const auto& [d, a, b] : pairs) {
    if (used_prev[a] || used_cur[b]) continue;
    used_prev[a] = used_cur[b] = true;
    cur[b].branch_id = (*prev)[a].branch_id;
  }
  for (std::size_t b = 0; b < cur.size(); ++b)
    if (!used_cur[b]) cur[b].branch_id = next_id++;
}

std::vector<Vector> unknowns_of(const std::vector<Sample>& s) {
  std::vector<Vector> out;
  for (const auto& x : s) out.push_back(x.unknowns);
  return out;
}

// Nearby roots with no residual barrier between them are one root resolved only to
// the accuracy that a degenerate zero allows.
std::vector<Sample> consolidate(const RootProblem& p, const ParameterVector& mu,
                                std::vector<Sample> reps, const SolverConfig& cfg) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < reps.size() && !changed; ++a)
      for (std::size_t b = a + 1; b < reps.size() && !changed; ++b) {
        const double d = (reps[a].unknowns - reps[b].unknowns).norm();
        if (d > 1e-2 * (1.0 + reps[a].unknowns.norm())) continue;
        if (!(reps[a].flags & kNearSingular) && !(reps[b].flags & kNearSingular)) continue;
        double barrier = 0.0;
        try {
          barrier = p.residual(mu, 0.5 * (reps[a].unknowns + reps[b].unknowns)).norm();
        } catch (const Error&) {
          continue;
        }
        if (barrier > cfg.newton_tol) continue;
        const std::size_t keep = reps[b].residual_norm < reps[a].residual_norm ? b : a;
        const std::size_t drop = keep == a ? b : a;
        reps[keep].flags |= reps[drop].flags | kMerged;
        reps.erase(reps.begin() + static_cast<std::ptrdiff_t>(drop));
        changed = true;
      }
  }
  return reps;
}

std::vector<Sample> merge(const RootProblem& p, const ParameterVector& mu, std::vector<Sample> a,
                          std::vector<Sample> b, const SolverConfig& cfg) {
  a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
  return consolidate(p, mu, dedup(std::move(a), cfg.dedup_tol), cfg);
}

}  // namespace

std::vector<Sample> solve_multistart(const RootProblem& problem, const ParameterVector& mu,
                                     const std::vector<Vector>& seeds, const SolverConfig& cfg) {
  std::vector<Sample> cands;
  for (const auto& s : seeds) {
    try {
      const Solution sol = solve(problem, mu, s, cfg);
      Sample smp;
      smp.mu = mu;
      smp.unknowns = sol.unknowns;
      smp.residual_norm = sol.residual_norm;
      cands.push_back(std::move(smp));
    } catch (const NoConvergence&) {
    } catch (const SingularJacobian&) {
    }
  }
  auto reps = dedup(std::move(cands), cfg.dedup_tol);
  for (auto& r : reps) r.flags |= singular_flag(problem, mu, r.unknowns, cfg);
  return consolidate(problem, mu, std::move(reps), cfg);
}

std::vector<int> CatastropheSet::counts() const {
  std::vector<int> c(grid.size(), 0);
  for (const auto& s : samples) ++c[s.grid_index];
  return c;
}

std::vector<const Sample*> CatastropheSet::at(std::size_t grid_index) const {
  std::vector<const Sample*> out;
  for (const auto& s : samples)
    if (s.grid_index == grid_index) out.push_back(&s);
  return out;
}

std::size_t CatastropheSet::index_of(const ParameterVector& mu) const {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vector& g = grid[i].values();
    if (g.size() != mu.size()) continue;
    if ((g - mu.values()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + g.cwiseAbs().maxCoeff()))
      return i;
  }
  throw OffGrid("parameter value is not on the swept grid");
}

int count_solutions(const CatastropheSet& set, const ParameterVector& mu) {
  if (set.grid.empty()) return 0;
  return set.counts()[set.index_of(mu)];
}

CatastropheSet sweep_1d(const RootProblem& problem, const std::vector<ParameterVector>& mu_axis,
                        const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t n = mu_axis.size();
  std::vector<std::vector<Sample>> sols(n);
  parallel_for(
      n, [&](std::size_t i) { sols[i] = solve_multistart(problem, mu_axis[i], cfg.seed_grid, cfg); },
      cfg.workers);
  for (std::size_t i = 1; i < n; ++i) {
    if (sols[i - 1].empty()) continue;
    auto cont = solve_multistart(problem, mu_axis[i], unknowns_of(sols[i - 1]), cfg);
    sols[i] = merge(problem, mu_axis[i], std::move(sols[i]), std::move(cont), cfg);
  }
  CatastropheSet set;
  set.k = problem.dim;
  set.grid_shape = {n};
  set.grid = mu_axis;
  int next_id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    assign_branches(i ? &sols[i - 1] : nullptr, sols[i], next_id, cfg.branch_jump);
    for (auto& s : sols[i]) {
      s.grid_index = i;
      set.samples.push_back(s);
    }
  }
  return set;
}

CatastropheSet sweep_2d(const RootProblem& problem,
                        const std::vector<std::vector<ParameterVector>>& mu_grid,
                        const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t rows = mu_grid.size();
  const std::size_t cols = rows ? mu_grid[0].size() : 0;
  for (const auto& r : mu_grid)
    if (r.size() != cols) throw Error("sweep_2d: grid is not rectangular");

  CatastropheSet set;
  set.k = problem.dim;
  set.grid_shape = {rows, cols};
  for (const auto& r : mu_grid) set.grid.insert(set.grid.end(), r.begin(), r.end());

  std::vector<std::vector<Sample>> prev_row;
  int next_id = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::vector<Sample>> row(cols);
    parallel_for(
        cols,
        [&](std::size_t j) {
          auto s = solve_multistart(problem, mu_grid[r][j], cfg.seed_grid, cfg);
          if (r > 0 && !prev_row[j].empty()) {
            auto c = solve_multistart(problem, mu_grid[r][j], unknowns_of(prev_row[j]), cfg);
            s = merge(problem, mu_grid[r][j], std::move(s), std::move(c), cfg);
          }
          row[j] = std::move(s);
        },
        cfg.workers);
    for (std::size_t j = 1; j < cols; ++j) {
      if (row[j - 1].empty()) continue;
      auto c = solve_multistart(problem, mu_grid[r][j], unknowns_of(row[j - 1]), cfg);
      row[j] = merge(problem, mu_grid[r][j], std::move(row[j]), std::move(c), cfg);
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const std::vector<Sample>* ref = j ? &row[j - 1] : (r ? &prev_row[0] : nullptr);
      assign_branches(ref, row[j], next_id, cfg.branch_jump);
      for (auto& s : row[j]) {
        s.grid_index = r * cols + j;
        set.samples.push_back(s);
      }
    }
    prev_row = std::move(row);
  }
  return set;
}

CatastropheSet sweep_1d(const SymplecticMapFamily& map, const BoundaryCondition& bc,
                        const std::vector<ParameterVector>& mu_axis, const SolverConfig& cfg) {
  return sweep_1d(shooting_problem(map, bc), mu_axis, cfg);
}

CatastropheSet sweep_2d(const SymplecticMapFamily& map, const BoundaryCondition& bc,
                        const std::vector<std::vector<ParameterVector>>& mu_grid,
                        const SolverConfig& cfg) {
  return sweep_2d(shooting_problem(map, bc), mu_grid, cfg);
}

std::vector<ParameterVector> linspace_axis(double lo, double hi, int count) {
  std::vector<ParameterVector> axis;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    axis.push_back(ParameterVector{lo + t * (hi - lo)});
  }
  return axis;
}

std::vector<std::vector<ParameterVector>> linspace_grid(double lo1, double hi1, int n1,
                                                        double lo2, double hi2, int n2) {
  std::vector<std::vector<ParameterVector>> grid;
  for (int i = 0; i < n2; ++i) {
    const double t2 = n2 == 1 ? 0.0 : static_cast<double>(i) / (n2 - 1);
    std::vector<ParameterVector> row;
    for (int j = 0; j < n1; ++j) {
      const double t1 = n1 == 1 ? 0.0 : static_cast<double>(j) / (n1 - 1);
      row.push_back(ParameterVector{lo1 + t1 * (hi1 - lo1), lo2 + t2 * (hi2 - lo2)});
    }
    grid.push_back(std::move(row));
  }
  return grid;
}

}  // namespace hambvp
