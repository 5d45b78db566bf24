#include "hambvp/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace hambvp {

namespace {

ParameterVector shifted(const ParameterVector& mu, int i, double d) {
  Vector v = mu.values();
  v[i] += d;
  return ParameterVector(v);
}

double eval(const ScalarResidual& r, const ParameterVector& mu, double u) {
  double v;
  try {
    v = r(mu, u);
  } catch (const ClassificationError&) {
    throw;
  } catch (const Error& e) {
    throw ClassificationError(std::string("residual failed on a stencil point: ") + e.what());
  }
  if (!std::isfinite(v)) throw ClassificationError("non-finite residual on a stencil point");
  return v;
}

using VecFn = std::function<Vector(const Vector&)>;

struct ExtRoot {
  Vector x;
  double condition;  // of the Jacobian at the last iterate
};

// Newton with central-difference Jacobian on a small square system.
std::optional<ExtRoot> newton_ext(const VecFn& G, Vector x) {
  const Eigen::Index m = x.size();
  double last = INFINITY;
  double cond = INFINITY;
  for (int it = 0; it < 40; ++it) {
    Vector g;
    Matrix J(m, m);
    try {
      g = G(x);
      for (Eigen::Index j = 0; j < m; ++j) {
        const double h = 1e-5 * (1.0 + std::abs(x[j]));
        Vector xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        J.col(j) = (G(xp) - G(xm)) / (xp[j] - xm[j]);
      }
    } catch (const Error&) {
      return std::nullopt;
    }
    if (!all_finite(g) || !J.allFinite()) return std::nullopt;
    Eigen::ColPivHouseholderQR<Matrix> qr(J);
    if (qr.rank() < m) return std::nullopt;
    Eigen::JacobiSVD<Matrix> svd(J);
    const auto& sv = svd.singularValues();
    cond = sv[m - 1] > 0.0 ? sv[0] / sv[m - 1] : INFINITY;
    const Vector dx = -qr.solve(g);
    x += dx;
    last = dx.norm();
    if (last <= 1e-11 * (1.0 + x.norm())) return ExtRoot{x, cond};
  }
  if (last <= 1e-7 * (1.0 + x.norm())) return ExtRoot{x, cond};
  return std::nullopt;
}

double d1(const ScalarResidual& r, const ParameterVector& mu, double u) {
  const double h = 1e-4 * (1.0 + std::abs(u));
  return (r(mu, u + h) - r(mu, u - h)) / (2.0 * h);
}

double d2(const ScalarResidual& r, const ParameterVector& mu, double u) {
  const double h = 1e-3 * (1.0 + std::abs(u));
  return (r(mu, u + h) - 2.0 * r(mu, u) + r(mu, u - h)) / (h * h);
}

ParameterVector with(const ParameterVector& mu, int i, double v) {
  Vector w = mu.values();
  w[i] = v;
  return ParameterVector(w);
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// Greedy nearest matching of `small` into `big`; returns indices of unmatched big roots.
std::vector<std::size_t> unmatched(const std::vector<Vector>& big, const std::vector<Vector>& small) {
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < small.size(); ++a)
    for (std::size_t b = 0; b < big.size(); ++b)
      pairs.emplace_back((small[a] - big[b]).norm(), a, b);
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> us(small.size(), false), ub(big.size(), false);
  for (const auto& [d, a, b] : pairs) {
    if (us[a] || ub[b]) continue;
    us[a] = ub[b] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < big.size(); ++b)
    if (!ub[b]) out.push_back(b);
  return out;
}

std::vector<Vector> unknowns(const std::vector<Sample>& s) {
  std::vector<Vector> out;
  for (const auto& x : s) out.push_back(x.unknowns);
  return out;
}

std::vector<Vector> unknowns(const std::vector<const Sample*>& s) {
  std::vector<Vector> out;
  for (const auto* x : s) out.push_back(x->unknowns);
  return out;
}

ParameterVector midpoint(const ParameterVector& a, const ParameterVector& b) {
  return ParameterVector(Vector(0.5 * (a.values() + b.values())));
}

// Merge events between two parameter values with different root counts.
void bisect(const RootProblem& problem, const SolverConfig& cfg, ParameterVector lo,
            std::vector<Vector> sols_lo, ParameterVector hi, std::vector<Vector> sols_hi,
            int axis, std::size_t grid_index, int depth, double split_floor,
            std::vector<Candidate>& out) {
  while (std::abs(hi[axis] - lo[axis]) > 1e-8 && depth < 200) {
    ++depth;
    // Off-centre split so symmetric grids do not land exactly on a degenerate parameter.
    const ParameterVector mid(Vector(lo.values() + 0.4937 * (hi.values() - lo.values())));
    std::vector<Vector> seeds = sols_lo;
    seeds.insert(seeds.end(), sols_hi.begin(), sols_hi.end());
    const auto sm = unknowns(solve_multistart(problem, mid, seeds, cfg));
    if (sm.size() == sols_lo.size()) {
      lo = mid;
      sols_lo = sm;
    } else if (sm.size() == sols_hi.size()) {
      hi = mid;
      sols_hi = sm;
    } else if (std::abs(hi[axis] - lo[axis]) > split_floor) {
      bisect(problem, cfg, lo, sols_lo, mid, sm, axis, grid_index, depth, split_floor, out);
      bisect(problem, cfg, mid, sm, hi, sols_hi, axis, grid_index, depth, split_floor, out);
      return;
    } else {
      // Close to a degenerate point the root count is no longer resolved; report
      // the current bracket.
      break;
    }
  }
  const bool lo_big = sols_lo.size() > sols_hi.size();
  const auto& big = lo_big ? sols_lo : sols_hi;
  const auto& small = lo_big ? sols_hi : sols_lo;
  const auto free = unmatched(big, small);
  if (free.size() < 2) return;  // a root crossing the window or domain edge

  // Single-linkage clusters of the unmatched roots.
  std::vector<int> cluster(free.size(), -1);
  int nclusters = 0;
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = nclusters;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < free.size(); ++b) {
        if (cluster[b] >= 0) continue;
        const Vector& ua = big[free[a]];
        if ((ua - big[free[b]]).norm() <= 1e-2 * (1.0 + ua.norm())) {
          cluster[b] = nclusters;
          stack.push_back(b);
        }
      }
    }
    ++nclusters;
  }
  for (int c = 0; c < nclusters; ++c) {
    std::vector<Vector> members;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (cluster[i] == c) members.push_back(big[free[i]]);
    if (members.size() < 2) continue;
    Vector centre = Vector::Zero(members[0].size());
    for (const auto& m : members) centre += m;
    centre /= static_cast<double>(members.size());
    double radius = 0.0;
    for (const auto& m : members) radius = std::max(radius, (m - centre).norm());
    int mult = 0;
    for (const auto& b : big)
      if ((b - centre).norm() <= std::max(2.0 * radius, 10.0 * cfg.dedup_tol)) ++mult;
    Candidate cand;
    cand.mu = midpoint(lo, hi);
    cand.unknowns = centre;
    cand.multiplicity = mult;
    cand.grid_index = grid_index;
    cand.axis = axis;
    cand.bracket = std::abs(hi[axis] - lo[axis]);
    out.push_back(cand);
  }
}

}  // namespace

std::string to_string(SingularityKind kind) {
  switch (kind) {
    case SingularityKind::Regular: return "regular";
    case SingularityKind::Fold: return "fold";
    case SingularityKind::Cusp: return "cusp";
    case SingularityKind::Pitchfork: return "pitchfork";
    case SingularityKind::UnclassifiedDegenerate: return "unclassified-degenerate";
  }
  return "unknown";
}

ScalarResidual scalar_view(const RootProblem& problem) {
  if (problem.dim != 1) throw ClassificationError("scalar residual needs exactly one unknown");
  return [problem](const ParameterVector& mu, double u) {
    return problem.residual(mu, Vector::Constant(1, u))[0];
  };
}

SingularityLabel classify_point(const ScalarResidual& r, const ParameterVector& mu0, double u0,
                                const ClassifierThresholds& th) {
  const double hu = th.step * (1.0 + std::abs(u0));
  double f[5];
  for (int k = -2; k <= 2; ++k) f[k + 2] = eval(r, mu0, u0 + k * hu);
  const double r0 = f[2];
  const double ru = (-f[4] + 8.0 * f[3] - 8.0 * f[1] + f[0]) / (12.0 * hu);
  const double ruu = (-f[4] + 16.0 * f[3] - 30.0 * f[2] + 16.0 * f[1] - f[0]) / (12.0 * hu * hu);
  const double ruuu = (f[4] - 2.0 * f[3] + 2.0 * f[1] - f[0]) / (2.0 * hu * hu * hu);

  const int p = mu0.size();
  std::vector<double> rmu(p), rumu(p), rmumu(p);
  for (int i = 0; i < p; ++i) {
    const double hm = th.step * (1.0 + std::abs(mu0[i]));
    const ParameterVector mp = shifted(mu0, i, hm), mm = shifted(mu0, i, -hm);
    const double fp = eval(r, mp, u0), fm = eval(r, mm, u0);
    rmu[i] = (fp - fm) / (2.0 * hm);
    rmumu[i] = (fp - 2.0 * r0 + fm) / (hm * hm);
    rumu[i] = (eval(r, mp, u0 + hu) - eval(r, mp, u0 - hu) - eval(r, mm, u0 + hu) +
               eval(r, mm, u0 - hu)) /
              (4.0 * hu * hm);
  }

  double scale = std::max({std::abs(ru), std::abs(ruu), std::abs(ruuu)});
  for (int i = 0; i < p; ++i) scale = std::max({scale, std::abs(rmu[i]), std::abs(rumu[i])});
  const double theta = th.absolute >= 0.0 ? th.absolute : th.relative * scale;

  SingularityLabel lab;
  lab.mu = mu0;
  lab.u = u0;
  auto& d = lab.diagnostics;
  d["r"] = r0;
  d["r_u"] = ru;
  d["r_uu"] = ruu;
  d["r_uuu"] = ruuu;
  d["r_mu"] = p ? rmu[0] : 0.0;
  d["r_umu"] = p ? rumu[0] : 0.0;
  d["r_mumu"] = p ? rmumu[0] : 0.0;
  for (int i = 1; i < p; ++i) {
    const std::string s = std::to_string(i + 1);
    d["r_mu" + s] = rmu[i];
    d["r_umu" + s] = rumu[i];
    d["r_mumu" + s] = rmumu[i];
  }
  d["theta"] = theta;

  auto small = [theta](double v) { return std::abs(v) <= theta; };
  double gm = 0.0, gu = 0.0;
  for (int i = 0; i < p; ++i) {
    gm += rmu[i] * rmu[i];
    gu += rumu[i] * rumu[i];
  }
  gm = std::sqrt(gm);
  gu = std::sqrt(gu);

  if (!small(ru)) {
    lab.kind = SingularityKind::Regular;
  } else if (!small(r0)) {
    lab.kind = SingularityKind::UnclassifiedDegenerate;
  } else if (!small(ruu)) {
    lab.kind = gm > theta ? SingularityKind::Fold : SingularityKind::UnclassifiedDegenerate;
  } else if (small(ruuu)) {
    lab.kind = SingularityKind::UnclassifiedDegenerate;
  } else if (p >= 2) {
    const double det = rmu[0] * rumu[1] - rmu[1] * rumu[0];
    d["det_mu"] = det;
    const bool independent = gm > theta && gu > theta && std::abs(det) > th.relative * gm * gu;
    lab.kind = independent ? SingularityKind::Cusp : SingularityKind::UnclassifiedDegenerate;
  } else if (p == 1 && small(rmu[0]) && !small(rumu[0])) {
    lab.kind = SingularityKind::Pitchfork;
  } else {
    lab.kind = SingularityKind::UnclassifiedDegenerate;
  }
  return lab;
}

std::vector<Candidate> detect_candidates(const CatastropheSet& set, const RootProblem& problem,
                                         const SolverConfig& cfg) {
  std::vector<Candidate> out;
  if (set.grid.empty()) return out;
  const auto counts = set.counts();
  std::vector<std::tuple<std::size_t, std::size_t, int>> edges;
  if (set.grid_shape.size() == 1) {
    for (std::size_t i = 0; i + 1 < set.grid.size(); ++i) edges.emplace_back(i, i + 1, 0);
  } else {
    const std::size_t rows = set.grid_shape[0], cols = set.grid_shape[1];
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t j = 0; j < cols; ++j) {
        const std::size_t a = r * cols + j;
        if (j + 1 < cols) edges.emplace_back(a, a + 1, 0);
        if (r + 1 < rows) edges.emplace_back(a, a + cols, 1);
      }
  }
  std::set<std::size_t> near_change;
  for (const auto& [a, b, axis] : edges) {
    if (counts[a] == counts[b]) continue;
    near_change.insert(a);
    near_change.insert(b);
    const double width = std::abs(set.grid[b][axis] - set.grid[a][axis]);
    bisect(problem, cfg, set.grid[a], unknowns(set.at(a)), set.grid[b], unknowns(set.at(b)), axis,
           a, 0, 1e-3 * width, out);
  }

  // Runs of near-singular samples on one branch, away from count changes (1-D only).
  if (set.grid_shape.size() == 1) {
    std::map<int, std::vector<const Sample*>> runs;
    auto flush = [&](int branch) {
      auto& run = runs[branch];
      if (!run.empty()) {
        const Sample* s = run[run.size() / 2];
        Candidate c;
        c.mu = s->mu;
        c.unknowns = s->unknowns;
        c.grid_index = s->grid_index;
        out.push_back(c);
      }
      run.clear();
    };
    for (const auto& s : set.samples) {
      const bool flagged = (s.flags & kNearSingular) && !near_change.count(s.grid_index);
      auto& run = runs[s.branch_id];
      if (flagged && (run.empty() || run.back()->grid_index + 1 == s.grid_index)) {
        run.push_back(&s);
      } else {
        flush(s.branch_id);
        if (flagged) runs[s.branch_id].push_back(&s);
      }
    }
    for (auto& [b, run] : runs) flush(b);

    // An event sitting on a grid node leaves both adjacent brackets without a merge.
    std::set<std::size_t> covered;
    for (const auto& c : out) covered.insert(c.grid_index);
    for (const auto& s : set.samples) {
      if (!(s.flags & kNearSingular) || !near_change.count(s.grid_index)) continue;
      const std::size_t k = s.grid_index;
      if (covered.count(k) || (k > 0 && covered.count(k - 1))) continue;
      Candidate c;
      c.mu = s.mu;
      c.unknowns = s.unknowns;
      c.grid_index = k;
      int most = counts[k];
      if (k > 0) most = std::max(most, counts[k - 1]);
      if (k + 1 < counts.size()) most = std::max(most, counts[k + 1]);
      c.multiplicity = most - counts[k] + 1;
      out.push_back(c);
      covered.insert(k);
    }
  }

  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.grid_index != b.grid_index) return a.grid_index < b.grid_index;
    if (a.mu[a.axis] != b.mu[b.axis]) return a.mu[a.axis] < b.mu[b.axis];
    return lex_less(a.unknowns, b.unknowns);
  });
  return out;
}

SingularityLabel refine_and_classify(const RootProblem& problem, const Candidate& c,
                                     const ClassifierThresholds& th) {
  const ScalarResidual r = scalar_view(problem);
  const int axis = c.axis;
  const ParameterVector base = c.mu;
  const double u0 = c.unknowns[0];
  Vector x0(2);
  x0 << base[axis], u0;
  const double reach = std::max(1e-3, 100.0 * c.bracket);
  auto near = [&](const Vector& x) {
    return std::abs(x[0] - x0[0]) <= reach && std::abs(x[1] - x0[1]) <= 0.1 * (1.0 + std::abs(u0));
  };
  auto fold_sys = [&](const Vector& x) {
    const ParameterVector m = with(base, axis, x[0]);
    Vector g(2);
    g << r(m, x[1]), d1(r, m, x[1]);
    return g;
  };
  auto pitch_sys = [&](const Vector& x) {
    const ParameterVector m = with(base, axis, x[0]);
    Vector g(2);
    g << d1(r, m, x[1]), d2(r, m, x[1]);
    return g;
  };

  std::optional<ExtRoot> best;
  if (c.multiplicity == 2 || c.multiplicity == 0) {
    auto e = newton_ext(fold_sys, x0);
    if (e && near(e->x)) best = e;
  }
  if (!best && (c.multiplicity == 3 || c.multiplicity == 0)) {
    auto e = newton_ext(pitch_sys, x0);
    if (e && near(e->x)) best = e;
  }
  const Vector x = best ? best->x : x0;
  SingularityLabel lab = classify_point(r, with(base, axis, x[0]), x[1], th);
  lab.diagnostics["multiplicity"] = c.multiplicity;
  lab.diagnostics["polished"] = best ? 1.0 : 0.0;
  return lab;
}

std::optional<SingularityLabel> refine_cusp(const RootProblem& problem, const ParameterVector& mu,
                                            double u, const ClassifierThresholds& th) {
  if (mu.size() < 2) throw ClassificationError("refine_cusp needs two parameters");
  const ScalarResidual r = scalar_view(problem);
  auto sys = [&](const Vector& x) {
    const ParameterVector m = with(with(mu, 0, x[0]), 1, x[1]);
    Vector g(3);
    g << r(m, x[2]), d1(r, m, x[2]), d2(r, m, x[2]);
    return g;
  };
  Vector x0(3);
  x0 << mu[0], mu[1], u;
  const auto e = newton_ext(sys, x0);
  if (!e) return std::nullopt;
  const Vector& x = e->x;
  SingularityLabel lab = classify_point(r, with(with(mu, 0, x[0]), 1, x[1]), x[2], th);
  lab.diagnostics["condition"] = e->condition;
  return lab;
}

std::vector<Polyline> fold_curves(const CatastropheSet& set) {
  std::vector<Polyline> curves;
  if (set.grid_shape.size() != 2) return curves;
  const std::size_t rows = set.grid_shape[0], cols = set.grid_shape[1];
  const auto counts = set.counts();

  struct Node {
    Eigen::Vector2d at;
    double u;
    int pair;
  };
  std::vector<Node> nodes;
  // Node id per edge, -1 when the edge carries no fold crossing.
  std::vector<int> hnode(rows * cols, -1), vnode(rows * cols, -1);

  auto make_node = [&](std::size_t a, std::size_t b) -> int {
    if (std::abs(counts[a] - counts[b]) != 2) return -1;
    const bool a_big = counts[a] > counts[b];
    auto big = unknowns(set.at(a_big ? a : b));
    auto small = unknowns(set.at(a_big ? b : a));
    std::sort(big.begin(), big.end(), lex_less);
    const auto free = unmatched(big, small);
    if (free.size() != 2) return -1;
    Node nd;
    const Vector& ga = set.grid[a].values();
    const Vector& gb = set.grid[b].values();
    nd.at = Eigen::Vector2d(0.5 * (ga[0] + gb[0]), 0.5 * (ga[1] + gb[1]));
    nd.u = 0.5 * (big[free[0]][0] + big[free[1]][0]);
    nd.pair = static_cast<int>(std::min(free[0], free[1]));
    nodes.push_back(nd);
    return static_cast<int>(nodes.size()) - 1;
  };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t a = r * cols + j;
      if (j + 1 < cols) hnode[a] = make_node(a, a + 1);
      if (r + 1 < rows) vnode[a] = make_node(a, a + cols);
    }

  std::vector<std::vector<int>> adj(nodes.size());
  auto link = [&](int p, int q) {
    adj[p].push_back(q);
    adj[q].push_back(p);
  };
  for (std::size_t r = 0; r + 1 < rows; ++r)
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      const std::size_t a = r * cols + j;
      const int ring[4] = {hnode[a], vnode[a + 1], hnode[a + cols], vnode[a]};
      std::map<int, std::vector<int>> by_pair;
      for (int id : ring)
        if (id >= 0) by_pair[nodes[id].pair].push_back(id);
      for (auto& [pair, ids] : by_pair) {
        if (ids.size() >= 2) link(ids[0], ids[1]);
        if (ids.size() == 4) link(ids[2], ids[3]);
      }
    }

  std::vector<bool> seen(nodes.size(), false);
  auto walk = [&](int start) {
    Polyline pl;
    pl.pair = nodes[start].pair;
    int prev = -1, cur = start;
    while (cur >= 0 && !seen[cur]) {
      seen[cur] = true;
      pl.points.push_back(nodes[cur].at);
      pl.u.push_back(nodes[cur].u);
      int next = -1;
      for (int q : adj[cur])
        if (q != prev && !seen[q]) {
          next = q;
          break;
        }
      prev = cur;
      cur = next;
    }
    curves.push_back(std::move(pl));
  };
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!seen[i] && adj[i].size() <= 1) walk(static_cast<int>(i));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!seen[i]) walk(static_cast<int>(i));
  return curves;
}

}  // namespace hambvp
