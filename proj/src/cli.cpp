#include "hambvp/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hambvp/config.hpp"
#include "hambvp/csv.hpp"
#include "hambvp/errors.hpp"
#include "hambvp/experiments.hpp"
#include "hambvp/symplectic.hpp"
#include "hambvp/systems.hpp"

namespace hambvp {

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Overrides {
  std::string config;
  std::string out;
  std::optional<double> dt;
  std::optional<double> tau;
  std::optional<double> tol;
};

RunConfig resolve(const Overrides& o) {
  if (o.config.empty()) throw ConfigError("--config is required");
  RunConfig cfg = load_config(o.config);
  if (o.dt) cfg.dt = *o.dt;
  if (o.tau) cfg.tau = *o.tau;
  if (o.tol) cfg.solver.newton_tol = *o.tol;
  if (!o.out.empty()) cfg.output = o.out;
  cfg.validate();
  return cfg;
}

struct Setup {
  HamiltonianFamily family;
  SymplecticMapFamily map;
  BoundaryCondition bc;
  RootProblem problem;
  RootProblem restricted;
};

Setup setup(const RunConfig& cfg) {
  HamiltonianFamily fam = hamiltonian_by_name(cfg.system);
  SymplecticMapFamily map = as_map(fam, cfg.tau, cfg.dt);
  BoundaryCondition bc = make_bc(cfg.bc, fam.n);
  RootProblem problem = shooting_problem(map, bc);
  RootProblem restricted = problem;
  if (cfg.window)
    restricted = restrict_window(problem, Vector::Constant(problem.dim, cfg.window->first),
                                 Vector::Constant(problem.dim, cfg.window->second));
  return {std::move(fam), std::move(map), std::move(bc), std::move(problem), std::move(restricted)};
}

SolverConfig solver_of(const RunConfig& cfg, int dim) {
  SolverConfig s = cfg.solver;
  if (dim == 1) {
    s.seed_grid = seed_line(cfg.seeds.lo, cfg.seeds.hi, cfg.seeds.count);
  } else {
    s.seed_grid = seed_box(Vector::Constant(dim, cfg.seeds.lo), Vector::Constant(dim, cfg.seeds.hi),
                           cfg.seeds.count);
  }
  return s;
}

ParameterVector point_mu(const RunConfig& cfg) {
  const int p = parameter_count(cfg.system);
  if (static_cast<int>(cfg.mu.size()) != p)
    throw ConfigError("system.mu: expected " + std::to_string(p) + " value(s)");
  return ParameterVector(Eigen::Map<const Vector>(cfg.mu.data(), p));
}

CatastropheSet sweep_of(const RunConfig& cfg, const RootProblem& problem, const SolverConfig& s) {
  if (!cfg.mu1) throw ConfigError("sweep.mu1 is required");
  const auto& a = *cfg.mu1;
  if (cfg.mu2) {
    const auto& b = *cfg.mu2;
    return sweep_2d(problem, linspace_grid(a.lo, a.hi, a.count, b.lo, b.hi, b.count), s);
  }
  if (parameter_count(cfg.system) != 1) throw ConfigError("sweep.mu2 is required for this system");
  return sweep_1d(problem, linspace_axis(a.lo, a.hi, a.count), s);
}

void write_or_print(const CatastropheSet& set, const std::vector<SingularityLabel>& labels,
                    const std::string& path, const std::map<std::string, std::string>& meta,
                    std::ostream& out) {
  if (path.empty()) {
    out << format_csv(set, labels);
  } else {
    emit_csv(set, labels, path, meta);
    out << "wrote " << path << "\n";
  }
}

int cmd_check_bc(const std::string& file, std::optional<double> tol, std::ostream& out) {
  const Matrix A = parse_matrix(read_file(file));
  if (A.cols() % 4 != 0 || A.rows() * 2 != A.cols())
    throw ConfigError("matrix must be 2n x 4n, got " + std::to_string(A.rows()) + " x " +
                      std::to_string(A.cols()));
  const auto v = is_lagrangian_linear(A, tol.value_or(-1.0));
  out << "lagrangian: " << (v.is_lagrangian ? "true" : "false") << "\n";
  out << "defect: " << fmt(v.defect) << "\n";
  out << "kernel_dim: " << v.kernel_dim << "\n";
  return kOk;
}

int cmd_solve(const Overrides& o, std::ostream& out) {
  const RunConfig cfg = resolve(o);
  const Setup s = setup(cfg);
  const SolverConfig sc = solver_of(cfg, s.problem.dim);
  const auto sols = solve_multistart(s.restricted, point_mu(cfg), sc.seed_grid, sc);
  out << sols.size() << " solution(s)\n";
  for (const auto& sol : sols) {
    out << "u =";
    for (Eigen::Index i = 0; i < sol.unknowns.size(); ++i) out << " " << fmt(sol.unknowns[i]);
    out << "  residual = " << fmt(sol.residual_norm) << "\n";
  }
  return kOk;
}

int cmd_sweep(const Overrides& o, std::ostream& out) {
  const RunConfig cfg = resolve(o);
  const Setup s = setup(cfg);
  const SolverConfig sc = solver_of(cfg, s.problem.dim);
  const CatastropheSet set = sweep_of(cfg, s.restricted, sc);
  write_or_print(set, {}, cfg.output, {{"system", cfg.system}, {"dt", fmt(cfg.dt)}, {"tau", fmt(cfg.tau)}},
                 out);
  return kOk;
}

int cmd_classify(const Overrides& o, std::ostream& out) {
  const RunConfig cfg = resolve(o);
  const Setup s = setup(cfg);
  const SolverConfig sc = solver_of(cfg, s.problem.dim);
  const CatastropheSet set = sweep_of(cfg, s.restricted, sc);
  std::vector<SingularityLabel> labels;
  if (set.grid_shape.size() == 2) {
    for (const auto& pl : fold_curves(set)) {
      out << "fold curve: " << pl.points.size() << " vertices from (" << fmt(pl.points.front()[0]) << ", "
          << fmt(pl.points.front()[1]) << ") to (" << fmt(pl.points.back()[0]) << ", "
          << fmt(pl.points.back()[1]) << ")\n";
    }
  }
  for (const auto& c : detect_candidates(set, s.restricted, sc)) {
    try {
      labels.push_back(refine_and_classify(s.problem, c));
    } catch (const ClassificationError&) {
    }
  }
  for (const auto& l : labels) {
    out << to_string(l.kind) << " at mu =";
    for (Eigen::Index i = 0; i < l.mu.size(); ++i) out << " " << fmt(l.mu[i]);
    out << ", u = " << fmt(l.u) << "\n";
  }
  if (!cfg.output.empty()) {
    emit_csv(set, labels, cfg.output, {{"system", cfg.system}, {"dt", fmt(cfg.dt)}, {"tau", fmt(cfg.tau)}});
    out << "wrote " << cfg.output << "\n";
  }
  return kOk;
}

int cmd_symmetry(const Overrides& o, std::ostream& out) {
  const RunConfig cfg = resolve(o);
  const Setup s = setup(cfg);
  const ParameterVector mu = point_mu(cfg);
  const int n = s.family.n;
  Vector lo = Vector::Constant(2 * n, -1.0), hi = Vector::Constant(2 * n, 1.0);
  if (s.family.domain) {
    lo.head(n) = s.family.domain->lo.head(n).cwiseMax(-1.0);
    hi.head(n) = s.family.domain->hi.head(n).cwiseMin(1.0);
  }
  const auto pts = halton_points(lo, hi, 100);
  const auto rep = check_reversal_symmetry(s.map, mu, momentum_flip(), pts, 1e-6);
  out << "reversal symmetry (x, y) -> (x, -y): max defect " << fmt(rep.max_defect) << " over "
      << rep.evaluated << " point(s), " << rep.domain_failures.size() << " outside the domain\n";
  out << "verdict: " << (rep.passed ? "symmetric" : "not symmetric") << "\n";
  if (cfg.mu1 && parameter_count(cfg.system) == 1 && s.bc.kind_name() == "dirichlet") {
    const SolverConfig sc = solver_of(cfg, s.problem.dim);
    const CatastropheSet set = sweep_of(cfg, s.restricted, sc);
    std::optional<std::pair<double, double>> window = cfg.window;
    if (!window) window = std::make_pair(cfg.seeds.lo, cfg.seeds.hi);
    const auto pr = check_reversal_pairing(set, s.map, s.bc, 1e-6, window);
    out << "pairing: " << pr.checked << " checked, " << pr.violations.size() << " violation(s), "
        << pr.self_paired << " self-paired, " << pr.unverifiable << " unverifiable\n";
    return rep.passed && pr.violations.empty() ? kOk : kCheckFailed;
  }
  return rep.passed ? kOk : kCheckFailed;
}

int cmd_repro(const std::string& name, const Overrides& o, std::ostream& out) {
  ExperimentResult res;
  if (o.dt && name == "cusp") {
    CuspOptions opt;
    opt.dt = *o.dt;
    res = run_cusp(opt);
  } else if (o.dt && name == "periodic-pitchfork") {
    res = run_periodic_pitchfork(*o.dt);
  } else if (o.dt && name == "timereversal-pitchfork") {
    res = run_timereversal_pitchfork(*o.dt);
  } else if (o.dt && name == "bratu") {
    res = run_bratu(*o.dt);
  } else if (o.dt) {
    throw ConfigError("--dt does not apply to '" + name + "'");
  } else {
    res = run_experiment(name);
  }
  out << "experiment: " << res.spec.name << "\n";
  for (const auto& [k, v] : res.metadata) out << k << ": " << v << "\n";
  for (const auto& l : res.labels) {
    if (l.kind == SingularityKind::Regular) continue;
    out << to_string(l.kind) << " mu* =";
    for (Eigen::Index i = 0; i < l.mu.size(); ++i) out << " " << fmt(l.mu[i]);
    out << ", u* = " << fmt(l.u) << "\n";
  }
  for (const auto& c : res.checks) out << (c.passed ? "ok   " : "FAIL ") << c.name << ": " << c.detail << "\n";
  out << "runtime: " << fmt(res.seconds) << " s\n";
  if (!o.out.empty()) {
    auto meta = res.metadata;
    meta["experiment"] = res.spec.name;
    meta["dt"] = fmt(res.spec.dt);
    meta["tau"] = fmt(res.spec.tau);
    emit_csv(res.set, res.labels, o.out, meta);
    out << "wrote " << o.out << "\n";
  }
  return res.passed() ? kOk : kCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary value problems for parametrized Hamiltonian systems", "hambvp"};
  app.require_subcommand(1);
  Overrides o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "Run configuration file");
    sub->add_option("--out", o.out, "Output CSV path");
    sub->add_option("--dt", o.dt, "Integrator step override");
    sub->add_option("--tau", o.tau, "Flow time override");
    sub->add_option("--tol", o.tol, "Newton tolerance override");
  };
  std::string matrix_file, experiment;
  auto* check_bc = app.add_subcommand("check-bc", "Lagrangian test of a linear condition A (2n x 4n)");
  check_bc->add_option("matrix", matrix_file, "Matrix file")->required();
  check_bc->add_option("--tol", o.tol, "Tolerance (default 1e-10 ||A||)");
  auto* solve_cmd = app.add_subcommand("solve", "All shooting solutions at system.mu");
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep written as CSV");
  auto* classify_cmd = app.add_subcommand("classify", "Sweep and classify singular points");
  auto* symmetry_cmd = app.add_subcommand("symmetry", "Reversal symmetry and pairing checks");
  auto* repro_cmd = app.add_subcommand("repro", "Run a packaged experiment");
  std::string names;
  for (const auto& n : experiment_names()) names += (names.empty() ? "" : ", ") + n;
  repro_cmd->add_option("name", experiment, "One of: " + names)->required();
  for (auto* sub : {solve_cmd, sweep_cmd, classify_cmd, symmetry_cmd}) add_common(sub);
  repro_cmd->add_option("--out", o.out, "Output CSV path");
  repro_cmd->add_option("--dt", o.dt, "Integrator step override");

  if (args.empty()) {
    err << app.help();
    return kUsage;
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }
  try {
    if (*check_bc) return cmd_check_bc(matrix_file, o.tol, out);
    if (*solve_cmd) return cmd_solve(o, out);
    if (*sweep_cmd) return cmd_sweep(o, out);
    if (*classify_cmd) return cmd_classify(o, out);
    if (*symmetry_cmd) return cmd_symmetry(o, out);
    if (*repro_cmd) return cmd_repro(experiment, o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace hambvp
