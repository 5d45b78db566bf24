#include "hambvp/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hambvp/errors.hpp"
#include "hambvp/systems.hpp"

namespace hambvp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(int line) { return "line " + std::to_string(line) + ": "; }

double to_double(const std::string& s, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(where(line) + "expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw ConfigError(where(line) + "expected a number, got '" + s + "'");
  return v;
}

int to_int(const std::string& s, int line) {
  const double v = to_double(s, line);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw ConfigError(where(line) + "expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

bool to_bool(const std::string& s, int line) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(where(line) + "expected a boolean, got '" + s + "'");
}

std::vector<double> to_list(const std::string& s, int line) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item), line));
  return out;
}

AxisSpec to_axis(const std::string& s, int line) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  if (parts.size() != 3) throw ConfigError(where(line) + "expected 'lo, hi, count'");
  return {to_double(parts[0], line), to_double(parts[1], line), to_int(parts[2], line)};
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"system.name", [](RunConfig& c, const std::string& v, int) { c.system = v; }},
      {"system.mu", [](RunConfig& c, const std::string& v, int l) { c.mu = to_list(v, l); }},
      {"bc.kind", [](RunConfig& c, const std::string& v, int) { c.bc.kind = v; }},
      {"bc.start", [](RunConfig& c, const std::string& v, int l) { c.bc.start = to_list(v, l); }},
      {"bc.end", [](RunConfig& c, const std::string& v, int l) { c.bc.end = to_list(v, l); }},
      {"integration.tau", [](RunConfig& c, const std::string& v, int l) { c.tau = to_double(v, l); }},
      {"integration.dt", [](RunConfig& c, const std::string& v, int l) { c.dt = to_double(v, l); }},
      {"sweep.mu1", [](RunConfig& c, const std::string& v, int l) { c.mu1 = to_axis(v, l); }},
      {"sweep.mu2", [](RunConfig& c, const std::string& v, int l) { c.mu2 = to_axis(v, l); }},
      {"solver.newton_tol",
       [](RunConfig& c, const std::string& v, int l) { c.solver.newton_tol = to_double(v, l); }},
      {"solver.max_iters",
       [](RunConfig& c, const std::string& v, int l) { c.solver.max_iters = to_int(v, l); }},
      {"solver.fd_step",
       [](RunConfig& c, const std::string& v, int l) { c.solver.fd_step = to_double(v, l); }},
      {"solver.dedup_tol",
       [](RunConfig& c, const std::string& v, int l) { c.solver.dedup_tol = to_double(v, l); }},
      {"solver.damping",
       [](RunConfig& c, const std::string& v, int l) { c.solver.damping = to_bool(v, l); }},
      {"solver.branch_jump",
       [](RunConfig& c, const std::string& v, int l) { c.solver.branch_jump = to_double(v, l); }},
      {"solver.seeds", [](RunConfig& c, const std::string& v, int l) { c.seeds = to_axis(v, l); }},
      {"solver.window",
       [](RunConfig& c, const std::string& v, int l) {
         const auto w = to_list(v, l);
         if (w.size() != 2) throw ConfigError(where(l) + "expected 'lo, hi'");
         c.window = std::make_pair(w[0], w[1]);
       }},
      {"output.path", [](RunConfig& c, const std::string& v, int) { c.output = v; }},
  };
  return table;
}

void check_axis(const AxisSpec& a, const std::string& name, std::vector<std::string>& errs) {
  if (!std::isfinite(a.lo) || !std::isfinite(a.hi)) errs.push_back(name + ": bounds must be finite");
  if (a.count < 1) errs.push_back(name + ": count must be at least 1");
  if (a.count > 1 && !(a.hi > a.lo)) errs.push_back(name + ": hi must exceed lo");
}

}  // namespace

void RunConfig::validate() const {
  std::vector<std::string> errs;
  const auto names = builtin_hamiltonians();
  int p = 0;
  if (std::find(names.begin(), names.end(), system) == names.end()) {
    errs.push_back("system.name: unknown system '" + system + "'");
  } else {
    p = parameter_count(system);
  }
  if (!mu.empty() && p > 0 && static_cast<int>(mu.size()) != p)
    errs.push_back("system.mu: expected " + std::to_string(p) + " value(s)");
  if (bc.kind != "dirichlet" && bc.kind != "neumann" && bc.kind != "periodic")
    errs.push_back("bc.kind: must be dirichlet, neumann or periodic");
  if (bc.kind != "periodic" && (bc.start.size() != 1 || bc.end.size() != 1))
    errs.push_back("bc.start/bc.end: one value each for a one-degree-of-freedom system");
  if (!(tau > 0.0) || !std::isfinite(tau)) errs.push_back("integration.tau: must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) errs.push_back("integration.dt: must be positive");
  else if (dt > tau) errs.push_back("integration.dt: must not exceed tau");
  if (mu1) check_axis(*mu1, "sweep.mu1", errs);
  if (mu2) check_axis(*mu2, "sweep.mu2", errs);
  if (mu2 && !mu1) errs.push_back("sweep.mu2: requires sweep.mu1");
  if (mu2 && p == 1) errs.push_back("sweep.mu2: system has one parameter");
  check_axis(seeds, "solver.seeds", errs);
  if (window && !(window->second > window->first)) errs.push_back("solver.window: hi must exceed lo");
  if (!(solver.newton_tol > 0.0)) errs.push_back("solver.newton_tol: must be positive");
  if (solver.max_iters < 1) errs.push_back("solver.max_iters: must be at least 1");
  if (!(solver.fd_step > 0.0)) errs.push_back("solver.fd_step: must be positive");
  if (!(solver.dedup_tol > 0.0)) errs.push_back("solver.dedup_tol: must be positive");
  if (!(solver.branch_jump > 0.0)) errs.push_back("solver.branch_jump: must be positive");
  if (errs.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& e : errs) msg += "\n  " + e;
  throw ConfigError(msg);
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.bc.start = {0.0};
  cfg.bc.end = {0.0};
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(where(line) + "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(where(line) + "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty()) throw ConfigError(where(line) + "key '" + key + "' outside any section");
    const auto it = setters().find(section + "." + key);
    if (it == setters().end())
      throw ConfigError(where(line) + "unknown key '" + key + "' in section [" + section + "]");
    it->second(cfg, value, line);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

BoundaryCondition make_bc(const BcSpec& spec, int n) {
  if (spec.kind == "periodic") return BoundaryCondition::periodic(n);
  const Vector a = Eigen::Map<const Vector>(spec.start.data(), static_cast<Eigen::Index>(spec.start.size()));
  const Vector b = Eigen::Map<const Vector>(spec.end.data(), static_cast<Eigen::Index>(spec.end.size()));
  if (spec.kind == "dirichlet") return BoundaryCondition::dirichlet(a, b);
  if (spec.kind == "neumann") return BoundaryCondition::neumann(a, b);
  throw ConfigError("unknown boundary condition kind '" + spec.kind + "'");
}

std::string to_config(const BcSpec& spec) {
  auto list = [](const std::vector<double>& v) {
    std::string s;
    char buf[32];
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", v[i]);
      s += (i ? ", " : "") + std::string(buf);
    }
    return s;
  };
  std::string out = "[bc]\nkind = " + spec.kind + "\n";
  if (spec.kind != "periodic") out += "start = " + list(spec.start) + "\nend = " + list(spec.end) + "\n";
  return out;
}

Matrix parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::string s = hash == std::string::npos ? raw : raw.substr(0, hash);
    for (char& ch : s)
      if (ch == ',' || ch == ';' || ch == '[' || ch == ']') ch = ' ';
    std::istringstream ls(s);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) row.push_back(to_double(tok, line));
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      throw ConfigError(where(line) + "row length differs from the first row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("matrix file is empty");
  Matrix A(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) A(i, j) = rows[i][j];
  return A;
}

}  // namespace hambvp
