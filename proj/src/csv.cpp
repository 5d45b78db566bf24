#include "hambvp/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "hambvp/errors.hpp"

namespace hambvp {

namespace {

void put(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

std::size_t mu_dim(const CatastropheSet& set) {
  if (!set.grid.empty()) return set.grid.front().size();
  return set.grid_shape.size() == 2 ? 2 : 1;
}

std::size_t nearest_index(const CatastropheSet& set, const ParameterVector& mu) {
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < set.grid.size(); ++i) {
    const double d = (set.grid[i].values() - mu.values()).squaredNorm();
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

struct Row {
  std::size_t index;
  int branch;
  int order;
  std::string text;
};

}  // namespace

std::string format_csv(const CatastropheSet& set, const std::vector<SingularityLabel>& labels) {
  const std::size_t p = mu_dim(set);
  const int k = std::max(set.k, 1);
  std::string out;
  for (std::size_t i = 0; i < p; ++i) out += (i ? ",mu" : "mu") + std::to_string(i + 1);
  for (int j = 0; j < k; ++j) out += ",u" + std::to_string(j + 1);
  out += ",residual_norm,branch_id,label\n";

  std::vector<Row> rows;
  rows.reserve(set.samples.size() + labels.size());
  int order = 0;
  for (const auto& s : set.samples) {
    std::string line;
    for (Eigen::Index i = 0; i < s.mu.size(); ++i) {
      if (i) line += ',';
      put(line, s.mu[i]);
    }
    for (Eigen::Index j = 0; j < s.unknowns.size(); ++j) {
      line += ',';
      put(line, s.unknowns[j]);
    }
    line += ',';
    put(line, s.residual_norm);
    line += ',' + std::to_string(s.branch_id) + ",\n";
    rows.push_back({s.grid_index, s.branch_id, order++, std::move(line)});
  }
  for (const auto& l : labels) {
    std::string line;
    for (Eigen::Index i = 0; i < l.mu.size(); ++i) {
      if (i) line += ',';
      put(line, l.mu[i]);
    }
    line += ',';
    put(line, l.u);
    for (int j = 1; j < k; ++j) {
      line += ',';
      const auto it = l.diagnostics.find("u" + std::to_string(j + 1));
      put(line, it == l.diagnostics.end() ? 0.0 : it->second);
    }
    line += ',';
    const auto r = l.diagnostics.find("r");
    put(line, r == l.diagnostics.end() ? 0.0 : std::abs(r->second));
    line += ",-1," + to_string(l.kind) + "\n";
    rows.push_back({set.grid.empty() ? 0 : nearest_index(set, l.mu), -1, order++, std::move(line)});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.index != b.index) return a.index < b.index;
    if (a.branch != b.branch) return a.branch < b.branch;
    return a.order < b.order;
  });
  for (const auto& r : rows) out += r.text;
  return out;
}

std::string format_metadata(const std::map<std::string, std::string>& metadata) {
  std::string out;
  for (const auto& [k, v] : metadata) out += k + " = " + v + "\n";
  return out;
}

void emit_csv(const CatastropheSet& set, const std::vector<SingularityLabel>& labels,
              const std::string& path, const std::map<std::string, std::string>& metadata) {
  auto write = [](const std::string& file, const std::string& text) {
    std::ofstream f(file, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open '" + file + "' for writing");
    f << text;
    f.close();
    if (!f) throw Error("write to '" + file + "' failed");
  };
  write(path, format_csv(set, labels));
  if (!metadata.empty()) write(path + ".meta", format_metadata(metadata));
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) return {};
  std::size_t p = 0, k = 0;
  {
    std::istringstream hs(header);
    std::string col;
    while (std::getline(hs, col, ',')) {
      if (col.rfind("mu", 0) == 0) ++p;
      else if (col.size() > 1 && col[0] == 'u') ++k;
    }
  }
  std::vector<CsvRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      const auto c = line.find(',', start);
      f.push_back(line.substr(start, c == std::string::npos ? std::string::npos : c - start));
      if (c == std::string::npos) break;
      start = c + 1;
    }
    if (f.size() != p + k + 3) throw Error("malformed CSV row: " + line);
    CsvRow r;
    for (std::size_t i = 0; i < p; ++i) r.mu.push_back(std::strtod(f[i].c_str(), nullptr));
    for (std::size_t j = 0; j < k; ++j) r.u.push_back(std::strtod(f[p + j].c_str(), nullptr));
    r.residual_norm = std::strtod(f[p + k].c_str(), nullptr);
    r.branch_id = std::stoi(f[p + k + 1]);
    r.label = f[p + k + 2];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace hambvp
