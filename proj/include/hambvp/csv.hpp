#pragma once

#include <map>
#include <string>
#include <vector>

#include "hambvp/classifier.hpp"

namespace hambvp {

// Header mu1[,mu2],u1..uk,residual_norm,branch_id,label. Samples sorted by grid index
// then branch id; each label becomes a row at its nearest grid point with branch_id -1.
std::string format_csv(const CatastropheSet& set, const std::vector<SingularityLabel>& labels = {});

// Writes the CSV and, when metadata is non-empty, `path.meta` with `key = value` lines.
void emit_csv(const CatastropheSet& set, const std::vector<SingularityLabel>& labels,
              const std::string& path, const std::map<std::string, std::string>& metadata = {});

std::string format_metadata(const std::map<std::string, std::string>& metadata);

struct CsvRow {
  std::vector<double> mu;
  std::vector<double> u;
  double residual_norm = 0.0;
  int branch_id = -1;
  std::string label;
};

// Reader for files produced by format_csv.
std::vector<CsvRow> parse_csv(const std::string& text);

}  // namespace hambvp
