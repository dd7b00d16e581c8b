#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "semibandit/harness.hpp"

namespace semibandit {

// Floats serialize with 17 significant digits so traces round-trip exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Write-then-rename so interrupted runs never leave truncated files.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Per-run traces: run,checkpoint,pseudo_regret,realized_regret.
inline void write_runs_csv(const std::filesystem::path& path,
                           const std::vector<RegretTrace>& traces) {
  std::string out = "run,checkpoint,pseudo_regret,realized_regret\n";
  for (std::size_t r = 0; r < traces.size(); ++r) {
    const RegretTrace& t = traces[r];
    for (std::size_t c = 0; c < t.checkpoints.size(); ++c) {
      out += std::to_string(r);
      out += ',';
      out += std::to_string(t.checkpoints[c]);
      out += ',';
      out += format_double(t.cumulative_pseudo[c]);
      out += ',';
      out += format_double(t.cumulative_realized[c]);
      out += '\n';
    }
  }
  write_file_atomic(path, out);
}

// Aggregate curve with the bound envelope: checkpoint,mean,std,bound,ratio.
inline void write_aggregate_csv(const std::filesystem::path& path,
                                const AggregateResult& agg,
                                const BoundComparison& cmp) {
  if (cmp.bound.size() != agg.checkpoints.size()) {
    throw std::invalid_argument("aggregate csv: comparison length mismatch");
  }
  std::string out = "checkpoint,mean,std,bound,ratio\n";
  for (std::size_t c = 0; c < agg.checkpoints.size(); ++c) {
    out += std::to_string(agg.checkpoints[c]);
    out += ',';
    out += format_double(agg.mean[c]);
    out += ',';
    out += format_double(agg.stddev[c]);
    out += ',';
    out += format_double(cmp.bound[c]);
    out += ',';
    out += format_double(cmp.ratio[c]);
    out += '\n';
  }
  write_file_atomic(path, out);
}

}  // namespace semibandit
