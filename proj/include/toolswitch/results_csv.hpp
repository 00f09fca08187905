#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "toolswitch/error.hpp"

namespace toolswitch {

inline constexpr std::string_view results_csv_header =
    "dataset,n,m,C,evaluator,instances,sequences,total_seconds,mean_microseconds_per_eval";

/// One (family, evaluator) cell of a benchmark run. `sequences` counts the
/// random orders per instance.
struct BenchRow {
  std::string dataset;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t capacity = 0;
  std::string evaluator;
  std::size_t instances = 0;
  std::size_t sequences = 0;
  double total_seconds = 0.0;
  double mean_microseconds_per_eval = 0.0;
};

inline std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

inline void write_results_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << results_csv_header << '\n';
  for (const auto& r : rows)
    out << r.dataset << ',' << r.n << ',' << r.m << ',' << r.capacity << ',' << r.evaluator << ',' << r.instances
        << ',' << r.sequences << ',' << format_fixed(r.total_seconds, 6) << ','
        << format_fixed(r.mean_microseconds_per_eval, 4) << '\n';
  if (!out) throw Error(ErrorCode::Io, "failed writing results CSV");
}

inline void write_results_csv(const std::string& path, std::span<const BenchRow> rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  write_results_csv(out, rows);
}

inline std::vector<BenchRow> read_results_csv(std::istream& in) {
  std::string line;
  std::size_t number = 1;
  if (!std::getline(in, line) || line != results_csv_header)
    throw Error(ErrorCode::ParseError, "line 1: unexpected results header", 1);
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 9)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": expected 9 fields", number);
    try {
      rows.push_back({f[0], std::stoul(f[1]), std::stoul(f[2]), std::stoul(f[3]), f[4], std::stoul(f[5]),
                      std::stoul(f[6]), std::stod(f[7]), std::stod(f[8])});
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": bad numeric field", number);
    }
  }
  return rows;
}

}  // namespace toolswitch
