#pragma once

// Text formats (UTF-8, LF, 1-based indices):
//
//   native  "n m C", then one line per job: "|T_j| t_1 ... t_k"
//   matrix  "n m C", then m lines of n 0/1 entries; row i column j is 1 when
//           job j needs tool i
//
// Blank lines and text after "#" are ignored. Serialization lists tools in
// ascending order.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "toolswitch/instance.hpp"

namespace toolswitch {

enum class InstanceFormat { Native, Matrix };

inline std::optional<InstanceFormat> parse_format(std::string_view name) {
  if (name == "native") return InstanceFormat::Native;
  if (name == "matrix") return InstanceFormat::Matrix;
  return std::nullopt;
}

namespace detail {

struct NumberedLine {
  std::size_t number;  // 1-based
  std::vector<std::uint64_t> values;
};

inline std::vector<NumberedLine> tokenize(std::string_view text) {
  std::vector<NumberedLine> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    ++number;
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream in{std::string(line)};
    NumberedLine parsed{number, {}};
    std::string token;
    while (in >> token) {
      std::uint64_t value = 0;
      for (char c : token) {
        if (c < '0' || c > '9' || value > (UINT64_MAX - 9) / 10)
          throw Error(ErrorCode::ParseError, "line " + std::to_string(number) + ": bad token '" + token + "'",
                      number);
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
      }
      parsed.values.push_back(value);
    }
    if (!parsed.values.empty()) lines.push_back(std::move(parsed));
    if (eol == text.size()) break;
  }
  return lines;
}

inline bool looks_native(const std::vector<NumberedLine>& body, std::size_t n) {
  if (body.size() != n) return false;
  for (const auto& l : body)
    if (l.values.size() != l.values[0] + 1) return false;
  return true;
}

inline bool looks_matrix(const std::vector<NumberedLine>& body, std::size_t n, std::size_t m) {
  if (body.size() != m) return false;
  for (const auto& l : body) {
    if (l.values.size() != n) return false;
    for (auto v : l.values)
      if (v > 1) return false;
  }
  return true;
}

}  // namespace detail

/// Parses either format (auto-detected unless `format` is given) and
/// validates the result. Throws ParseError with the offending line.
inline Instance parse_instance(std::string_view text, std::optional<InstanceFormat> format = std::nullopt) {
  auto lines = detail::tokenize(text);
  if (lines.empty() || lines[0].values.size() != 3)
    throw Error(ErrorCode::ParseError, "line 1: expected header 'n m C'", lines.empty() ? 1 : lines[0].number);
  const auto& header = lines[0];
  const std::size_t n = header.values[0];
  const std::size_t m = header.values[1];
  InstanceData data;
  data.tools = m;
  data.capacity = header.values[2];
  if (n == 0 || m == 0 || m > (std::size_t{1} << 24) || n > (std::size_t{1} << 24))
    throw Error(ErrorCode::ParseError, "line " + std::to_string(header.number) + ": n and m must be in 1..2^24",
                header.number);
  std::vector<detail::NumberedLine> body(lines.begin() + 1, lines.end());

  if (!format) {
    if (detail::looks_native(body, n))
      format = InstanceFormat::Native;
    else if (detail::looks_matrix(body, n, m))
      format = InstanceFormat::Matrix;
  }
  const std::size_t expected = format == InstanceFormat::Matrix ? m : n;
  if (body.size() != expected) {
    const std::size_t line = body.size() > expected ? body[expected].number
                                                    : (body.empty() ? header.number : body.back().number) + 1;
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ": expected " + std::to_string(expected) + " data lines, found " +
                    std::to_string(body.size()),
                line);
  }

  if (format == InstanceFormat::Matrix) {
    data.jobs.assign(n, {});
    for (std::size_t i = 0; i < m; ++i) {
      const auto& l = body[i];
      if (l.values.size() != n)
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(l.number) + ": expected " + std::to_string(n) + " entries", l.number);
      for (std::size_t j = 0; j < n; ++j) {
        if (l.values[j] > 1)
          throw Error(ErrorCode::ParseError, "line " + std::to_string(l.number) + ": entries must be 0 or 1",
                      l.number);
        if (l.values[j]) data.jobs[j].push_back(static_cast<ToolIndex>(i));
      }
    }
  } else {
    for (const auto& l : body) {
      if (l.values.size() != l.values[0] + 1)
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(l.number) + ": job lists " + std::to_string(l.values.size() - 1) +
                        " tools but declares " + std::to_string(l.values[0]),
                    l.number);
      std::vector<ToolIndex> job;
      for (std::size_t k = 1; k < l.values.size(); ++k) {
        if (l.values[k] == 0 || l.values[k] > m)
          throw Error(ErrorCode::ParseError,
                      "line " + std::to_string(l.number) + ": tool " + std::to_string(l.values[k]) +
                          " outside 1.." + std::to_string(m),
                      l.number);
        job.push_back(static_cast<ToolIndex>(l.values[k] - 1));
      }
      data.jobs.push_back(std::move(job));
    }
  }
  return validate_instance(std::move(data));
}

inline std::string serialize_instance(const Instance& inst, InstanceFormat format = InstanceFormat::Native) {
  const std::size_t n = inst.job_count();
  const std::size_t m = inst.tool_count();
  std::string out = std::to_string(n) + ' ' + std::to_string(m) + ' ' + std::to_string(inst.capacity()) + '\n';
  if (format == InstanceFormat::Native) {
    for (JobIndex j = 0; j < n; ++j) {
      out += std::to_string(inst.job_size(j));
      for (ToolIndex t : inst.tools(j)) out += ' ' + std::to_string(t + 1);
      out += '\n';
    }
  } else {
    for (ToolIndex t = 0; t < m; ++t) {
      for (JobIndex j = 0; j < n; ++j) {
        if (j) out += ' ';
        out += inst.required(j).contains(t) ? '1' : '0';
      }
      out += '\n';
    }
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

inline Instance load_instance(const std::string& path, std::optional<InstanceFormat> format = std::nullopt) {
  return parse_instance(read_text_file(path), format);
}

}  // namespace toolswitch
