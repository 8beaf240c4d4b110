#include "ruck/trace.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ruck/errors.hpp"

namespace ruck {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

double parse_real(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": not a real number: \"" + std::string(field) + "\"");
  }
  return value;
}

long parse_int(std::string_view field, std::size_t line_no) {
  long value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": not an integer: \"" + std::string(field) + "\"");
  }
  return value;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::size_t Trace::column_index(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw LookupError("unknown trace column: \"" + std::string(name) + "\"");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

bool Trace::has_column(std::string_view name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::vector<double> Trace::column(std::string_view name) const {
  const std::size_t col = column_index(name);
  std::vector<double> out;
  out.reserve(total_draws());
  for (std::size_t c = 0; c < chain_count; ++c) {
    for (std::size_t d = 0; d < draws_per_chain; ++d) {
      out.push_back(value(c, d, col));
    }
  }
  return out;
}

std::vector<std::vector<double>> Trace::column_by_chain(
    std::string_view name) const {
  const std::size_t col = column_index(name);
  std::vector<std::vector<double>> out(chain_count);
  for (std::size_t c = 0; c < chain_count; ++c) {
    out[c].reserve(draws_per_chain);
    for (std::size_t d = 0; d < draws_per_chain; ++d) {
      out[c].push_back(value(c, d, col));
    }
  }
  return out;
}

std::vector<std::string> Trace::team_names() const {
  std::vector<std::string> teams;
  for (const auto& col : columns) {
    if (col.starts_with("att_") && !col.starts_with("att_raw_")) {
      teams.push_back(col.substr(4));
    }
  }
  return teams;
}

std::size_t Trace::divergence_count() const {
  std::size_t n = 0;
  for (auto flag : divergent) n += flag;
  return n;
}

std::string trace_to_csv(const Trace& trace) {
  std::ostringstream out;
  out << "chain,draw";
  for (const auto& col : trace.columns) out << ',' << col;
  out << ",divergent,tree_depth\n";
  const std::size_t ncols = trace.columns.size();
  for (std::size_t c = 0; c < trace.chain_count; ++c) {
    for (std::size_t d = 0; d < trace.draws_per_chain; ++d) {
      out << c << ',' << d;
      const std::size_t row = c * trace.draws_per_chain + d;
      for (std::size_t k = 0; k < ncols; ++k) {
        out << ',' << format_real(trace.values[row * ncols + k]);
      }
      out << ',' << (trace.divergent[row] ? 1 : 0) << ','
          << trace.tree_depth[row] << '\n';
    }
  }
  return out.str();
}

Trace parse_trace_csv(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.empty() && strip_cr(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty trace file");

  const auto header = split(strip_cr(lines[0]), ',');
  if (header.size() < 5 || header[0] != "chain" || header[1] != "draw" ||
      header[header.size() - 2] != "divergent" ||
      header.back() != "tree_depth") {
    throw ParseError(
        "malformed trace header; expected "
        "\"chain,draw,<columns...>,lp,divergent,tree_depth\"");
  }
  Trace trace;
  for (std::size_t i = 2; i + 2 < header.size(); ++i) {
    trace.columns.emplace_back(header[i]);
  }
  if (trace.columns.empty() || trace.columns.back() != "lp") {
    throw ParseError("malformed trace header; last value column must be lp");
  }

  const std::size_t ncols = trace.columns.size();
  std::vector<long> chain_draws;  // draws seen per chain
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = split(strip_cr(lines[i]), ',');
    if (fields.size() != ncols + 4) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(ncols + 4) + " fields, got " +
                       std::to_string(fields.size()));
    }
    const long chain = parse_int(fields[0], line_no);
    const long draw = parse_int(fields[1], line_no);
    if (chain == static_cast<long>(chain_draws.size()) && draw == 0) {
      chain_draws.push_back(0);  // start of the next chain
    }
    if (chain + 1 != static_cast<long>(chain_draws.size()) ||
        draw != chain_draws.back()) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": rows out of order (chain " + std::to_string(chain) +
                       ", draw " + std::to_string(draw) + ")");
    }
    ++chain_draws.back();
    for (std::size_t k = 0; k < ncols; ++k) {
      trace.values.push_back(parse_real(fields[2 + k], line_no));
    }
    const long div = parse_int(fields[2 + ncols], line_no);
    if (div != 0 && div != 1) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": divergent flag must be 0 or 1");
    }
    trace.divergent.push_back(static_cast<std::uint8_t>(div));
    const long depth = parse_int(fields[3 + ncols], line_no);
    if (depth < 0) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": negative tree depth");
    }
    trace.tree_depth.push_back(static_cast<int>(depth));
  }
  if (chain_draws.empty()) throw ParseError("trace has no draws");
  for (long n : chain_draws) {
    if (n != chain_draws.front()) {
      throw ParseError("chains have unequal draw counts");
    }
  }
  trace.chain_count = chain_draws.size();
  trace.draws_per_chain = static_cast<std::size_t>(chain_draws.front());
  return trace;
}

void write_trace_csv(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot open for writing: " + path.string());
  }
  out << trace_to_csv(trace);
  if (!out) throw ValidationError("failed writing: " + path.string());
}

Trace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace_csv(buf.str());
}

}  // namespace ruck
