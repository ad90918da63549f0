#include "syndsl/trace_io.hpp"

#include <sstream>

namespace syndsl {

std::string trace_to_csv(const Trace& t, const std::string& port_prefix,
                         size_t columns) {
  std::ostringstream os;
  for (size_t c = 0; c < columns; ++c) {
    if (c) os << ",";
    os << port_prefix << c;
  }
  os << "\n";
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) os << ",";
      os << row[c].to_hex();
    }
    os << "\n";
  }
  return os.str();
}

static std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

Trace trace_from_csv(const std::string& text,
                     const std::vector<unsigned>& widths) {
  std::istringstream is(text);
  std::string line;
  Trace t;
  size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = split_line(line);
    if (!saw_header) {
      saw_header = true;
      if (cells.size() != widths.size())
        raise(Err::TraceShapeError,
              "header has " + std::to_string(cells.size()) +
                  " columns, design has " + std::to_string(widths.size()) +
                  " ports");
      continue;
    }
    if (cells.size() != widths.size())
      raise(Err::TraceShapeError,
            "row " + std::to_string(lineno) + " has " +
                std::to_string(cells.size()) + " values, want " +
                std::to_string(widths.size()));
    std::vector<BitVector> row;
    row.reserve(cells.size());
    for (size_t c = 0; c < cells.size(); ++c) {
      auto v = bv_parse_hex(cells[c], widths[c]);
      if (!v)
        raise(Err::TraceShapeError,
              "row " + std::to_string(lineno) + " column " +
                  std::to_string(c + 1) + ": '" + cells[c] +
                  "' is not a valid " + std::to_string(widths[c]) +
                  "-bit hex value");
      row.push_back(*v);
    }
    t.rows.push_back(std::move(row));
  }
  if (!saw_header)
    raise(Err::TraceShapeError, "trace file is missing its header row");
  return t;
}

}  // namespace syndsl
