#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pum/errors.hpp"
#include "pum/point.hpp"

namespace pum {

/// Shortest round-trippable decimal form, stable across runs.
inline std::string csv_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

struct PointSet {
  std::vector<Point2> points;
  std::optional<std::vector<double>> values;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
  }
  return fields;
}

inline double parse_real(const std::string& text, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const double value = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw InputError("csv line " + std::to_string(line_no) + ": cannot parse \"" + text + "\" as a real");
  }
}

}  // namespace detail

/// Reads a point set with header "x,y" or "x,y,value" (case-insensitive).
inline PointSet read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open point file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw InputError("empty point file: " + path);
  auto header = detail::split_csv_line(line);
  for (auto& h : header)
    for (char& c : h) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const bool with_values = header.size() == 3 && header[2] == "value";
  if (!((header.size() == 2 || with_values) && header[0] == "x" && header[1] == "y"))
    throw InputError(path + ": expected header \"x,y\" or \"x,y,value\"");

  PointSet set;
  if (with_values) set.values.emplace();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != header.size())
      throw InputError(path + " line " + std::to_string(line_no) + ": wrong field count");
    set.points.push_back({detail::parse_real(fields[0], line_no), detail::parse_real(fields[1], line_no)});
    if (with_values) set.values->push_back(detail::parse_real(fields[2], line_no));
  }
  return set;
}

inline void write_points_csv(const std::string& path, const std::vector<Point2>& points,
                             const std::vector<double>* values = nullptr) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write point file: " + path);
  out << (values ? "x,y,value\n" : "x,y\n");
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << csv_number(points[i][0]) << ',' << csv_number(points[i][1]);
    if (values) out << ',' << csv_number((*values)[i]);
    out << '\n';
  }
}

}  // namespace pum
