#include "robustest_cli/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace robustest::cli {
namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty() || s == "NA") return std::nullopt;
  const char* first = s.data();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::size_t index_of(const std::vector<std::string>& header, const std::string& name,
                     const std::string& path) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw CsvError("column '" + name + "' not found in " + path);
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

RowFilter parse_filter(const std::string& text) {
  const auto pos = text.find("==");
  if (pos == std::string::npos || pos == 0) {
    throw CsvError("filter must look like column==value, got '" + text + "'");
  }
  const auto value = parse_number(trim(text.substr(pos + 2)));
  if (!value) throw CsvError("filter value in '" + text + "' is not a number");
  return RowFilter{trim(text.substr(0, pos)), *value};
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  const auto it = numeric.find(name);
  if (it == numeric.end()) throw CsvError("column '" + name + "' was not loaded");
  return it->second;
}

const std::vector<std::string>& CsvTable::label_column(const std::string& name) const {
  const auto it = labels.find(name);
  if (it == labels.end()) throw CsvError("column '" + name + "' was not loaded");
  return it->second;
}

CsvTable load_csv(const std::string& path, const std::vector<std::string>& columns,
                  const std::optional<RowFilter>& filter,
                  const std::vector<std::string>& label_columns) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw CsvError("'" + path + "' is empty");

  CsvTable table;
  table.header = split_line(line);
  std::set<std::string> seen;
  for (const auto& h : table.header) {
    if (!seen.insert(h).second) throw CsvError("duplicate column name '" + h + "' in " + path);
  }
  std::vector<std::size_t> num_idx, lab_idx;
  for (const auto& c : columns) {
    num_idx.push_back(index_of(table.header, c, path));
    table.numeric[c];
  }
  for (const auto& c : label_columns) {
    lab_idx.push_back(index_of(table.header, c, path));
    table.labels[c];
  }
  std::optional<std::size_t> filter_idx;
  if (filter) filter_idx = index_of(table.header, filter->column, path);

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != table.header.size()) {
      throw CsvError(path + ":" + std::to_string(line_no) + ": expected " +
                     std::to_string(table.header.size()) + " fields, got " +
                     std::to_string(cells.size()));
    }
    if (filter_idx) {
      const auto v = parse_number(cells[*filter_idx]);
      if (!v || *v != filter->value) continue;
    }
    std::vector<double> values;
    bool ok = true;
    for (std::size_t i : num_idx) {
      const auto v = parse_number(cells[i]);
      if (!v) {
        ok = false;
        break;
      }
      values.push_back(*v);
    }
    for (std::size_t i : lab_idx) {
      if (cells[i].empty() || cells[i] == "NA") ok = false;
    }
    table.missing.push_back(!ok);
    if (!ok) {
      ++table.dropped;
      continue;
    }
    for (std::size_t k = 0; k < columns.size(); ++k) table.numeric[columns[k]].push_back(values[k]);
    for (std::size_t k = 0; k < label_columns.size(); ++k) {
      table.labels[label_columns[k]].push_back(cells[lab_idx[k]]);
    }
    ++table.rows;
  }
  if (table.rows == 0) {
    throw CsvError("no usable rows in '" + path + "'" + (filter ? " after filtering" : ""));
  }
  return table;
}

}  // namespace robustest::cli
