#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "robustest/errors.hpp"

namespace robustest::cli {

/// Unreadable file, unknown column, or nothing left after filtering.
class CsvError : public Error {
 public:
  using Error::Error;
};

/// Equality predicate "column==value" on a numeric column.
struct RowFilter {
  std::string column;
  double value = 0.0;
};

/// Parses "col==value". Throws CsvError on malformed input.
RowFilter parse_filter(const std::string& text);

/// Selected columns of a CSV file. Rows with a missing or non-numeric entry
/// in any selected column were dropped before the table was built.
struct CsvTable {
  std::vector<std::string> header;
  std::map<std::string, std::vector<double>> numeric;
  std::map<std::string, std::vector<std::string>> labels;
  std::size_t rows = 0;
  /// Per input row (after filtering): true when the row was dropped.
  std::vector<bool> missing;
  std::size_t dropped = 0;

  const std::vector<double>& column(const std::string& name) const;
  const std::vector<std::string>& label_column(const std::string& name) const;
};

/// Comma-separated, first line a header, '.' decimal point. Empty cells,
/// "NA" and anything that does not parse as a finite number count as
/// missing. `label_columns` are kept as strings.
CsvTable load_csv(const std::string& path, const std::vector<std::string>& columns,
                  const std::optional<RowFilter>& filter = std::nullopt,
                  const std::vector<std::string>& label_columns = {});

}  // namespace robustest::cli
