#pragma once

// A small column table written either as CSV (with `#` comment lines) or
// as JSON ({"notes": [...], "rows": [{column: value}]}).

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace acsq::cli {

using Cell = std::variant<double, long, bool, std::string>;

struct Table {
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
  void write(std::ostream& os, Format format) const;
};

}  // namespace acsq::cli
