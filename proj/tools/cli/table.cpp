#include "table.hpp"

#include <type_traits>

#include <json.hpp>

#include "acsq/error.hpp"
#include "acsq/text.hpp"

namespace acsq::cli {

namespace {

std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(double v) const { return text::format_double(v == 0.0 ? 0.0 : v); }  // no -0
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

nlohmann::json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) return nlohmann::json(v == 0.0 ? 0.0 : v);
        else return nlohmann::json(v);
      },
      c);
}

}  // namespace

void Table::write(std::ostream& os, Format format) const {
  for (const auto& row : rows)
    if (row.size() != columns.size())
      throw Error(ErrorKind::InvalidArgument, "table row width does not match its header");

  if (format == Format::Json) {
    nlohmann::json doc;
    doc["notes"] = notes;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = json_cell(row[i]);
      doc["rows"].push_back(std::move(obj));
    }
    os << doc.dump(2) << '\n';
    return;
  }

  for (const auto& n : notes) os << "# " << n << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

}  // namespace acsq::cli
