#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace randskew::cli {

/// Shortest form for integers, 17 significant digits for reals.
std::string format_real(double v);

using Cell = std::variant<std::string, double, std::uint64_t>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Emitted as `# ...` lines after the CSV body, or a "summary" array in JSON.
  std::vector<std::string> summary;
};

std::string to_csv(const Table& table);
/// {"columns": [...], "rows": [{...}], "summary": [...]} with stable key order.
std::string to_json(const Table& table);

/// Writes `content` to `path` ("-" or empty = stdout) with LF endings.
void write_text(const std::string& path, const std::string& content);

std::string sidecar_path(const std::string& out);

}  // namespace randskew::cli
