#include "randskew/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "randskew/errors.hpp"

namespace randskew::cli {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  return std::to_string(std::get<std::uint64_t>(c));
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) {
    // JSON has no NaN/Inf; keep them as the CSV spelling.
    if (!std::isfinite(*d)) return format_real(*d);
    return *d;
  }
  return std::get<std::uint64_t>(c);
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t k = 0; k < table.columns.size(); ++k) out += (k ? "," : "") + table.columns[k];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + cell_text(row[k]);
    out += '\n';
  }
  for (const auto& s : table.summary) out += "# " + s + '\n';
  return out;
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json doc;
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r;
    for (std::size_t k = 0; k < row.size(); ++k) r[table.columns[k]] = cell_json(row[k]);
    doc["rows"].push_back(std::move(r));
  }
  doc["summary"] = table.summary;
  return doc.dump(2) + '\n';
}

void write_text(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("IoError", "cannot write '" + path + "'");
  out << content;
  if (!out) throw IoError("IoError", "write to '" + path + "' failed");
}

std::string sidecar_path(const std::string& out) { return out + ".meta.json"; }

}  // namespace randskew::cli
