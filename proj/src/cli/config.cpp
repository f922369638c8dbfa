#include "randskew/cli/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "randskew/errors.hpp"

namespace randskew::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw InvalidArgument("config key '" + key + "': '" + text + "' is not a finite number");
  }
  return v;
}

std::size_t to_count(const std::string& key, const std::string& text) {
  std::size_t v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw InvalidArgument("config key '" + key + "': '" + text + "' is not a nonnegative integer");
  }
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const std::string t = trim(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw InvalidArgument(what + " '" + text + "' is not a decimal u64");
  }
  return v;
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = value; }

std::string Config::str(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  defaults_used_[key] = fallback;
  return fallback;
}

double Config::real(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it != values_.end()) return to_real(key, it->second);
  std::ostringstream os;
  os.precision(17);
  os << fallback;
  defaults_used_[key] = os.str();
  return fallback;
}

std::size_t Config::count(const std::string& key, std::size_t fallback) const {
  auto it = values_.find(key);
  if (it != values_.end()) return to_count(key, it->second);
  defaults_used_[key] = std::to_string(fallback);
  return fallback;
}

std::optional<std::size_t> Config::opt_count(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return std::nullopt;
  return to_count(key, it->second);
}

bool Config::flag(const std::string& key, bool fallback) const {
  const std::string v = str(key, fallback ? "on" : "off");
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw InvalidArgument("config key '" + key + "': '" + v + "' is not on/off");
}

std::vector<std::string> Config::list(const std::string& key, const std::string& fallback) const {
  return split_list(str(key, fallback));
}

std::vector<double> Config::real_list(const std::string& key, const std::string& fallback) const {
  std::vector<double> out;
  for (const auto& item : list(key, fallback)) out.push_back(to_real(key, item));
  return out;
}

std::vector<std::size_t> Config::count_list(const std::string& key, const std::string& fallback) const {
  std::vector<std::size_t> out;
  for (const auto& item : list(key, fallback)) out.push_back(to_count(key, item));
  return out;
}

std::map<std::string, std::string> Config::effective() const {
  std::map<std::string, std::string> out = defaults_used_;
  for (const auto& [k, v] : values_) out[k] = v;
  return out;
}

Config parse_config(const std::string& text, const std::string& origin) {
  Config cfg;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw IoError("ParseError", origin + ": " + e.what());
    }
    if (!doc.contains("config") || !doc["config"].is_object()) {
      throw IoError("ParseError", origin + ": JSON config needs a \"config\" object");
    }
    for (const auto& [k, v] : doc["config"].items()) {
      cfg.set(k, v.is_string() ? v.get<std::string>() : v.dump());
    }
    return cfg;
  }

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw IoError("ParseError", origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw IoError("ParseError", origin + ":" + std::to_string(lineno) + ": empty key");
    cfg.set(key, value);
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("IoError", "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::pair<std::string, std::string> parse_override(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0) throw InvalidArgument("override '" + arg + "' is not key=value");
  return {trim(arg.substr(0, eq)), trim(arg.substr(eq + 1))};
}

}  // namespace randskew::cli
