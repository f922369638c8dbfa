#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace randskew::cli {

/// Flat `key = value` experiment configuration. Values stay strings until a
/// command asks for a typed view; every lookup is recorded so the sidecar
/// can echo the effective configuration.
class Config {
 public:
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string str(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key, double fallback) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  std::optional<std::size_t> opt_count(const std::string& key) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<std::string> list(const std::string& key, const std::string& fallback) const;
  std::vector<double> real_list(const std::string& key, const std::string& fallback) const;
  std::vector<std::size_t> count_list(const std::string& key, const std::string& fallback) const;

  /// Explicit values plus every defaulted key that was read, sorted by key.
  std::map<std::string, std::string> effective() const;
  const std::map<std::string, std::string>& explicit_values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> defaults_used_;
};

/// Parses `key = value` lines (`#` starts a comment). Text whose first
/// non-blank character is `{` is read as a run sidecar and its "config"
/// object is used instead. Throws IoError(ParseError) / InvalidArgument.
Config parse_config(const std::string& text, const std::string& origin);
Config load_config(const std::string& path);

/// Parses `key=value`; throws InvalidArgument otherwise.
std::pair<std::string, std::string> parse_override(const std::string& arg);

std::uint64_t parse_u64(const std::string& text, const std::string& what);

}  // namespace randskew::cli
