#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace graphwise {

// Fixed-width decimal formatting used everywhere output must be reproducible
// byte for byte.
std::string format_double(double value, int significant_digits = 10);

// Ordered key-value record. Serializes to one "key = value" line per entry;
// '#' starts a comment when parsing. Used for test outcomes, estimator
// diagnostics and plain-text config files.
class Record {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const char* value);
  void set(const std::string& key, double value);
  void set(const std::string& key, bool value);
  void set(const std::string& key, std::int64_t value);
  void set(const std::string& key, std::uint64_t value);
  void set(const std::string& key, int value);

  bool has(const std::string& key) const;
  const std::string* find(const std::string& key) const;

  // typed getters; throw ConfigError on missing key or bad conversion
  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  std::string get_string_or(const std::string& key, const std::string& fallback) const;
  double get_double_or(const std::string& key, double fallback) const;
  std::int64_t get_int_or(const std::string& key, std::int64_t fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;

  const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

  std::string to_text() const;
  static Record parse(std::istream& in);
  static Record parse_file(const std::string& path);

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

}  // namespace graphwise
