#include "graphwise/record.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "graphwise/errors.hpp"

namespace graphwise {

std::string format_double(double value, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
  return buf;
}

void Record::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : items_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  items_.emplace_back(key, value);
}

void Record::set(const std::string& key, const char* value) { set(key, std::string(value)); }
void Record::set(const std::string& key, double value) { set(key, format_double(value)); }
void Record::set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }
void Record::set(const std::string& key, std::int64_t value) { set(key, std::to_string(value)); }
void Record::set(const std::string& key, std::uint64_t value) { set(key, std::to_string(value)); }
void Record::set(const std::string& key, int value) { set(key, std::to_string(value)); }

bool Record::has(const std::string& key) const { return find(key) != nullptr; }

const std::string* Record::find(const std::string& key) const {
  for (const auto& [k, v] : items_) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string Record::get_string(const std::string& key) const {
  const auto* v = find(key);
  if (!v) throw ConfigError("missing config key '" + key + "'");
  return *v;
}

double Record::get_double(const std::string& key) const {
  try {
    return std::stod(get_string(key));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' is not a number");
  }
}

std::int64_t Record::get_int(const std::string& key) const {
  try {
    return std::stoll(get_string(key));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' is not an integer");
  }
}

bool Record::get_bool(const std::string& key) const {
  auto v = get_string(key);
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw ConfigError("config key '" + key + "' is not a boolean");
}

std::string Record::get_string_or(const std::string& key, const std::string& fallback) const {
  const auto* v = find(key);
  return v ? *v : fallback;
}

double Record::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::int64_t Record::get_int_or(const std::string& key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Record::get_bool_or(const std::string& key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}

std::string Record::to_text() const {
  std::ostringstream out;
  for (const auto& [k, v] : items_) out << k << " = " << v << "\n";
  return out.str();
}

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  auto end = s.find_last_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Record Record::parse(std::istream& in) {
  Record out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    out.set(key, value);
  }
  return out;
}

Record Record::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse(in);
}

}  // namespace graphwise
