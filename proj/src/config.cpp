#include "forge/pipeline/config.hpp"

#include <fstream>
#include <sstream>

#include "forge/common/error.hpp"
#include "forge/common/text.hpp"

namespace forge::pipeline {

Config Config::parse(std::string_view content) {
  Config cfg;
  std::string section;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t nl = content.find('\n', start);
    if (nl == std::string_view::npos) nl = content.size();
    std::string line = text::trim(content.substr(start, nl - start));
    const bool last = nl == content.size();
    start = nl + 1;
    if (line.empty() || line[0] == '#') {
      if (last) break;
      continue;
    }
    if (line.front() == '[' && line.back() == ']') {
      section = text::trim(line.substr(1, line.size() - 2));
      if (last) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config", "expected key = value: " + line);
    std::string key = text::trim(line.substr(0, eq));
    std::string value = text::trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (key.empty()) throw Error("config", "empty key: " + line);
    if (!section.empty()) key = section + "." + key;
    cfg.values_[key] = value;
    if (last) break;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config", "cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

long Config::get_int(const std::string& key, long fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stol(it->second);
  } catch (...) {
    throw Error("config", "not an integer: " + key + " = " + it->second);
  }
}

double Config::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (...) {
    throw Error("config", "not a number: " + key + " = " + it->second);
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
  if (it->second == "false" || it->second == "0" || it->second == "no") return false;
  throw Error("config", "not a boolean: " + key + " = " + it->second);
}

std::vector<std::string> Config::get_list(const std::string& key) const {
  std::vector<std::string> out;
  auto it = values_.find(key);
  if (it == values_.end()) return out;
  std::size_t start = 0;
  const std::string& v = it->second;
  while (start <= v.size()) {
    auto comma = v.find(',', start);
    if (comma == std::string::npos) comma = v.size();
    std::string item = text::trim(v.substr(start, comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == v.size()) break;
    start = comma + 1;
  }
  return out;
}

void Config::set(const std::string& key, std::string value) { values_[key] = std::move(value); }

}  // namespace forge::pipeline
