#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace forge::pipeline {

// Minimal key-value configuration file:
//   # comment
//   stages = acquire,tokenize,split
//   [acquire]
//   min_words = 400
// Section headers prefix keys ("acquire.min_words"). Values keep their raw
// text; typed getters parse on access.
class Config {
 public:
  static Config parse(std::string_view content);
  static Config load(const std::string& path);

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback = {}) const;
  long get_int(const std::string& key, long fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;  // comma-separated

  void set(const std::string& key, std::string value);

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace forge::pipeline
