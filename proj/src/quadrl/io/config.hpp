#pragma once

#include <map>
#include <string>
#include <vector>

#include "quadrl/math/vec3.hpp"

namespace quadrl {

// Sectioned key-value configuration. Typed getters record the value that was
// actually used (default or override) so the effective configuration can be
// echoed verbatim into run directories. Keys present in the file but never
// consumed by any loader are reported as errors.
class Config {
 public:
  Config() = default;

  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  void set(const std::string& section, const std::string& key, const std::string& value);
  bool has(const std::string& section, const std::string& key) const;

  // Getters with defaults; every call registers the effective value.
  double get_double(const std::string& section, const std::string& key, double def);
  long get_long(const std::string& section, const std::string& key, long def);
  bool get_bool(const std::string& section, const std::string& key, bool def);
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& def);
  Vec3 get_vec3(const std::string& section, const std::string& key, const Vec3& def);

  // Keys that were set but never consumed ("section.key" form).
  std::vector<std::string> unconsumed() const;
  // Throws ConfigError naming the offending keys when any are unconsumed.
  void finish() const;

  // Effective configuration (every consumed key with the value used).
  std::string echo() const;

 private:
  struct Entry {
    std::string value;
    bool consumed = false;
  };
  std::string raw(const std::string& section, const std::string& key, bool& found);
  void note(const std::string& section, const std::string& key, const std::string& used);

  std::map<std::string, std::map<std::string, Entry>> data_;
  std::map<std::string, std::map<std::string, std::string>> used_;
};

}  // namespace quadrl
