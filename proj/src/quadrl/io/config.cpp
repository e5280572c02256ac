#include "quadrl/io/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "quadrl/error.hpp"

namespace quadrl {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    cfg.data_[section][key] = Entry{value, false};
  }
  return cfg;
}

void Config::set(const std::string& section, const std::string& key,
                 const std::string& value) {
  data_[section][key] = Entry{value, false};
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = data_.find(section);
  return s != data_.end() && s->second.count(key) > 0;
}

std::string Config::raw(const std::string& section, const std::string& key, bool& found) {
  auto s = data_.find(section);
  if (s != data_.end()) {
    auto k = s->second.find(key);
    if (k != s->second.end()) {
      k->second.consumed = true;
      found = true;
      return k->second.value;
    }
  }
  found = false;
  return "";
}

void Config::note(const std::string& section, const std::string& key,
                  const std::string& used) {
  used_[section][key] = used;
}

double Config::get_double(const std::string& section, const std::string& key, double def) {
  bool found = false;
  const std::string v = raw(section, key, found);
  double out = def;
  if (found) {
    try {
      size_t pos = 0;
      out = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      throw ConfigError("config key " + section + "." + key + ": '" + v + "' is not a number");
    }
  }
  note(section, key, fmt_double(out));
  return out;
}

long Config::get_long(const std::string& section, const std::string& key, long def) {
  bool found = false;
  const std::string v = raw(section, key, found);
  long out = def;
  if (found) {
    try {
      size_t pos = 0;
      out = std::stol(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      throw ConfigError("config key " + section + "." + key + ": '" + v + "' is not an integer");
    }
  }
  note(section, key, std::to_string(out));
  return out;
}

bool Config::get_bool(const std::string& section, const std::string& key, bool def) {
  bool found = false;
  const std::string v = raw(section, key, found);
  bool out = def;
  if (found) {
    if (v == "true" || v == "1" || v == "yes") out = true;
    else if (v == "false" || v == "0" || v == "no") out = false;
    else
      throw ConfigError("config key " + section + "." + key + ": '" + v + "' is not a boolean");
  }
  note(section, key, out ? "true" : "false");
  return out;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& def) {
  bool found = false;
  const std::string v = raw(section, key, found);
  const std::string out = found ? v : def;
  note(section, key, out);
  return out;
}

Vec3 Config::get_vec3(const std::string& section, const std::string& key, const Vec3& def) {
  bool found = false;
  const std::string v = raw(section, key, found);
  Vec3 out = def;
  if (found) {
    std::istringstream in(v);
    if (!(in >> out.x >> out.y >> out.z))
      throw ConfigError("config key " + section + "." + key + ": expected three numbers");
  }
  note(section, key, fmt_double(out.x) + " " + fmt_double(out.y) + " " + fmt_double(out.z));
  return out;
}

std::vector<std::string> Config::unconsumed() const {
  std::vector<std::string> out;
  for (const auto& [sec, keys] : data_)
    for (const auto& [key, entry] : keys)
      if (!entry.consumed) out.push_back(sec + "." + key);
  return out;
}

void Config::finish() const {
  const auto bad = unconsumed();
  if (bad.empty()) return;
  std::string msg = "unknown config key(s):";
  for (const auto& k : bad) msg += " " + k;
  throw ConfigError(msg);
}

std::string Config::echo() const {
  std::string out;
  for (const auto& [sec, keys] : used_) {
    out += "[" + sec + "]\n";
    for (const auto& [key, val] : keys) out += key + " = " + val + "\n";
    out += "\n";
  }
  return out;
}

}  // namespace quadrl
