#include "kerrkit/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "kerrkit/error.hpp"

namespace kerrkit {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
    throw ConfigError("key '" + key + "': expected a number, got '" + t + "'");
  return v;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config cfg;
  std::string section;
  cfg.sections_[section];
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    if (!cfg.sections_[section].emplace(key, value).second)
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

Config::View Config::view(const std::string& command,
                          const std::set<std::string>& allowed) const {
  View v;
  for (const std::string& name : {std::string(), command}) {
    const auto it = sections_.find(name);
    if (it == sections_.end()) continue;
    for (const auto& [k, val] : it->second) {
      if (!allowed.count(k))
        throw ConfigError("unknown key '" + k + "' for command '" + command + "'");
      v.values_[k] = val;
    }
  }
  return v;
}

Config::View Config::view(const std::string& command, const Schema& schema) const {
  std::set<std::string> known;
  for (const auto& [name, keys] : schema) known.insert(keys.begin(), keys.end());
  for (const auto& [name, entries] : sections_) {
    if (name.empty()) {
      for (const auto& [k, val] : entries)
        if (!known.count(k)) throw ConfigError("unknown key '" + k + "'");
      continue;
    }
    const auto it = schema.find(name);
    if (it == schema.end()) throw ConfigError("unknown section [" + name + "]");
    for (const auto& [k, val] : entries)
      if (!it->second.count(k))
        throw ConfigError("unknown key '" + k + "' in section [" + name + "]");
  }
  const auto own = schema.find(command);
  if (own == schema.end()) throw ConfigError("no keys declared for command '" + command + "'");
  View v;
  for (const std::string& name : {std::string(), command}) {
    const auto it = sections_.find(name);
    if (it == sections_.end()) continue;
    for (const auto& [k, val] : it->second)
      if (own->second.count(k)) v.values_[k] = val;
  }
  return v;
}

std::string Config::View::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::View::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_double(key, it->second);
}

int Config::View::get_int(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  int v = 0;
  const std::string& t = it->second;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError("key '" + key + "': expected an integer, got '" + t + "'");
  return v;
}

std::uint64_t Config::View::get_uint64(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::uint64_t v = 0;
  const std::string& t = it->second;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError("key '" + key + "': expected an unsigned integer, got '" + t + "'");
  return v;
}

bool Config::View::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& t = it->second;
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + t + "'");
}

std::vector<double> Config::View::get_list(const std::string& key,
                                           const std::vector<double>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  std::string item;
  std::istringstream in(it->second);
  while (std::getline(in, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

}  // namespace kerrkit
